#include "nearhol/jordan.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace nearhol {

namespace {

constexpr double kShapeTol = 1e-12;

cmat unit_matrix(int rows, int cols, int i, int j) {
    cmat m = cmat::Zero(rows, cols);
    m(i, j) = 1.0;
    return m;
}

void same_family(const JordanPoint& a, const JordanPoint& b) {
    if (a.side != b.side) throw DomainError("Jordan points on different sides");
    if (a.value.rows() != b.value.rows() || a.value.cols() != b.value.cols())
        throw DomainError("Jordan points with different shapes");
}

void opposite_sides(const JordanPoint& x, const JordanPoint& y) {
    if (x.side == y.side) throw DomainError("expected points on opposite sides");
    if (x.value.cols() != y.value.rows() || x.value.rows() != y.value.cols())
        throw DomainError("Jordan points with incompatible shapes");
}

cmat haar_unitary(int n, Rng& rng) {
    cmat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
    Eigen::HouseholderQR<cmat> qr(g);
    cmat q = qr.householderQ() * cmat::Identity(n, n);
    const cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        const double a = std::abs(r(i, i));
        if (a > 0.0) q.col(i) *= r(i, i) / a;
    }
    return q;
}

// Extends orthonormal columns to a unitary matrix.
cmat complete_unitary(const cmat& w, int n) {
    cmat u(n, n);
    int k = static_cast<int>(w.cols());
    u.leftCols(k) = w;
    for (int e = 0; e < n && k < n; ++e) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Unit(n, e);
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < k; ++j) v -= u.col(j).dot(v) * u.col(j);
        const double nv = v.norm();
        if (nv < 1e-6) continue;
        u.col(k++) = v / nv;
    }
    return u;
}

// Largest eigenpair of the Hermitian matrix m.
std::pair<double, Eigen::VectorXcd> top_eigen(const cmat& m) {
    Eigen::SelfAdjointEigenSolver<cmat> es(m);
    const Eigen::Index last = m.rows() - 1;
    return {es.eigenvalues()(last), es.eigenvectors().col(last)};
}

PolarDecomposition polar_type_i(const MatrixModel& model, const cmat& z) {
    Eigen::JacobiSVD<cmat> svd(z, Eigen::ComputeFullU | Eigen::ComputeFullV);
    PolarDecomposition out;
    out.k = {svd.matrixU(), svd.matrixV()};
    for (int i = 0; i < model.rank(); ++i) out.t.push_back(svd.singularValues()(i));
    return out;
}

PolarDecomposition polar_type_iii(const MatrixModel& model, cmat z) {
    const int n = static_cast<int>(z.rows());
    const double scale = std::max(1.0, z.norm());
    cmat cols(n, 0);
    PolarDecomposition out;
    for (int j = 0; j < n; ++j) {
        const auto [ev, u] = top_eigen(z * z.adjoint());
        const double s = std::sqrt(std::max(ev, 0.0));
        if (s <= 1e-14 * scale) break;
        const Eigen::VectorXcd v = z * u.conjugate() / s;
        Eigen::VectorXcd w = u + v;
        if (w.norm() < 1.0) w = cplx(0.0, 1.0) * (u - v);
        w.normalize();
        out.t.push_back(s);
        cols.conservativeResize(n, cols.cols() + 1);
        cols.col(cols.cols() - 1) = w;
        z -= s * w * w.transpose();
    }
    while (static_cast<int>(out.t.size()) < model.rank()) out.t.push_back(0.0);
    const cmat u = complete_unitary(cols, n);
    out.k = {u, u.conjugate()};
    return out;
}

PolarDecomposition polar_type_ii(const MatrixModel& model, cmat z) {
    const int n = static_cast<int>(z.rows());
    const double scale = std::max(1.0, z.norm());
    cmat cols(n, 0);
    PolarDecomposition out;
    for (int j = 0; j < model.rank(); ++j) {
        const auto [ev, w1] = top_eigen(z * z.adjoint());
        const double s = std::sqrt(std::max(ev, 0.0));
        if (s <= 1e-14 * scale) break;
        const Eigen::VectorXcd w2 = (-(z * w1.conjugate()) / s).normalized();
        out.t.push_back(s);
        cols.conservativeResize(n, cols.cols() + 2);
        cols.col(cols.cols() - 2) = w1;
        cols.col(cols.cols() - 1) = w2;
        z -= s * (w1 * w2.transpose() - w2 * w1.transpose());
    }
    while (static_cast<int>(out.t.size()) < model.rank()) out.t.push_back(0.0);
    const cmat u = complete_unitary(cols, n);
    out.k = {u, u.conjugate()};
    return out;
}

} // namespace

MatrixModel::MatrixModel(const HermitianType& type) : type_(type) {
    type_.validate();
    if (!type_.is_classical_matrix())
        throw UnsupportedError("no matrix model for " + type_.to_string() + " (types I, II, III only)");
    constants_ = type_.expected_constants();
    switch (type_.family) {
    case Family::TypeI:
        rows_ = type_.p;
        cols_ = type_.q;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) basis_plus_.push_back(unit_matrix(rows_, cols_, i, j));
        for (int i = 0; i < constants_.r; ++i) frame_.push_back({unit_matrix(rows_, cols_, i, i), Side::Plus});
        break;
    case Family::TypeII:
        rows_ = cols_ = type_.p;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < rows_; ++j)
                basis_plus_.push_back((unit_matrix(rows_, rows_, i, j) - unit_matrix(rows_, rows_, j, i)) / std::sqrt(2.0));
        for (int i = 0; i < constants_.r; ++i)
            frame_.push_back({unit_matrix(rows_, rows_, 2 * i, 2 * i + 1) - unit_matrix(rows_, rows_, 2 * i + 1, 2 * i),
                              Side::Plus});
        break;
    case Family::TypeIII:
        rows_ = cols_ = type_.p;
        for (int i = 0; i < rows_; ++i) {
            basis_plus_.push_back(unit_matrix(rows_, rows_, i, i));
            for (int j = i + 1; j < rows_; ++j)
                basis_plus_.push_back((unit_matrix(rows_, rows_, i, j) + unit_matrix(rows_, rows_, j, i)) / std::sqrt(2.0));
        }
        for (int i = 0; i < constants_.r; ++i) frame_.push_back({unit_matrix(rows_, rows_, i, i), Side::Plus});
        break;
    default: break;
    }
    for (const auto& b : basis_plus_) basis_minus_.push_back(b.adjoint());
    if (static_cast<int>(basis_plus_.size()) != constants_.n)
        throw IntegrityError("matrix model dimension disagrees with the structure constants");
}

cmat MatrixModel::symmetrize(const cmat& m) const {
    switch (type_.family) {
    case Family::TypeII: return 0.5 * (m - m.transpose());
    case Family::TypeIII: return 0.5 * (m + m.transpose());
    default: return m;
    }
}

void MatrixModel::check(const JordanPoint& x) const {
    if (x.value.rows() != rows(x.side) || x.value.cols() != cols(x.side))
        throw DomainError("matrix of shape " + std::to_string(x.value.rows()) + "x" + std::to_string(x.value.cols()) +
                          " does not fit " + type_.to_string());
    if ((symmetrize(x.value) - x.value).norm() > kShapeTol * std::max(1.0, x.value.norm()))
        throw DomainError(type_.family == Family::TypeII ? "matrix is not antisymmetric" : "matrix is not symmetric");
}

JordanPoint MatrixModel::point(Side side, const cmat& value) const {
    JordanPoint p{value, side};
    check(p);
    return p;
}

JordanPoint MatrixModel::zero(Side side) const { return {cmat::Zero(rows(side), cols(side)), side}; }

JordanPoint MatrixModel::conj(const JordanPoint& z) const { return {z.value.adjoint(), opposite(z.side)}; }

Eigen::VectorXcd MatrixModel::coords(const JordanPoint& z) const {
    const auto& b = basis(z.side);
    Eigen::VectorXcd c(static_cast<Eigen::Index>(b.size()));
    for (std::size_t k = 0; k < b.size(); ++k) c(static_cast<Eigen::Index>(k)) = (z.value.cwiseProduct(b[k].conjugate())).sum();
    return c;
}

JordanPoint MatrixModel::from_coords(Side side, const Eigen::VectorXcd& c) const {
    const auto& b = basis(side);
    if (c.size() != static_cast<Eigen::Index>(b.size())) throw DomainError("coordinate vector of the wrong length");
    cmat v = cmat::Zero(rows(side), cols(side));
    for (std::size_t k = 0; k < b.size(); ++k) v += c(static_cast<Eigen::Index>(k)) * b[k];
    return {v, side};
}

JordanPoint MatrixModel::epsilon(int i) const {
    JordanPoint e = zero(Side::Plus);
    for (int j = 0; j < i; ++j) e.value += frame(j).value;
    return e;
}

JordanPoint MatrixModel::diag(Side side, const std::vector<cplx>& t) const {
    if (static_cast<int>(t.size()) != rank()) throw DomainError("one parameter per frame element expected");
    // sum t_i ebar_i conjugates the frame, not the coefficients
    JordanPoint z = zero(side);
    for (int i = 0; i < rank(); ++i) {
        const cmat& e = frame(i).value;
        z.value += t[static_cast<std::size_t>(i)] * (side == Side::Plus ? e : cmat(e.adjoint()));
    }
    return z;
}

JordanPoint MatrixModel::diag(Side side, const std::vector<double>& t) const {
    return diag(side, std::vector<cplx>(t.begin(), t.end()));
}

JordanPoint MatrixModel::apply(const KElement& k, const JordanPoint& z) const {
    if (z.side == Side::Plus) return {k.A * z.value * k.D.adjoint(), Side::Plus};
    return {k.D * z.value * k.A.adjoint(), Side::Minus};
}

JordanPoint MatrixModel::apply(const LieElement& T, const JordanPoint& z) const {
    if (z.side == Side::Plus) return {T.A * z.value - z.value * T.D, Side::Plus};
    return {T.D * z.value - z.value * T.A, Side::Minus};
}

KElement MatrixModel::identity_k() const {
    return {cmat::Identity(rows_, rows_), cmat::Identity(cols_, cols_)};
}

KElement MatrixModel::random_k(Rng& rng) const {
    if (type_.family == Family::TypeI) {
        cmat a = haar_unitary(rows_, rng);
        cmat d = haar_unitary(cols_, rng);
        return {a, d};
    }
    const cmat u = haar_unitary(rows_, rng);
    return {u, u.conjugate()};
}

LieElement MatrixModel::cartan_element(const std::vector<cplx>& values) const {
    LieElement T{cmat::Zero(rows_, rows_), cmat::Zero(cols_, cols_)};
    if (type_.family == Family::TypeI) {
        if (static_cast<int>(values.size()) != rows_ + cols_) throw DomainError("wrong number of Cartan coordinates");
        for (int i = 0; i < rows_; ++i) T.A(i, i) = values[static_cast<std::size_t>(i)];
        for (int j = 0; j < cols_; ++j) T.D(cols_ - 1 - j, cols_ - 1 - j) = values[static_cast<std::size_t>(rows_ + j)];
        return T;
    }
    if (static_cast<int>(values.size()) != rows_) throw DomainError("wrong number of Cartan coordinates");
    for (int i = 0; i < rows_; ++i) T.A(i, i) = values[static_cast<std::size_t>(i)];
    T.D = -T.A.transpose();
    return T;
}

LieElement MatrixModel::random_l(Rng& rng) const {
    auto gauss = [&](int n) {
        cmat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
        return m;
    };
    if (type_.family == Family::TypeI) return {gauss(rows_), gauss(cols_)};
    cmat a = gauss(rows_);
    return {a, -a.transpose()};
}

LieElement MatrixModel::dop_element(const JordanPoint& z, const JordanPoint& w) const {
    if (z.side != Side::Plus || w.side != Side::Minus) throw DomainError("D_{z,w} needs z in n+ and w in n-");
    return {z.value * w.value, -(w.value * z.value)};
}

JordanPoint MatrixModel::random(Side side, Rng& rng, double scale) const {
    Eigen::VectorXcd c(dim());
    for (int k = 0; k < dim(); ++k) c(k) = scale * cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
    return from_coords(side, c);
}

JordanPoint triple(const JordanPoint& x, const JordanPoint& y, const JordanPoint& z) {
    same_family(x, z);
    opposite_sides(x, y);
    return {x.value * y.value * z.value + z.value * y.value * x.value, x.side};
}

JordanPoint quadratic(const JordanPoint& x, const JordanPoint& y) {
    opposite_sides(x, y);
    return {x.value * y.value * x.value, x.side};
}

JordanPoint dop(const JordanPoint& x, const JordanPoint& y, const JordanPoint& z) { return triple(x, y, z); }

JordanPoint bergman_apply(const JordanPoint& x, const JordanPoint& y, const JordanPoint& z) {
    same_family(x, z);
    opposite_sides(x, y);
    const auto n = x.value.rows(), m = x.value.cols();
    return {(cmat::Identity(n, n) - x.value * y.value) * z.value * (cmat::Identity(m, m) - y.value * x.value), x.side};
}

cmat bergman(const MatrixModel& model, const JordanPoint& x, const JordanPoint& y) {
    model.check(x);
    model.check(y);
    const auto& b = model.basis(x.side);
    const auto n = static_cast<Eigen::Index>(b.size());
    cmat out(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        out.col(k) = model.coords(bergman_apply(x, y, {b[static_cast<std::size_t>(k)], x.side}));
    return out;
}

cplx delta(const MatrixModel& model, const JordanPoint& x, const JordanPoint& y) {
    model.check(x);
    model.check(y);
    opposite_sides(x, y);
    if (model.type().family == Family::TypeII) {
        const auto n = x.value.rows();
        cmat blk = cmat::Zero(2 * n, 2 * n);
        blk.topLeftCorner(n, n) = x.value;
        blk.topRightCorner(n, n) = cmat::Identity(n, n);
        blk.bottomLeftCorner(n, n) = -cmat::Identity(n, n);
        blk.bottomRightCorner(n, n) = -y.value;
        const double sign = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
        return sign * pfaffian(blk);
    }
    const auto n = x.value.rows();
    return (cmat::Identity(n, n) - x.value * y.value).determinant();
}

JordanPoint quasi_inverse(const MatrixModel& model, const JordanPoint& x, const JordanPoint& y) {
    const cmat b = bergman(model, x, y);
    Eigen::FullPivLU<cmat> lu(b);
    if (!lu.isInvertible() || lu.rcond() < 1e-13) throw SingularityError("Bergman operator B(x,y) is singular");
    JordanPoint rhs{x.value - quadratic(x, y).value, x.side};
    return model.from_coords(x.side, lu.solve(model.coords(rhs)));
}

JordanPoint qmap(const MatrixModel& model, const JordanPoint& z) {
    if (z.side != Side::Plus) throw DomainError("q-map is defined on n+");
    model.check(z);
    // zbar^{-z} = zbar (1 + z zbar)^{-1}; the factored form stays well conditioned for large z.
    const auto n = z.value.rows();
    const cmat m = cmat::Identity(n, n) + z.value * z.value.adjoint();
    const cmat q = m.llt().solve(z.value).adjoint();
    return {q, Side::Minus};
}

double kahler_potential(const MatrixModel& model, const JordanPoint& z) {
    const cplx d = delta(model, z, {-z.value.adjoint(), Side::Minus});
    return 2.0 * model.constants().g * std::log(d.real());
}

PolarDecomposition polar_decompose(const MatrixModel& model, const JordanPoint& z) {
    model.check(z);
    if (z.side != Side::Plus) throw DomainError("polar decomposition is defined on n+");
    PolarDecomposition out;
    switch (model.type().family) {
    case Family::TypeI: out = polar_type_i(model, z.value); break;
    case Family::TypeII: out = polar_type_ii(model, z.value); break;
    default: out = polar_type_iii(model, z.value); break;
    }
    const JordanPoint back = model.apply(out.k, model.diag(Side::Plus, out.t));
    if ((back.value - z.value).norm() > 1e-9 * std::max(1.0, z.value.norm()))
        throw IntegrityError("polar decomposition failed to reconstruct its input");
    return out;
}

PolyMap delta_poly(const MatrixModel& model, const PolyMap& x, const PolyMap& y) {
    const int n = model.det_size();
    if (model.type().family == Family::TypeII) {
        auto place_x = [n](const cmat& m) {
            cmat b = cmat::Zero(2 * n, 2 * n);
            b.topLeftCorner(n, n) = m;
            return b;
        };
        auto place_y = [n](const cmat& m) {
            cmat b = cmat::Zero(2 * n, 2 * n);
            b.bottomRightCorner(n, n) = -m;
            return b;
        };
        cmat c = cmat::Zero(2 * n, 2 * n);
        c.topRightCorner(n, n) = cmat::Identity(n, n);
        c.bottomLeftCorner(n, n) = -cmat::Identity(n, n);
        const PolyMap blk = PolyMap::constant(c) + PolyMap::linear(x, place_x, 2 * n, 2 * n) +
                            PolyMap::linear(y, place_y, 2 * n, 2 * n);
        const double sign = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
        return cplx(sign, 0.0) * PolyMap::pfaffian(blk);
    }
    return PolyMap::det(PolyMap::constant(cmat::Identity(n, n)) - x * y);
}

cplx minor(const MatrixModel& model, const JordanPoint& y, int i) {
    if (i < 1 || i > model.rank()) throw DomainError("minor index out of range");
    if (y.side != Side::Minus) throw DomainError("Jordan minors are functions on n-");
    const JordanPoint e = model.epsilon(i);
    return delta(model, e, {e.value.adjoint() - y.value, Side::Minus});
}

PolyMap minor_poly(const MatrixModel& model, int i) {
    if (i < 1 || i > model.rank()) throw DomainError("minor index out of range");
    const cmat e = model.epsilon(i).value;
    const PolyMap y = PolyMap::coord_y(model.rows(Side::Minus), model.cols(Side::Minus));
    return delta_poly(model, PolyMap::constant(e), PolyMap::constant(e.adjoint()) - y);
}

PolyMap minor_poly(const MatrixModel& model, const Partition& m) {
    if (static_cast<int>(m.size()) != model.rank()) throw DomainError("signature length must equal the rank");
    PolyMap out = PolyMap::scalar(1.0);
    bool first = true;
    for (int i = 1; i <= model.rank(); ++i) {
        const int next = i < model.rank() ? m[static_cast<std::size_t>(i)] : 0;
        const int e = m[static_cast<std::size_t>(i - 1)] - next;
        if (e == 0) continue;
        const PolyMap f = PolyMap::pow(minor_poly(model, i), e);
        out = first ? f : out * f;
        first = false;
    }
    return out;
}

std::vector<int> diagonal_degrees(const MatrixModel& model, const PolyMap& p, int budget) {
    const int r = model.rank();
    const int nodes = 2 * budget + 2;
    const cmat x0 = cmat::Zero(model.rows(Side::Plus), model.cols(Side::Plus));
    std::vector<int> out(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < r; ++i) {
        std::vector<cplx> t(static_cast<std::size_t>(r));
        for (int j = 0; j < r; ++j) t[static_cast<std::size_t>(j)] = cplx(0.71 + 0.13 * j, 0.29 - 0.07 * j);
        std::vector<cmat> vals;
        double scale = 0.0;
        for (int k = 0; k < nodes; ++k) {
            t[static_cast<std::size_t>(i)] = std::polar(1.0, 2.0 * std::numbers::pi * k / nodes);
            vals.push_back(p.eval(x0, model.diag(Side::Minus, t).value));
            scale = std::max(scale, vals.back().norm());
        }
        if (scale == 0.0) continue;
        int deg = 0;
        for (int d = 0; d < nodes; ++d) {
            cmat c = cmat::Zero(vals[0].rows(), vals[0].cols());
            for (int k = 0; k < nodes; ++k) c += std::polar(1.0, -2.0 * std::numbers::pi * d * k / nodes) * vals[static_cast<std::size_t>(k)];
            if (c.norm() / nodes > 1e-9 * scale) deg = d;
        }
        if (deg > budget) throw BudgetError("diagonal degree exceeds the interpolation budget of " + std::to_string(budget));
        out[static_cast<std::size_t>(i)] = deg;
    }
    return out;
}

cmat eval_section(const MatrixModel& model, const PolyMap& p, const JordanPoint& z) {
    return p.eval(z.value, qmap(model, z).value);
}

cmat fiber_action(const MatrixModel& model, const BundleSpec& bundle, const LieElement& T, const cmat& vec) {
    switch (bundle.kind) {
    case BundleKind::LineBundle: {
        cplx l1;
        const auto& t = model.type();
        switch (t.family) {
        case Family::TypeI: l1 = (double(t.q) * T.A.trace() - double(t.p) * T.D.trace()) / double(t.p + t.q); break;
        case Family::TypeII: l1 = 0.5 * T.A.trace(); break;
        default: l1 = T.A.trace(); break;
        }
        return double(bundle.k) * l1 * vec;
    }
    case BundleKind::Cotangent: return T.D * vec - vec * T.A;
    default: throw UnsupportedError("fiber action is implemented for line bundles and the cotangent bundle");
    }
}

cmat uC_action(const MatrixModel& model, const BundleSpec& bundle, const Generator& X, const PolyMap& p,
               const JordanPoint& z) {
    model.check(z);
    const JordanPoint q = qmap(model, z);
    const cmat zero_x = cmat::Zero(z.value.rows(), z.value.cols());
    const cmat zero_y = cmat::Zero(q.value.rows(), q.value.cols());
    if (const auto* pt = std::get_if<JordanPoint>(&X)) {
        model.check(*pt);
        if (pt->side == Side::Plus) return -p.derivative(z.value, q.value, pt->value, zero_y);
        const JordanPoint& w = *pt;
        const LieElement T = model.dop_element(z, w);
        const cmat dx = quadratic(z, w).value;
        const cmat dy = w.value - triple(q, z, w).value;
        return -p.derivative(z.value, q.value, dx, dy) + fiber_action(model, bundle, T, p.eval(z.value, q.value));
    }
    const LieElement& T = std::get<LieElement>(X);
    const cmat dx = model.apply(T, z).value;
    const cmat dy = model.apply(T, q).value;
    return -p.derivative(z.value, q.value, dx, dy) + fiber_action(model, bundle, T, p.eval(z.value, q.value));
}

namespace {

// d/dt F(z + t u) at 0, central differences.
cmat directional(const MatrixModel& model, const JordanPoint& z, const cmat& u, double h) {
    const JordanPoint zp{z.value + h * u, Side::Plus}, zm{z.value - h * u, Side::Plus};
    return (qmap(model, zp).value - qmap(model, zm).value) / (2.0 * h);
}

// Holomorphic derivative along v in n+.
cmat hol(const MatrixModel& model, const JordanPoint& z, const cmat& v, double h) {
    const cplx i(0.0, 1.0);
    return 0.5 * (directional(model, z, v, h) - i * directional(model, z, i * v, h));
}

// Antiholomorphic derivative along w in n-.
cmat antihol(const MatrixModel& model, const JordanPoint& z, const cmat& w, double h) {
    const cplx i(0.0, 1.0);
    const cmat u = w.adjoint();
    return 0.5 * (directional(model, z, u, h) + i * directional(model, z, i * u, h));
}

} // namespace

QmapResiduals verify_qmap_identities(const MatrixModel& model, const JordanPoint& z, const JordanPoint& v,
                                     const LieElement& T, const JordanPoint& w, double h) {
    model.check(z);
    model.check(v);
    model.check(w);
    if (z.side != Side::Plus || v.side != Side::Plus || w.side != Side::Minus)
        throw DomainError("expected z, v in n+ and w in n-");
    const JordanPoint q = qmap(model, z);
    const JordanPoint zb = model.conj(z);
    QmapResiduals r;
    r.holomorphic = (-hol(model, z, v.value, h) - antihol(model, z, quadratic(zb, v).value, h)).norm();
    r.torus = (-hol(model, z, model.apply(T, z).value, h) - antihol(model, z, model.apply(T, zb).value, h) +
               model.apply(T, q).value)
                  .norm();
    r.antiholomorphic = (-hol(model, z, quadratic(z, w).value, h) - antihol(model, z, w.value, h) + w.value -
                         triple(q, z, w).value)
                            .norm();
    return r;
}

cmat bergman_bundle_action(const MatrixModel& model, const BundleSpec& bundle, const JordanPoint& z,
                           const cmat& vec) {
    model.check(z);
    switch (bundle.kind) {
    case BundleKind::LineBundle: {
        const double d = delta(model, z, {-z.value.adjoint(), Side::Minus}).real();
        return std::pow(d, -0.5 * bundle.k) * vec;
    }
    case BundleKind::Cotangent: {
        const JordanPoint zb = model.conj(z);
        const cmat b = bergman(model, zb, {-z.value, Side::Plus});
        const double herm = (b - b.adjoint()).norm();
        if (herm > 1e-10 * std::max(1.0, b.norm())) throw IntegrityError("Bergman operator is not Hermitian");
        Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (b + b.adjoint()));
        if (es.eigenvalues().minCoeff() <= 0.0) throw IntegrityError("Bergman operator is not positive definite");
        const cmat root = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
        const JordanPoint v = model.point(Side::Minus, vec);
        return model.from_coords(Side::Minus, root * model.coords(v)).value;
    }
    default: throw UnsupportedError("Bergman action is implemented for line bundles and the cotangent bundle");
    }
}

cmat highest_fiber_vector(const MatrixModel& model, const BundleSpec& bundle) {
    switch (bundle.kind) {
    case BundleKind::LineBundle: return cmat::Ones(1, 1);
    case BundleKind::Cotangent: {
        const auto& t = model.type();
        cmat v = cmat::Zero(model.rows(Side::Minus), model.cols(Side::Minus));
        if (t.family == Family::TypeI) {
            v(t.q - 1, t.p - 1) = 1.0;
        } else if (t.family == Family::TypeII) {
            v(t.p - 2, t.p - 1) = 1.0 / std::sqrt(2.0);
            v(t.p - 1, t.p - 2) = -1.0 / std::sqrt(2.0);
        } else {
            v(t.p - 1, t.p - 1) = 1.0;
        }
        return v;
    }
    default: throw UnsupportedError("highest fiber vector is implemented for line bundles and the cotangent bundle");
    }
}

double fiber_norm2(const cmat& v) { return v.squaredNorm(); }

} // namespace nearhol
