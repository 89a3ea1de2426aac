#include "nearhol/polymap.hpp"

#include "nearhol/weight.hpp"

#include <unordered_map>

namespace nearhol {

struct PolyMap::Node {
    enum class Kind { Constant, CoordX, CoordY, Sum, Product, Scale, ScalarTimes, Det, Pfaffian, IntPow, LinearMap };
    Kind kind = Kind::Constant;
    std::vector<std::shared_ptr<const Node>> kids;
    cmat value;  // Constant
    cplx factor{1.0, 0.0};
    int power = 0;
    Linear map;
    int rows = 1, cols = 1;
    bool uses_x = false, uses_y = false;
};

namespace {

using Node = PolyMap::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node n) {
    for (const auto& k : n.kids) {
        n.uses_x = n.uses_x || k->uses_x;
        n.uses_y = n.uses_y || k->uses_y;
    }
    return std::make_shared<const Node>(std::move(n));
}

bool is_scalar(const Node& n) { return n.rows == 1 && n.cols == 1; }

cmat removed(const cmat& a, Eigen::Index i, Eigen::Index j) {
    const Eigen::Index n = a.rows();
    cmat out(n - 2, n - 2);
    for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == i || r == j) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
            if (c == i || c == j) continue;
            out(rr, cc++) = a(r, c);
        }
        ++rr;
    }
    return out;
}

struct Evaluator {
    const cmat& x;
    const cmat& y;
    const cmat& dx;
    const cmat& dy;
    std::unordered_map<const Node*, PolyMap::Jet> memo;

    const PolyMap::Jet& run(const Node& n) {
        if (auto it = memo.find(&n); it != memo.end()) return it->second;
        PolyMap::Jet j = compute(n);
        return memo.emplace(&n, std::move(j)).first->second;
    }

    PolyMap::Jet compute(const Node& n) {
        using K = Node::Kind;
        switch (n.kind) {
        case K::Constant: return {n.value, cmat::Zero(n.rows, n.cols)};
        case K::CoordX: return {x, dx};
        case K::CoordY: return {y, dy};
        case K::Sum: {
            const auto& a = run(*n.kids[0]);
            const auto& b = run(*n.kids[1]);
            return {a.value + b.value, a.deriv + b.deriv};
        }
        case K::Product: {
            const auto& a = run(*n.kids[0]);
            const auto& b = run(*n.kids[1]);
            return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
        }
        case K::Scale: {
            const auto& a = run(*n.kids[0]);
            return {n.factor * a.value, n.factor * a.deriv};
        }
        case K::ScalarTimes: {
            const auto& s = run(*n.kids[0]);
            const auto& a = run(*n.kids[1]);
            const cplx sv = s.value(0, 0), sd = s.deriv(0, 0);
            return {sv * a.value, sd * a.value + sv * a.deriv};
        }
        case K::Det: {
            const auto& a = run(*n.kids[0]);
            cmat v(1, 1), d(1, 1);
            v(0, 0) = a.value.determinant();
            d(0, 0) = (adjugate(a.value) * a.deriv).trace();
            return {v, d};
        }
        case K::Pfaffian: {
            const auto& a = run(*n.kids[0]);
            cmat v(1, 1), d(1, 1);
            v(0, 0) = pfaffian(a.value);
            cplx s{0.0, 0.0};
            const Eigen::Index m = a.value.rows();
            for (Eigen::Index i = 0; i < m; ++i)
                for (Eigen::Index j = i + 1; j < m; ++j) {
                    if (a.deriv(i, j) == cplx{0.0, 0.0}) continue;
                    const double sign = ((i + j + 1) % 2 == 0) ? 1.0 : -1.0;
                    s += sign * pfaffian(removed(a.value, i, j)) * a.deriv(i, j);
                }
            d(0, 0) = s;
            return {v, d};
        }
        case K::IntPow: {
            const auto& a = run(*n.kids[0]);
            cmat v(1, 1), d(1, 1);
            const cplx av = a.value(0, 0);
            v(0, 0) = n.power == 0 ? cplx{1.0, 0.0} : std::pow(av, n.power);
            d(0, 0) = n.power == 0 ? cplx{0.0, 0.0}
                                   : static_cast<double>(n.power) * std::pow(av, n.power - 1) * a.deriv(0, 0);
            return {v, d};
        }
        case K::LinearMap: {
            const auto& a = run(*n.kids[0]);
            return {n.map(a.value), n.map(a.deriv)};
        }
        }
        throw IntegrityError("unknown polynomial node");
    }
};

} // namespace

PolyMap::PolyMap() : PolyMap(scalar(0.0)) {}

PolyMap PolyMap::constant(const cmat& c) {
    Node n;
    n.kind = Node::Kind::Constant;
    n.value = c;
    n.rows = static_cast<int>(c.rows());
    n.cols = static_cast<int>(c.cols());
    return PolyMap(make(std::move(n)));
}

PolyMap PolyMap::scalar(cplx c) { return constant(cmat::Constant(1, 1, c)); }

PolyMap PolyMap::coord_x(int rows, int cols) {
    Node n;
    n.kind = Node::Kind::CoordX;
    n.rows = rows;
    n.cols = cols;
    n.uses_x = true;
    return PolyMap(make(std::move(n)));
}

PolyMap PolyMap::coord_y(int rows, int cols) {
    Node n;
    n.kind = Node::Kind::CoordY;
    n.rows = rows;
    n.cols = cols;
    n.uses_y = true;
    return PolyMap(make(std::move(n)));
}

PolyMap PolyMap::det(const PolyMap& a) {
    if (a.rows() != a.cols()) throw DomainError("determinant of a non-square map");
    Node n;
    n.kind = Node::Kind::Det;
    n.kids = {a.root_};
    return PolyMap(make(std::move(n)));
}

PolyMap PolyMap::pfaffian(const PolyMap& a) {
    if (a.rows() != a.cols()) throw DomainError("Pfaffian of a non-square map");
    Node n;
    n.kind = Node::Kind::Pfaffian;
    n.kids = {a.root_};
    return PolyMap(make(std::move(n)));
}

PolyMap PolyMap::pow(const PolyMap& a, int k) {
    if (!is_scalar(*a.root_)) throw DomainError("power of a non-scalar map");
    if (k < 0) throw DomainError("negative power of a polynomial map");
    if (k == 1) return a;
    Node n;
    n.kind = Node::Kind::IntPow;
    n.power = k;
    n.kids = {a.root_};
    return PolyMap(make(std::move(n)));
}

PolyMap PolyMap::linear(const PolyMap& a, Linear f, int rows, int cols) {
    Node n;
    n.kind = Node::Kind::LinearMap;
    n.map = std::move(f);
    n.rows = rows;
    n.cols = cols;
    n.kids = {a.root_};
    return PolyMap(make(std::move(n)));
}

PolyMap operator+(const PolyMap& a, const PolyMap& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("sum of maps with different shapes");
    Node n;
    n.kind = Node::Kind::Sum;
    n.rows = a.rows();
    n.cols = a.cols();
    n.kids = {a.root_, b.root_};
    return PolyMap(make(std::move(n)));
}

PolyMap operator-(const PolyMap& a, const PolyMap& b) { return a + cplx{-1.0, 0.0} * b; }

PolyMap operator*(const PolyMap& a, const PolyMap& b) {
    Node n;
    if (is_scalar(*a.root_) && !is_scalar(*b.root_)) {
        n.kind = Node::Kind::ScalarTimes;
        n.kids = {a.root_, b.root_};
        n.rows = b.rows();
        n.cols = b.cols();
    } else if (is_scalar(*b.root_) && !is_scalar(*a.root_)) {
        n.kind = Node::Kind::ScalarTimes;
        n.kids = {b.root_, a.root_};
        n.rows = a.rows();
        n.cols = a.cols();
    } else {
        if (a.cols() != b.rows()) throw DomainError("product of maps with incompatible shapes");
        n.kind = Node::Kind::Product;
        n.kids = {a.root_, b.root_};
        n.rows = a.rows();
        n.cols = b.cols();
    }
    return PolyMap(make(std::move(n)));
}

PolyMap operator*(cplx s, const PolyMap& a) {
    Node n;
    n.kind = Node::Kind::Scale;
    n.factor = s;
    n.rows = a.rows();
    n.cols = a.cols();
    n.kids = {a.root_};
    return PolyMap(make(std::move(n)));
}

int PolyMap::rows() const { return root_->rows; }
int PolyMap::cols() const { return root_->cols; }
bool PolyMap::depends_on_x() const { return root_->uses_x; }
bool PolyMap::depends_on_y() const { return root_->uses_y; }

cmat PolyMap::eval(const cmat& x, const cmat& y) const {
    return jet(x, y, cmat::Zero(x.rows(), x.cols()), cmat::Zero(y.rows(), y.cols())).value;
}

PolyMap::Jet PolyMap::jet(const cmat& x, const cmat& y, const cmat& dx, const cmat& dy) const {
    Evaluator ev{x, y, dx, dy, {}};
    return ev.run(*root_);
}

cplx pfaffian(cmat a) {
    const Eigen::Index n = a.rows();
    if (n != a.cols()) throw DomainError("Pfaffian of a non-square matrix");
    if (n == 0) return {1.0, 0.0};
    if (n % 2 == 1) return {0.0, 0.0};
    cplx pf{1.0, 0.0};
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        Eigen::Index kp = k + 1;
        a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
        kp += k + 1;
        if (kp != k + 1) {
            a.row(k + 1).swap(a.row(kp));
            a.col(k + 1).swap(a.col(kp));
            pf = -pf;
        }
        if (a(k + 1, k) == cplx{0.0, 0.0}) return {0.0, 0.0};
        pf *= a(k, k + 1);
        if (k + 2 < n) {
            const Eigen::Index m = n - k - 2;
            const Eigen::VectorXcd tau = a.row(k).tail(m).transpose() / a(k, k + 1);
            const Eigen::VectorXcd col = a.col(k + 1).tail(m);
            a.bottomRightCorner(m, m) += tau * col.transpose() - col * tau.transpose();
        }
    }
    return pf;
}

cmat adjugate(const cmat& a) {
    const Eigen::Index n = a.rows();
    if (n == 0) return cmat(0, 0);
    if (n == 1) return cmat::Ones(1, 1);
    Eigen::JacobiSVD<cmat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Eigen::VectorXcd cof(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double p = 1.0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) p *= s(j);
        cof(i) = p;
    }
    const cplx phase = svd.matrixU().determinant() * std::conj(svd.matrixV().determinant());
    return phase * svd.matrixV() * cof.asDiagonal() * svd.matrixU().adjoint();
}

} // namespace nearhol
