#include <doctest.h>

#include "nearhol/jordan.hpp"

#include <numbers>

using namespace nearhol;

namespace {

const std::vector<std::string> kModels{"I:1,1", "I:1,2", "I:2,2", "I:2,3", "II:4", "II:5", "III:2", "III:3"};

MatrixModel model_of(const std::string& s) { return MatrixModel(HermitianType::parse(s)); }

JordanPoint minus_conj(const JordanPoint& z) { return {-z.value.adjoint(), Side::Minus}; }

double rel(const cmat& a, const cmat& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

// Jordan trace form: tr(v w) for I and III, half of it for II (each entry counted twice).
cplx jordan_trace(const MatrixModel& m, const cmat& v, const cmat& w) {
    const cplx t = (v * w).trace();
    return m.type().family == Family::TypeII ? 0.5 * t : t;
}

} // namespace

TEST_CASE("matrix models and their bases") {
    for (const auto& s : kModels) {
        CAPTURE(s);
        const MatrixModel m = model_of(s);
        const auto c = build_root_data(HermitianType::parse(s)).constants;
        CHECK(m.constants() == c);
        for (const Side side : {Side::Plus, Side::Minus}) {
            const auto& b = m.basis(side);
            REQUIRE(static_cast<int>(b.size()) == c.n);
            for (std::size_t i = 0; i < b.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j)
                    CHECK(std::abs((b[i] * b[j].adjoint()).trace() - cplx(i == j ? 1.0 : 0.0)) < 1e-14);
            Rng rng(5);
            const JordanPoint z = m.random(side, rng);
            CHECK(rel(m.from_coords(side, m.coords(z)).value, z.value) < 1e-14);
        }
        for (int i = 0; i < c.r; ++i) {
            const JordanPoint& e = m.frame(i);
            CHECK(rel(quadratic(e, m.conj(e)).value, e.value) < 1e-14);  // tripotent
        }
    }
}

TEST_CASE("models exist only for the classical matrix families") {
    CHECK_THROWS_AS(MatrixModel(HermitianType::type_iv(5)), UnsupportedError);
    CHECK_THROWS_AS(MatrixModel(HermitianType::e_iii()), UnsupportedError);
    CHECK_THROWS_AS(MatrixModel(HermitianType::e_vii()), UnsupportedError);
    const MatrixModel m = model_of("III:2");
    cmat bad(2, 2);
    bad << 1.0, 2.0, 3.0, 4.0;
    CHECK_THROWS_AS((void)m.plus(bad), DomainError);
    CHECK_THROWS_AS((void)m.plus(cmat::Zero(2, 3)), DomainError);
    CHECK_THROWS_AS((void)model_of("II:4").plus(cmat::Identity(4, 4)), DomainError);
}

TEST_CASE("Bergman determinant and the fundamental identity") {
    for (const auto& s : kModels) {
        CAPTURE(s);
        const MatrixModel m = model_of(s);
        Rng rng(11);
        for (int trial = 0; trial < 20; ++trial) {
            const JordanPoint x = m.random(Side::Plus, rng, 0.5), y = m.random(Side::Minus, rng, 0.5);
            const cplx lhs = bergman(m, x, y).determinant();
            const cplx rhs = std::pow(delta(m, x, y), m.constants().g);
            CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs));
            const JordanPoint u = m.random(Side::Minus, rng);
            CHECK(rel(quadratic(quadratic(x, y), u).value, quadratic(x, quadratic(y, quadratic(x, u))).value) < 1e-10);
            // B(x,y) in the basis agrees with the operator
            const JordanPoint w = m.random(Side::Plus, rng);
            const cmat via_matrix = m.from_coords(Side::Plus, bergman(m, x, y) * m.coords(w)).value;
            CHECK(rel(via_matrix, bergman_apply(x, y, w).value) < 1e-12);
        }
    }
}

TEST_CASE("delta examples") {
    const MatrixModel m = model_of("I:2,2");
    CHECK(std::abs(delta(m, m.zero(Side::Plus), m.zero(Side::Minus)) - 1.0) < 1e-15);
    const JordanPoint z = m.diag(Side::Plus, std::vector<double>{2.0, 0.5});
    CHECK(std::abs(delta(m, z, minus_conj(z)) - 5.0 * 1.25) < 1e-12);
    const MatrixModel m2 = model_of("II:4");
    const JordanPoint z2 = m2.diag(Side::Plus, std::vector<double>{1.0, 3.0});
    CHECK(std::abs(delta(m2, z2, minus_conj(z2)) - 2.0 * 10.0) < 1e-12);
}

TEST_CASE("polar decomposition") {
    for (const auto& s : kModels) {
        CAPTURE(s);
        const MatrixModel m = model_of(s);
        Rng rng(13);
        for (int trial = 0; trial < 20; ++trial) {
            const JordanPoint z = m.random(Side::Plus, rng);
            const auto pd = polar_decompose(m, z);
            REQUIRE(static_cast<int>(pd.t.size()) == m.rank());
            for (std::size_t i = 0; i < pd.t.size(); ++i) {
                CHECK(pd.t[i] >= 0.0);
                if (i > 0) CHECK(pd.t[i] <= pd.t[i - 1]);
            }
            CHECK(rel(m.apply(pd.k, m.diag(Side::Plus, pd.t)).value, z.value) < 1e-10);
            CHECK((pd.k.A * pd.k.A.adjoint() - cmat::Identity(pd.k.A.rows(), pd.k.A.cols())).norm() < 1e-12);
            double prod = 1.0;
            for (double t : pd.t) prod *= 1.0 + t * t;
            CHECK(std::abs(delta(m, z, minus_conj(z)) - prod) < 1e-8 * prod);
        }
    }
}

TEST_CASE("K acts by automorphisms") {
    for (const auto& s : kModels) {
        CAPTURE(s);
        const MatrixModel m = model_of(s);
        Rng rng(17);
        const KElement k = m.random_k(rng);
        const JordanPoint x = m.random(Side::Plus, rng, 0.5), y = m.random(Side::Minus, rng, 0.5);
        CHECK(std::abs(delta(m, m.apply(k, x), m.apply(k, y)) - delta(m, x, y)) < 1e-10);
        CHECK(std::abs(kahler_potential(m, m.apply(k, x)) - kahler_potential(m, x)) < 1e-10);
        CHECK(rel(qmap(m, m.apply(k, x)).value, m.apply(k, qmap(m, x)).value) < 1e-10);
        CHECK(rel(m.apply(m.identity_k(), x).value, x.value) == 0.0);
    }
}

TEST_CASE("q-map") {
    for (const auto& s : kModels) {
        CAPTURE(s);
        const MatrixModel m = model_of(s);
        Rng rng(19);
        for (int trial = 0; trial < 10; ++trial) {
            const JordanPoint z = m.random(Side::Plus, rng);
            const JordanPoint q = qmap(m, z);
            CHECK(q.side == Side::Minus);
            CHECK(rel(q.value, quasi_inverse(m, m.conj(z), {-z.value, Side::Plus}).value) < 1e-10);
            const JordanPoint v = m.random(Side::Plus, rng, 0.5), w = m.random(Side::Minus, rng, 0.5);
            const auto res = verify_qmap_identities(m, m.random(Side::Plus, rng, 0.5), v, m.random_l(rng), w);
            CHECK(res.max() < 1e-6);
        }
        // on the frame: q(sum t_i e_i) = sum t_i/(1+t_i^2) ebar_i
        std::vector<double> t, want;
        for (int i = 0; i < m.rank(); ++i) {
            t.push_back(0.5 + i);
            want.push_back(t.back() / (1.0 + t.back() * t.back()));
        }
        CHECK(rel(qmap(m, m.diag(Side::Plus, t)).value, m.diag(Side::Minus, want).value) < 1e-12);
    }
    CHECK_THROWS_AS(qmap(model_of("I:1,1"), model_of("I:1,1").zero(Side::Minus)), DomainError);
}

TEST_CASE("Kahler potential gradient") {
    for (const auto& s : kModels) {
        CAPTURE(s);
        const MatrixModel m = model_of(s);
        Rng rng(23);
        const JordanPoint z = m.random(Side::Plus, rng, 0.4), v = m.random(Side::Plus, rng);
        const double h = 1e-6;
        const double fd = (kahler_potential(m, {z.value + h * v.value, Side::Plus}) -
                           kahler_potential(m, {z.value - h * v.value, Side::Plus})) /
                          (2 * h);
        const double want = 4.0 * m.constants().g * jordan_trace(m, qmap(m, z).value, v.value).real();
        CHECK(std::abs(fd - want) < 1e-6 * (1 + std::abs(want)));
    }
}

TEST_CASE("quasi-inverse singularity") {
    const MatrixModel m = model_of("I:2,2");
    const JordanPoint e = m.frame(0);
    CHECK_THROWS_AS(quasi_inverse(m, e, m.conj(e)), SingularityError);
}

TEST_CASE("Jordan minors") {
    for (const auto& s : kModels) {
        CAPTURE(s);
        const MatrixModel m = model_of(s);
        std::vector<double> t;
        for (int i = 0; i < m.rank(); ++i) t.push_back(1.5 + 0.25 * i);
        const JordanPoint y = m.diag(Side::Minus, t);
        double prod = 1.0;
        for (int i = 1; i <= m.rank(); ++i) {
            prod *= t[static_cast<std::size_t>(i - 1)];
            CHECK(std::abs(minor(m, y, i) - prod) < 1e-12 * prod);
            const cmat viaPoly = minor_poly(m, i).eval(cmat::Zero(m.rows(Side::Plus), m.cols(Side::Plus)), y.value);
            CHECK(std::abs(viaPoly(0, 0) - prod) < 1e-12 * prod);
        }
        for (const auto& part : Partition::enumerate(static_cast<std::size_t>(m.rank()), 4))
            CHECK(diagonal_degrees(m, minor_poly(m, part)) == part.parts());
        CHECK_THROWS_AS(minor(m, y, 0), DomainError);
        CHECK_THROWS_AS(minor(m, m.zero(Side::Plus), 1), DomainError);
    }
    const MatrixModel m = model_of("I:1,1");
    CHECK_THROWS_AS(diagonal_degrees(m, minor_poly(m, Partition({30})), 24), BudgetError);
}

TEST_CASE("minor sections are weight vectors") {
    for (const auto& s : kModels) {
        CAPTURE(s);
        const MatrixModel m = model_of(s);
        const auto data = build_root_data(HermitianType::parse(s));
        Rng rng(29);
        for (int k = -1; k <= 2; ++k) {
            const BundleSpec bundle = BundleSpec::line(k, data);
            for (const auto& part : Partition::enumerate(static_cast<std::size_t>(m.rank()), 3)) {
                const Weight lambda = gamma_weight(part, data) + bundle.mu;
                std::vector<cplx> vals;
                cplx lt = 0.0;
                for (std::size_t i = 0; i < data.ambient_dim(); ++i) {
                    vals.emplace_back(rng.normal(), rng.normal());
                    lt += lambda[i].to_double() * vals.back();
                }
                const LieElement T = m.cartan_element(vals);
                const PolyMap p = minor_poly(m, part);
                const JordanPoint z = m.random(Side::Plus, rng, 0.5);
                const cmat got = uC_action(m, bundle, T, p, z);
                const cmat f = eval_section(m, p, z);
                CHECK(rel(got, lt * f) < 1e-8);
            }
        }
    }
}

TEST_CASE("minor sections are annihilated by compact raising operators") {
    for (const std::string s : {"I:2,2", "I:2,3"}) {
        CAPTURE(s);
        const MatrixModel m = model_of(s);
        const auto data = build_root_data(HermitianType::parse(s));
        const int p = m.type().p, q = m.type().q;
        Rng rng(31);
        std::vector<LieElement> raising;
        for (int i = 0; i + 1 < p; ++i) {
            LieElement T{cmat::Zero(p, p), cmat::Zero(q, q)};
            T.A(i, i + 1) = 1.0;
            raising.push_back(T);
        }
        // eps_{p+j} = D_{q+1-j,q+1-j}: e_{p+j} - e_{p+j+1} raises at D(q-j, q-j-1) (0-based)
        for (int j = 1; j < q; ++j) {
            LieElement T{cmat::Zero(p, p), cmat::Zero(q, q)};
            T.D(q - j, q - j - 1) = 1.0;
            raising.push_back(T);
        }
        for (const auto& part : Partition::enumerate(static_cast<std::size_t>(m.rank()), 3)) {
            const PolyMap poly = minor_poly(m, part);
            const JordanPoint z = m.random(Side::Plus, rng, 0.5);
            for (const auto& T : raising)
                CHECK(uC_action(m, BundleSpec::line(1, data), T, poly, z).norm() < 1e-9);
        }
    }
}

TEST_CASE("fiber actions and Bergman bundle norms") {
    for (const auto& s : kModels) {
        CAPTURE(s);
        const MatrixModel m = model_of(s);
        const auto data = build_root_data(HermitianType::parse(s));
        Rng rng(37);
        std::vector<cplx> vals;
        cplx a1 = 0.0;
        for (std::size_t i = 0; i < data.ambient_dim(); ++i) {
            vals.emplace_back(rng.normal(), rng.normal());
            a1 += data.alpha1()[i].to_double() * vals.back();
        }
        const LieElement T = m.cartan_element(vals);
        const BundleSpec cot = BundleSpec::cotangent(data);
        const cmat v = highest_fiber_vector(m, cot);
        CHECK(std::abs(fiber_norm2(v) - 1.0) < 1e-14);
        CHECK(rel(fiber_action(m, cot, T, v), -a1 * v) < 1e-12);
        for (int k = -2; k <= 2; ++k) {
            const BundleSpec line = BundleSpec::line(k, data);
            const JordanPoint z = m.random(Side::Plus, rng);
            const double d = delta(m, z, minus_conj(z)).real();
            const double n2 = fiber_norm2(bergman_bundle_action(m, line, z, highest_fiber_vector(m, line)));
            CHECK(std::abs(n2 - std::pow(d, -k)) < 1e-10 * std::pow(d, -k));
        }
        // cotangent: between Delta^{-mu(H_gamma_1)} and Delta^{-mu(H_alpha_1)} = Delta^2
        const JordanPoint z = m.random(Side::Plus, rng);
        const double d = delta(m, z, minus_conj(z)).real();
        const double n2 = fiber_norm2(bergman_bundle_action(m, cot, z, v));
        CHECK(n2 >= std::pow(d, -coroot_pairing(cot.mu, data.gammas.front()).to_double()) * (1 - 1e-10));
        CHECK(n2 <= std::pow(d, 2.0) * (1 + 1e-10));
    }
}
