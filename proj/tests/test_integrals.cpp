#include <doctest.h>

#include "nearhol/integrals.hpp"
#include "oracles.hpp"

#include <cstdlib>
#include <numbers>

using namespace nearhol;

namespace {

constexpr double kPi = std::numbers::pi;

MatrixModel model_of(const std::string& s) { return MatrixModel(HermitianType::parse(s)); }
RootSystemData rd(const std::string& s) { return build_root_data(HermitianType::parse(s)); }

PolyMap section(const MatrixModel& m, const BundleSpec& b, const Partition& part) {
    return minor_poly(m, part) * PolyMap::constant(highest_fiber_vector(m, b));
}

std::vector<double> pow_ladder() { return QuadratureSpec::default_ladder(); }

} // namespace

TEST_CASE("quadrature spec validation") {
    QuadratureSpec s;
    CHECK_NOTHROW(s.validate());
    CHECK(s.radii.size() == 12);
    CHECK(std::is_sorted(s.radii.begin(), s.radii.end()));
    s.nodes = 7;
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s = {};
    s.radii = {1.0, 2.0, 2.0, 4.0};
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s = {};
    s.tolerance = 0.0;
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s = {};
    s.samples = 0;
    CHECK_THROWS_AS(s.validate(), ParameterError);
    CHECK(to_string(Classification::Convergent) == "Convergent");
    CHECK(to_string(Classification::Divergent) == "Divergent");
    CHECK(to_string(Classification::Inconclusive) == "Inconclusive");
}

TEST_CASE("density examples") {
    const MatrixModel m = model_of("I:1,1");
    const auto d = rd("I:1,1");
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const JordanPoint z = m.random(Side::Plus, rng, 2.0);
        const double r2 = z.value.squaredNorm();
        CHECK(l2_density(m, BundleSpec::line(0, d), PolyMap::scalar(1.0), z) ==
              doctest::Approx(std::pow(1.0 + r2, -2.0)).epsilon(1e-12));
        const BundleSpec cot = BundleSpec::cotangent(d);
        CHECK(l2_density(m, cot, PolyMap::constant(highest_fiber_vector(m, cot)), z) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::exp(log_l2_density(m, cot, PolyMap::constant(highest_fiber_vector(m, cot)), z)) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    for (const std::string s : {"I:2,2", "II:4", "III:2"}) {
        const MatrixModel mm = model_of(s);
        const auto dd = rd(s);
        const PolyMap p = PolyMap::scalar(cplx(0.6, 0.8)) + minor_poly(mm, 1);
        CHECK(l2_density(mm, BundleSpec::line(2, dd), p, mm.zero(Side::Plus)) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // line bundles: |f|^2 Delta^{-k-g}
    const MatrixModel m2 = model_of("I:2,3");
    const auto d2 = rd("I:2,3");
    const JordanPoint z = m2.random(Side::Plus, rng);
    const PolyMap p = minor_poly(m2, Partition({2, 1}));
    const double f2 = std::norm(eval_section(m2, p, z)(0, 0));
    const double dl = delta(m2, z, {-z.value.adjoint(), Side::Minus}).real();
    CHECK(l2_density(m2, BundleSpec::line(1, d2), p, z) == doctest::Approx(f2 * std::pow(dl, -1.0 - 5.0)).epsilon(1e-10));
}

TEST_CASE("Selberg closed form") {
    CHECK(selberg_integral(1, 1.0, 1.0, 0.0) == doctest::Approx(1.0));
    CHECK(std::isinf(selberg_integral(1, 2.0, 0.0, 0.0)));
    // int int |s-t| = 1/3 and int int (s-t)^2 = 1/6
    CHECK(selberg_integral(2, 1.0, 1.0, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(selberg_integral(2, 1.0, 1.0, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    oracle::Lcg g(41);
    for (int i = 0; i < 20; ++i) {
        const int a = g.range(1, 6), b = g.range(1, 6);
        CHECK(selberg_integral(1, a, b, 0.0) == doctest::Approx(oracle::beta_integer(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("Selberg bound examples") {
    const auto d11 = rd("I:1,1");
    const auto one = selberg_bound(Partition({0}), BundleSpec::line(0, d11), d11);
    CHECK(one.classification == Classification::Convergent);
    CHECK(one.value == doctest::Approx(1.0).epsilon(1e-12));
    const auto div = selberg_bound(Partition({1}), BundleSpec::cotangent(d11), d11);
    CHECK(div.classification == Classification::Divergent);
    CHECK(div.infinite);
    const auto d12 = rd("I:1,2");
    const auto quarter = selberg_bound(Partition({2}), BundleSpec::cotangent(d12), d12);
    CHECK(quarter.classification == Classification::Convergent);
    CHECK(quarter.value == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("Selberg bound against Beta integrals and the minor criterion") {
    for (int q = 1; q <= 3; ++q) {
        const auto d = build_root_data(HermitianType::type_i(1, q));
        const int b = d.constants.b;
        for (int k = -4; k <= 4; ++k)
            for (int m = 0; m <= 5; ++m) {
                const BundleSpec bundle = BundleSpec::line(k, d);
                const auto v = selberg_bound(Partition({m}), bundle, d);
                CHECK((v.classification == Classification::Convergent) == minor_l2_condition(Partition({m}), bundle, d));
                if (m + k >= 0) CHECK(v.value == doctest::Approx(oracle::beta_integer(m + b + 1, m + k + 1)).epsilon(1e-12));
            }
    }
    for (const std::string s : {"I:2,2", "I:2,3", "II:4", "II:5", "III:2", "III:3", "IV:5", "EIII", "EVII"}) {
        const auto d = rd(s);
        std::vector<BundleSpec> bundles{BundleSpec::cotangent(d)};
        for (int k = -4; k <= 4; ++k) bundles.push_back(BundleSpec::line(k, d));
        for (const auto& bundle : bundles)
            for (const auto& part : Partition::enumerate(d.gammas.size(), 4)) {
                CAPTURE(s);
                CHECK((selberg_bound(part, bundle, d).classification == Classification::Convergent) ==
                      minor_l2_condition(part, bundle, d));
            }
    }
}

TEST_CASE("Selberg closed form against direct quadrature at rank two") {
    for (const std::string s : {"I:2,2", "I:2,3", "II:4", "II:5", "III:2"}) {
        const auto d = rd(s);
        for (int k = 0; k <= 2; ++k)
            for (const auto& part : Partition::enumerate(2, 3)) {
                const BundleSpec bundle = BundleSpec::line(k, d);
                const auto v = selberg_bound(part, bundle, d);
                REQUIRE(v.classification == Classification::Convergent);
                CAPTURE(s);
                CAPTURE(part.to_string());
                CHECK(selberg_quadrature(part, bundle, d, 64) == doctest::Approx(v.value).epsilon(1e-10));
            }
    }
}

TEST_CASE("polar quadrature examples") {
    QuadratureSpec spec;
    const MatrixModel m11 = model_of("I:1,1");
    const auto vol = polar_integrate([](const std::vector<double>& t) { return std::pow(1 + t[0] * t[0], -2.0); }, m11, spec);
    CHECK(vol.classification == Classification::Convergent);
    CHECK(vol.value == doctest::Approx(kPi).epsilon(1e-3));
    const auto flat = polar_integrate([](const std::vector<double>&) { return 1.0; }, m11, spec);
    CHECK(flat.classification == Classification::Divergent);
    CHECK(flat.infinite);
    CHECK(flat.slope > 0.0);

    // volume of CP^n in the Fubini-Study normalization is pi^n / n!
    for (int n = 1; n <= 3; ++n) {
        const MatrixModel m = MatrixModel(HermitianType::type_i(1, n));
        const auto v = polar_integrate([n](const std::vector<double>& t) { return std::pow(1 + t[0] * t[0], -(n + 1.0)); },
                                       m, spec);
        CHECK(v.value == doctest::Approx(std::pow(kPi, n) / std::tgamma(n + 1.0)).epsilon(1e-9));
    }

    // exp(-|z|^2) integrates to pi^n on every model
    for (const std::string s : {"I:1,2", "I:2,2", "I:2,3", "II:4", "III:2"}) {
        const MatrixModel m = model_of(s);
        const double f2 = m.frame(0).value.squaredNorm();
        const auto g = polar_integrate([f2](const std::vector<double>& t) {
            double e = 0.0;
            for (double x : t) e += f2 * x * x;
            return std::exp(-e);
        }, m, spec);
        CAPTURE(s);
        CHECK(g.value == doctest::Approx(std::pow(kPi, m.dim())).epsilon(1e-6));
    }

    // I(2,2): volume pi^4/12 from the polar weight, and from Monte Carlo within 3 sigma
    const MatrixModel m22 = model_of("I:2,2");
    const auto vol22 = polar_integrate([](const std::vector<double>& t) {
        return std::pow((1 + t[0] * t[0]) * (1 + t[1] * t[1]), -4.0);
    }, m22, spec);
    CHECK(vol22.value == doctest::Approx(std::pow(kPi, 4) / 12).epsilon(1e-3));
    QuadratureSpec mc;
    mc.scheme = Scheme::MonteCarlo;
    const auto est = norm_probe(m22, BundleSpec::line(0, rd("I:2,2")), PolyMap::scalar(1.0), mc);
    CHECK(std::abs(est.value - vol22.value) <= 3 * est.stderr_);

    CHECK_THROWS_AS(polar_integrate([](const std::vector<double>&) { return 1.0; }, model_of("I:3,3"), spec),
                    UnsupportedError);
}

TEST_CASE("polar constant") {
    CHECK(polar_constant(model_of("I:1,1")) == doctest::Approx(2 * kPi).epsilon(1e-12));
    for (const std::string s : {"I:1,1", "I:2,2", "II:5", "III:3"}) CHECK(polar_constant(model_of(s)) > 0.0);
}

TEST_CASE("ladder classification on synthetic sequences") {
    const auto radii = pow_ladder();
    std::vector<double> conv, logd, poly, slow;
    double acc = 0.0;
    for (double r : radii) {
        conv.push_back(2.0 * (1.0 - 1.0 / (r * r)));
        logd.push_back(std::log1p(r));
        poly.push_back(r * r);
        acc += 1.0 / std::sqrt(r);
        slow.push_back(acc);
    }
    const auto c = classify_ladder(radii, conv, 1e-3);
    CHECK(c.classification == Classification::Convergent);
    CHECK(c.value == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(classify_ladder(radii, logd, 1e-3).classification == Classification::Divergent);
    const auto p = classify_ladder(radii, poly, 1e-3);
    CHECK(p.classification == Classification::Divergent);
    CHECK(p.slope == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(classify_ladder(radii, slow, 1e-3).classification == Classification::Inconclusive);
    const std::vector<double> settled(radii.size(), 5.0);
    CHECK(classify_ladder(radii, settled, 1e-3).classification == Classification::Convergent);
    std::vector<double> shrinking;
    for (std::size_t i = 0; i < radii.size(); ++i) shrinking.push_back(20.0 - static_cast<double>(i));
    CHECK(classify_ladder(radii, shrinking, 1e-3).classification == Classification::Inconclusive);
}

TEST_CASE("norm probes on the projective line") {
    const MatrixModel m = model_of("I:1,1");
    const auto d = rd("I:1,1");
    const BundleSpec cot = BundleSpec::cotangent(d);
    QuadratureSpec spec;
    const auto d1 = norm_probe(m, cot, section(m, cot, Partition({1})), spec);
    CHECK(d1.classification == Classification::Divergent);
    for (int k = 2; k <= 4; ++k) {
        const auto v = norm_probe(m, cot, section(m, cot, Partition({k})), spec);
        CHECK(v.classification == Classification::Convergent);
        CHECK(v.value == doctest::Approx(kPi * oracle::beta_integer(k + 1, k - 1)).epsilon(1e-3));
    }
    const auto mass = norm_probe(m, BundleSpec::line(0, d), PolyMap::scalar(1.0), spec);
    CHECK(mass.classification == Classification::Convergent);
    CHECK(mass.value == doctest::Approx(kPi).epsilon(1e-3));

    QuadratureSpec mc;
    mc.scheme = Scheme::MonteCarlo;
    const auto mmc = norm_probe(m, BundleSpec::line(0, d), PolyMap::scalar(1.0), mc);
    CHECK(std::abs(mmc.value - kPi) <= 3 * mmc.stderr_ + 1e-12);
    CHECK(norm_probe(m, cot, section(m, cot, Partition({1})), mc).classification == Classification::Divergent);
    CHECK(norm_probe(m, cot, section(m, cot, Partition({2})), mc).classification == Classification::Convergent);
}

TEST_CASE("probe soundness on rank one") {
    for (const std::string s : {"I:1,1", "I:1,2"}) {
        const MatrixModel m = model_of(s);
        const auto d = rd(s);
        QuadratureSpec spec;
        std::vector<BundleSpec> bundles{BundleSpec::cotangent(d)};
        for (int k = -2; k <= 2; ++k) bundles.push_back(BundleSpec::line(k, d));
        for (const auto& b : bundles)
            for (int mm = 0; mm <= 5; ++mm) {
                const Partition part({mm});
                const auto v = norm_probe(m, b, section(m, b, part), spec);
                const auto want = minor_l2_condition(part, b, d) ? Classification::Convergent : Classification::Divergent;
                CAPTURE(s);
                CAPTURE(b.to_string());
                CAPTURE(mm);
                CHECK(v.classification == want);
            }
    }
}

TEST_CASE("degree rule for convergent probes") {
    for (const std::string s : {"I:1,1", "I:1,2"}) {
        const MatrixModel m = model_of(s);
        const auto d = rd(s);
        for (int k = -2; k <= 2; ++k) {
            const BundleSpec b = BundleSpec::line(k, d);
            for (int mm = 0; mm <= 4; ++mm) {
                const Partition part({mm});
                const PolyMap p = section(m, b, part);
                if (norm_probe(m, b, p, {}).classification != Classification::Convergent) continue;
                CHECK(degree_l2_necessary(gamma_weight(part, d) + b.mu, diagonal_degrees(m, p), d));
            }
        }
    }
}

TEST_CASE("Monte Carlo determinism") {
    const MatrixModel m = model_of("I:2,2");
    const auto d = rd("I:2,2");
    QuadratureSpec mc;
    mc.scheme = Scheme::MonteCarlo;
    mc.samples = 20000;
    mc.seed = 99;
    const PolyMap p = minor_poly(m, Partition({1, 1}));
    setenv("NEARHOL_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    const auto a = norm_probe(m, BundleSpec::line(1, d), p, mc);
    setenv("NEARHOL_THREADS", "4", 1);
    CHECK(worker_count() == 4);
    const auto b = norm_probe(m, BundleSpec::line(1, d), p, mc);
    const auto c = norm_probe(m, BundleSpec::line(1, d), p, mc);
    unsetenv("NEARHOL_THREADS");
    CHECK(a.value == b.value);
    CHECK(a.stderr_ == b.stderr_);
    CHECK(a.ladder == b.ladder);
    CHECK(b.ladder == c.ladder);
    mc.seed = 100;
    CHECK(norm_probe(m, BundleSpec::line(1, d), p, mc).value != a.value);
    CHECK(worker_count() >= 1);
}
