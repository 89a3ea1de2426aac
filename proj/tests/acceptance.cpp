// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "nearhol/cli.hpp"
#include "nearhol/integrals.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace nearhol;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

const std::vector<std::string> kIdentityFamilies{"I:1,1", "I:2,2", "I:2,3", "II:4", "III:2", "III:3"};

JordanPoint minus_conj(const JordanPoint& z) { return {-z.value.adjoint(), Side::Minus}; }

// Criteria 1 and 2 share their samples.
std::pair<Outcome, Outcome> identities() {
    const auto t0 = Clock::now();
    double det_worst = 0.0, fund_worst = 0.0, polar_worst = 0.0;
    for (const auto& s : kIdentityFamilies) {
        const MatrixModel m(HermitianType::parse(s));
        Rng rng(Rng::stream_seed(2024, std::hash<std::string>{}(s) % 1000));
        for (int i = 0; i < 200; ++i) {
            const JordanPoint x = m.random(Side::Plus, rng, 0.5), y = m.random(Side::Minus, rng, 0.5);
            const cplx want = std::pow(delta(m, x, y), m.constants().g);
            det_worst = std::max(det_worst, std::abs(bergman(m, x, y).determinant() - want) / std::abs(want));
            const JordanPoint u = m.random(Side::Minus, rng);
            const cmat lhs = quadratic(quadratic(x, y), u).value;
            const cmat rhs = quadratic(x, quadratic(y, quadratic(x, u))).value;
            fund_worst = std::max(fund_worst, (lhs - rhs).norm() / std::max(rhs.norm(), 1e-300));
            const JordanPoint z = m.random(Side::Plus, rng);
            const auto pd = polar_decompose(m, z);
            double prod = 1.0;
            for (double t : pd.t) prod *= 1.0 + t * t;
            polar_worst = std::max(polar_worst, std::abs(delta(m, z, minus_conj(z)) - prod) / prod);
        }
    }
    const double secs = seconds_since(t0);
    Outcome a, b;
    a.pass = det_worst <= 1e-8 && fund_worst <= 1e-8 && secs < 10.0;
    a.detail = "det " + sci(det_worst) + ", fundamental " + sci(fund_worst) + ", " + sci(secs) + " s";
    b.pass = polar_worst <= 1e-8;
    b.detail = "max relative residual " + sci(polar_worst);
    return {a, b};
}

Outcome qmap_identities() {
    double worst = 0.0;
    for (const auto& s : kIdentityFamilies) {
        const MatrixModel m(HermitianType::parse(s));
        Rng rng(77);
        for (int i = 0; i < 50; ++i) {
            const JordanPoint z = m.random(Side::Plus, rng, 0.5), v = m.random(Side::Plus, rng, 0.5);
            const JordanPoint w = m.random(Side::Minus, rng, 0.5);
            worst = std::max(worst, verify_qmap_identities(m, z, v, m.random_l(rng), w).max());
        }
    }
    return {worst <= 1e-6, "max residual " + sci(worst)};
}

Outcome bergman_bound() {
    const auto type = HermitianType::type_i(2, 2);
    const MatrixModel m(type);
    const auto data = build_root_data(type);
    std::vector<BundleSpec> bundles{BundleSpec::cotangent(data)};
    for (int k = -3; k <= 3; ++k) bundles.push_back(BundleSpec::line(k, data));
    Rng rng(404);
    int violations = 0, points = 0;
    for (const auto& b : bundles) {
        const double lo_exp = -coroot_pairing(b.mu, data.gammas.front()).to_double();
        const double hi_exp = -static_cast<double>(b.alpha1_pairing(data));
        for (int i = 0; i < 1000; ++i) {
            const JordanPoint z = m.random(Side::Plus, rng, 1.5);
            cmat v;
            if (b.kind == BundleKind::Cotangent) {
                v = m.random(Side::Minus, rng).value;
                v /= std::sqrt(fiber_norm2(v));
            } else {
                v = cmat::Ones(1, 1);
            }
            const double n2 = fiber_norm2(bergman_bundle_action(m, b, z, v));
            const double d = delta(m, z, minus_conj(z)).real();
            if (n2 < std::pow(d, lo_exp) * (1 - 1e-10) || n2 > std::pow(d, hi_exp) * (1 + 1e-10)) ++violations;
            ++points;
        }
    }
    return {violations == 0, std::to_string(violations) + " violations at " + std::to_string(points) + " points"};
}

Outcome selberg_equivalence() {
    int disagreements = 0, cases = 0;
    for (const std::string s : {"I:1,1", "I:1,2", "I:1,3", "I:2,2", "I:2,3", "I:2,4", "II:4", "II:5", "III:2", "IV:5",
                          "IV:6", "EIII"}) {
        const auto d = build_root_data(HermitianType::parse(s));
        if (d.constants.r > 2) continue;
        for (int k = -4; k <= 4; ++k) {
            const BundleSpec b = BundleSpec::line(k, d);
            for (const auto& m : Partition::enumerate(d.gammas.size(), 4)) {
                const bool conv = selberg_bound(m, b, d).classification == Classification::Convergent;
                // the decided rule, written out
                const bool rule = m.last() + k >= 0;
                if (conv != rule) ++disagreements;
                ++cases;
            }
        }
    }
    return {disagreements == 0, std::to_string(disagreements) + " disagreements in " + std::to_string(cases) + " cases"};
}

Outcome projective_line() {
    const auto t0 = Clock::now();
    const auto type = HermitianType::type_i(1, 1);
    const MatrixModel m(type);
    const auto d = build_root_data(type);
    const double pi = std::numbers::pi;
    QuadratureSpec quad;
    const auto mass = norm_probe(m, BundleSpec::line(0, d), PolyMap::scalar(1.0), quad);
    QuadratureSpec mc;
    mc.scheme = Scheme::MonteCarlo;
    mc.samples = 100000;
    const auto mass_mc = norm_probe(m, BundleSpec::line(0, d), PolyMap::scalar(1.0), mc);
    const BundleSpec cot = BundleSpec::cotangent(d);
    const cmat v = highest_fiber_vector(m, cot);
    const auto m1 = norm_probe(m, cot, minor_poly(m, Partition({1})) * PolyMap::constant(v), quad);
    const auto m2 = norm_probe(m, cot, minor_poly(m, Partition({2})) * PolyMap::constant(v), quad);
    const double secs = seconds_since(t0);
    const double qerr = std::abs(mass.value - pi) / pi;
    const double sigmas = std::abs(mass_mc.value - pi) / std::max(mass_mc.stderr_, 1e-12 * pi);
    Outcome o;
    o.pass = qerr <= 1e-3 && sigmas <= 3.0 && m1.classification == Classification::Divergent &&
             m2.classification == Classification::Convergent && secs < 60.0;
    o.detail = "quadrature rel err " + sci(qerr) + ", Monte Carlo " + sci(sigmas) + " sigma, m=1 " +
               to_string(m1.classification) + ", m=2 " + to_string(m2.classification) + ", " + sci(secs) + " s";
    return o;
}

Outcome line_spectra() {
    int mismatches = 0, checked = 0;
    for (int q = 1; q <= 2; ++q) {
        const auto d = build_root_data(HermitianType::type_i(1, q));
        for (int k = -4; k <= 4; ++k) {
            const auto table = line_bundle_spectrum(k, 4, d);
            std::map<Weight, int> got;
            for (const auto& e : table.entries) got[e.lambda] += e.multiplicity;
            if (got != oracle::frobenius_line_spectrum(q, k, 4)) ++mismatches;
            for (const auto& e : table.entries) {
                const auto s = schlichtkrull_params(e.lambda, k, d);
                const auto& m = e.origin_m->parts();
                const std::size_t r = m.size();
                for (std::size_t i = 0; i < r; ++i) {
                    if (s[i] != 2 * m[r - 1 - i] + k) ++mismatches;
                    if ((s[i] - k) % 2 != 0) ++mismatches;
                    if (i > 0 && s[i] < s[i - 1]) ++mismatches;
                }
                if (s.front() < std::abs(k)) ++mismatches;
                ++checked;
            }
        }
    }
    return {mismatches == 0, std::to_string(mismatches) + " mismatches over " + std::to_string(checked) + " U-types"};
}

Outcome cotangent_decomposition() {
    const auto type = HermitianType::type_i(2, 2);
    const auto d = build_root_data(type);
    int mismatches = 0, checked = 0;
    std::map<Weight, int> witnesses;
    for (const auto& m : Partition::enumerate(2, 4)) {
        const auto gm = oracle::to_int_weight(gamma_weight(m, d), Rational(0));
        for (const auto& [w, c] : oracle::cotangent_ktypes(gm, 2, 2)) witnesses[oracle::from_int_weight(w)] += static_cast<int>(c);
    }
    for (const auto& m : Partition::enumerate(2, 3)) {
        const auto gm = oracle::to_int_weight(gamma_weight(m, d), Rational(0));
        std::map<Weight, long long> want, got;
        for (const auto& [w, c] : oracle::cotangent_ktypes(gm, 2, 2)) want[oracle::from_int_weight(w)] = c;
        for (const auto& l : cotangent_tensor_ktypes(m, d)) got[l] += 1;
        if (got != want) ++mismatches;
        for (const auto& [l, c] : got) {
            const int M = cotangent_multiplicity(l, 4, d);
            if (M != witnesses[l]) ++mismatches;
            if (const auto g = as_gamma_weight(l, d)) {
                int descents = 1;
                for (std::size_t i = 1; i < g->size(); ++i) descents += (*g)[i - 1] > (*g)[i] ? 1 : 0;
                if (M != descents) ++mismatches;
            }
            ++checked;
        }
    }
    Outcome o;
    o.pass = mismatches == 0 && d.simply_laced();
    o.detail = std::to_string(mismatches) + " mismatches over " + std::to_string(checked) + " K-types";
    return o;
}

Outcome degree_necessity() {
    int violations = 0, convergent = 0;
    for (const std::string s : {"I:1,1", "I:1,2"}) {
        const auto type = HermitianType::parse(s);
        const MatrixModel m(type);
        const auto d = build_root_data(type);
        std::vector<BundleSpec> bundles{BundleSpec::cotangent(d)};
        for (int k = -4; k <= 4; ++k) bundles.push_back(BundleSpec::line(k, d));
        for (const auto& b : bundles)
            for (int mm = 0; mm <= 4; ++mm) {
                const Partition part({mm});
                const PolyMap p = minor_poly(m, part) * PolyMap::constant(highest_fiber_vector(m, b));
                if (norm_probe(m, b, p, {}).classification != Classification::Convergent) continue;
                ++convergent;
                const auto degs = diagonal_degrees(m, p);
                const Weight lambda = gamma_weight(part, d) + b.mu;
                for (std::size_t i = 0; i < degs.size(); ++i)
                    if (Rational(degs[i]) > coroot_pairing(lambda, d.gammas[i])) ++violations;
            }
    }
    return {violations == 0, std::to_string(violations) + " violations among " + std::to_string(convergent) +
                                 " convergent vectors"};
}

Outcome determinism() {
    auto capture = [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return std::to_string(code) + "\n" + out.str();
    };
    const std::vector<std::string> spectrum{"spectrum", "--space", "I:2,2", "--bundle", "cotangent", "--cutoff", "4",
                                            "--output", "json"};
    const std::vector<std::string> verify{"verify", "--space", "I:2,2", "--suite", "all", "--seed", "7", "--output",
                                          "json"};
    const bool same_spectrum = capture(spectrum) == capture(spectrum);
    const bool same_verify = capture(verify) == capture(verify);
    return {same_spectrum && same_verify, std::string("spectrum ") + (same_spectrum ? "identical" : "differs") +
                                              ", verify " + (same_verify ? "identical" : "differs")};
}

} // namespace

int main() {
    std::vector<std::pair<std::string, Outcome>> results;
    const auto [c1, c2] = identities();
    results.emplace_back("Jordan identity suite", c1);
    results.emplace_back("polar determinant identity", c2);
    results.emplace_back("q-map identities", qmap_identities());
    results.emplace_back("Bergman bound on I(2,2)", bergman_bound());
    results.emplace_back("Selberg/minor equivalence", selberg_equivalence());
    results.emplace_back("projective line baseline", projective_line());
    results.emplace_back("line bundle spectra", line_spectra());
    results.emplace_back("cotangent decomposition of I(2,2)", cotangent_decomposition());
    results.emplace_back("degree necessity", degree_necessity());
    results.emplace_back("determinism", determinism());
    int failed = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& [name, o] = results[i];
        std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << name << " (" << o.detail
                  << ")\n";
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
