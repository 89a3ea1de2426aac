#include "nearhol/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace nearhol {

namespace {

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double rel_err(const cmat& a, const cmat& b) { return (a - b).norm() / std::max(b.norm(), 1e-300); }

Check make_check(std::string name, double threshold) {
    Check c;
    c.name = std::move(name);
    c.threshold = threshold;
    return c;
}

void record(Check& c, double residual) {
    c.residual = std::max(c.residual, residual);
    ++c.samples;
}

cmat random_unit_fiber(const MatrixModel& model, const BundleSpec& bundle, Rng& rng) {
    cmat v;
    if (bundle.kind == BundleKind::LineBundle) {
        v = cmat::Constant(1, 1, std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform()));
    } else {
        v = model.random(Side::Minus, rng).value;
        v /= std::sqrt(fiber_norm2(v));
    }
    return v;
}

std::string fixed(double x, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

} // namespace

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

double VerifyReport::max_residual() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::max(m, c.residual);
    return m;
}

std::vector<Check> jordan_suite(const HermitianType& type, std::uint64_t seed, const VerifyOptions& opts) {
    const MatrixModel model(type);
    const auto& consts = model.constants();
    Rng rng(seed);
    std::vector<Check> out;

    Check det = make_check("det_bergman_genus", 1e-8);
    Check fund = make_check("fundamental_identity", 1e-8);
    Check polar = make_check("polar_determinant", 1e-8);
    Check qinv = make_check("qmap_quasi_inverse", 1e-10);
    for (int s = 0; s < opts.identity_samples; ++s) {
        const JordanPoint x = model.random(Side::Plus, rng, 0.5);
        const JordanPoint y = model.random(Side::Minus, rng, 0.5);
        record(det, rel_err(bergman(model, x, y).determinant(), std::pow(delta(model, x, y), consts.g)));
        const JordanPoint u = model.random(Side::Minus, rng);
        const cmat a = quadratic(quadratic(x, y), u).value;
        const cmat b = quadratic(x, quadratic(y, quadratic(x, u))).value;
        record(fund, rel_err(a, b));
        const JordanPoint z = model.random(Side::Plus, rng);
        const auto pd = polar_decompose(model, z);
        double prod = 1.0;
        for (double t : pd.t) prod *= 1.0 + t * t;
        record(polar, rel_err(delta(model, z, {-z.value.adjoint(), Side::Minus}), cplx(prod)));
        const JordanPoint zb = model.conj(z);
        const JordanPoint minus_z{-z.value, Side::Plus};
        record(qinv, rel_err(qmap(model, z).value, quasi_inverse(model, zb, minus_z).value));
    }
    out.push_back(det);
    out.push_back(fund);
    out.push_back(polar);
    out.push_back(qinv);

    Check qm = make_check("qmap_identities", 1e-6);
    for (int s = 0; s < opts.qmap_samples; ++s) {
        const JordanPoint z = model.random(Side::Plus, rng, 0.5);
        const JordanPoint v = model.random(Side::Plus, rng, 0.5);
        const JordanPoint w = model.random(Side::Minus, rng, 0.5);
        const LieElement T = model.random_l(rng);
        record(qm, verify_qmap_identities(model, z, v, T, w).max());
    }
    out.push_back(qm);

    Check minors = make_check("minor_diagonal_degrees", 0.0);
    for (const auto& m : Partition::enumerate(static_cast<std::size_t>(consts.r), 3)) {
        const auto degs = diagonal_degrees(model, minor_poly(model, m));
        record(minors, degs == m.parts() ? 0.0 : 1.0);
    }
    out.push_back(minors);

    // Two-sided bound Delta^{-mu(H_gamma_1)} <= |rho(B^{-1/2}) v|^2 <= Delta^{-mu(H_alpha_1)}.
    const RootSystemData data = build_root_data(type);
    std::vector<BundleSpec> bundles{BundleSpec::cotangent(data)};
    for (int k = -2; k <= 2; ++k) bundles.push_back(BundleSpec::line(k, data));
    for (const auto& bundle : bundles) {
        Check bound = make_check("bergman_bound[" + bundle.to_string() + "]", 0.0);
        bound.note = "violations beyond 1e-10 relative slack";
        const double lo_exp = -coroot_pairing(bundle.mu, data.gammas.front()).to_double();
        const double hi_exp = -static_cast<double>(bundle.alpha1_pairing(data));
        for (int s = 0; s < opts.bound_samples; ++s) {
            const JordanPoint z = model.random(Side::Plus, rng, 1.5);
            const cmat v = random_unit_fiber(model, bundle, rng);
            const double val = fiber_norm2(bergman_bundle_action(model, bundle, z, v));
            const double d = delta(model, z, {-z.value.adjoint(), Side::Minus}).real();
            const double lo = std::pow(d, lo_exp), hi = std::pow(d, hi_exp);
            const bool bad = val < lo * (1.0 - 1e-10) || val > hi * (1.0 + 1e-10);
            bound.residual += bad ? 1.0 : 0.0;
            ++bound.samples;
        }
        out.push_back(bound);
    }
    return out;
}

std::vector<Check> integrals_suite(const HermitianType& type, std::uint64_t seed, const VerifyOptions& opts) {
    const MatrixModel model(type);
    const RootSystemData data = build_root_data(type);
    const auto& c = data.constants;
    std::vector<Check> out;

    Check equiv = make_check("selberg_minor_equivalence", 0.0);
    equiv.note = "disagreements over k in [-4,4], |m| <= 4";
    for (int k = -4; k <= 4; ++k) {
        const BundleSpec bundle = BundleSpec::line(k, data);
        for (const auto& m : Partition::enumerate(static_cast<std::size_t>(c.r), 4)) {
            const bool conv = selberg_bound(m, bundle, data).classification == Classification::Convergent;
            equiv.residual += conv != minor_l2_condition(m, bundle, data) ? 1.0 : 0.0;
            ++equiv.samples;
        }
    }
    const BundleSpec cot = BundleSpec::cotangent(data);
    for (const auto& m : Partition::enumerate(static_cast<std::size_t>(c.r), 4)) {
        const bool conv = selberg_bound(m, cot, data).classification == Classification::Convergent;
        equiv.residual += conv != minor_l2_condition(m, cot, data) ? 1.0 : 0.0;
        ++equiv.samples;
    }
    out.push_back(equiv);

    if (c.r > 2) {
        Check skip = make_check("selberg_closed_form", 0.0);
        skip.note = "rank > 2: closed form only, no direct quadrature";
        out.push_back(skip);
        return out;
    }

    Check closed = make_check("selberg_closed_form", 1e-10);
    for (int k = -2; k <= 3; ++k) {
        const BundleSpec bundle = BundleSpec::line(k, data);
        for (const auto& m : Partition::enumerate(static_cast<std::size_t>(c.r), 4)) {
            const auto v = selberg_bound(m, bundle, data);
            if (v.classification != Classification::Convergent) continue;
            record(closed, std::abs(v.value - selberg_quadrature(m, bundle, data, 64)) / v.value);
        }
    }
    out.push_back(closed);

    // Total mass of the trivial bundle: c_X 2^{-r} S_r(b+1, 1, a/2).
    QuadratureSpec spec;
    spec.seed = seed;
    const double g = c.g;
    const auto radial = [g](const std::vector<double>& t) {
        double p = 1.0;
        for (double s : t) p *= 1.0 + s * s;
        return std::pow(p, -g);
    };
    const auto quad = polar_integrate(radial, model, spec);
    const double exact = polar_constant(model) * std::ldexp(1.0, -c.r) * selberg_integral(c.r, c.b + 1.0, 1.0, 0.5 * c.a);
    Check mass = make_check("trivial_mass_quadrature", 1e-3);
    record(mass, std::abs(quad.value - exact) / exact);
    mass.note = "value " + fixed(quad.value) + ", closed form " + fixed(exact);
    if (type.family == Family::TypeI && type.p == 1 && type.q == 1)
        mass.note += ", pi " + fixed(std::numbers::pi);
    out.push_back(mass);

    // Independent calibration of c_X: int exp(-|z|^2) / Delta(z,-zbar) dlambda equals
    // pi^n E[1/Delta] under the standard complex Gaussian, and c_X times the polar integral.
    Check cx = make_check("polar_constant_gaussian", 3.0);
    {
        Rng rng(Rng::stream_seed(seed, 17));
        const int samples = 100000;
        double sum = 0.0, sum2 = 0.0;
        for (int s = 0; s < samples; ++s) {
            const JordanPoint z = model.random(Side::Plus, rng);
            const double d = 1.0 / delta(model, z, {-z.value.adjoint(), Side::Minus}).real();
            sum += d;
            sum2 += d * d;
        }
        const double scale = std::pow(std::numbers::pi, c.n);
        const double mean = scale * sum / samples;
        const double err = scale * std::sqrt(std::max(0.0, sum2 / samples - (sum / samples) * (sum / samples)) / samples);
        const double f2 = model.frame(0).value.squaredNorm();
        const auto gauss = [f2](const std::vector<double>& t) {
            double e = 0.0, p = 1.0;
            for (double x : t) {
                e += f2 * x * x;
                p *= 1.0 + x * x;
            }
            return std::exp(-e) / p;
        };
        const auto polar = polar_integrate(gauss, model, spec);
        cx.samples = samples;
        cx.residual = std::abs(polar.value - mean) / err;
        cx.note = "deviation in standard errors; polar " + fixed(polar.value) + ", Monte Carlo " + fixed(mean) + " +- " + fixed(err);
    }
    out.push_back(cx);

    QuadratureSpec mc = spec;
    mc.scheme = Scheme::MonteCarlo;
    const BundleSpec trivial = BundleSpec::line(0, data);
    const auto est = norm_probe(model, trivial, PolyMap::scalar(1.0), mc);
    Check mcc = make_check("trivial_mass_monte_carlo", 3.0);
    mcc.samples = static_cast<int>(mc.samples);
    mcc.residual = std::abs(est.value - exact) / std::max(est.stderr_, 1e-12 * exact);
    mcc.note = "deviation in standard errors; value " + fixed(est.value) + " +- " + fixed(est.stderr_);
    out.push_back(mcc);

    if (c.r == 1) {
        Check probe = make_check("rank_one_probe_classification", 0.0);
        probe.note = "mismatches against m_r + mu(H_alpha_1) >= 0";
        std::vector<BundleSpec> bundles{cot};
        for (int k = -2; k <= 2; ++k) bundles.push_back(BundleSpec::line(k, data));
        for (const auto& bundle : bundles) {
            for (int m = 0; m <= 3; ++m) {
                const Partition pm({m});
                const PolyMap p = minor_poly(model, pm) * PolyMap::constant(highest_fiber_vector(model, bundle));
                const auto v = norm_probe(model, bundle, p, spec);
                const auto want = minor_l2_condition(pm, bundle, data) ? Classification::Convergent
                                                                       : Classification::Divergent;
                probe.residual += v.classification != want ? 1.0 : 0.0;
                ++probe.samples;
            }
        }
        out.push_back(probe);
    }
    (void)opts;
    return out;
}

std::vector<Check> decomp_suite(const HermitianType& type, const VerifyOptions& opts) {
    const RootSystemData data = build_root_data(type);
    const auto& c = data.constants;
    const bool exceptional = type.family == Family::TypeEIII || type.family == Family::TypeEVII;
    const int cutoff = exceptional ? std::min(opts.cutoff, 2) : opts.cutoff;
    std::vector<Check> out;

    Check sc = make_check("structure_constants", 0.0);
    const auto measured = structure_constants(data);
    record(sc, (measured == type.expected_constants() && measured.g == 2 + measured.a * (measured.r - 1) + measured.b) ? 0.0 : 1.0);
    out.push_back(sc);

    Check ineq = make_check("weight_inequalities", 0.0);
    record(ineq, verify_weight_inequalities(BundleSpec::cotangent(data).mu, data) ? 0.0 : 1.0);
    for (int k = -2; k <= 2; ++k) record(ineq, verify_weight_inequalities(BundleSpec::line(k, data).mu, data) ? 0.0 : 1.0);
    out.push_back(ineq);

    Check mf = make_check("line_spectrum_multiplicity_free", 0.0);
    Check module = make_check("line_spectrum_module_property", 0.0);
    Check subset = make_check("line_support_matches_spectrum", 0.0);
    Check sk = make_check("schlichtkrull_parameters", 0.0);
    Check bw = make_check("borel_weil_consistency", 0.0);
    for (int k = -2; k <= 2; ++k) {
        const auto table = line_bundle_spectrum(k, cutoff, data);
        std::set<Weight> seen;
        for (const auto& e : table.entries) {
            record(mf, (seen.insert(e.lambda).second && e.multiplicity == 1) ? 0.0 : 1.0);
            try {
                schlichtkrull_params(e.lambda, k, data);
                record(sk, 0.0);
            } catch (const std::exception&) {
                record(sk, 1.0);
            }
        }
        for (const auto& e : table.entries) {
            if (!e.origin_m) continue;
            for (std::size_t i = 0; i < data.gammas.size(); ++i) {
                std::vector<int> parts = e.origin_m->parts();
                // lambda + gamma_1 + ... + gamma_{i+1} stays a signature
                for (std::size_t j = 0; j <= i; ++j) ++parts[j];
                const Partition up(parts);
                if (up.total() > cutoff) continue;
                const Weight target = gamma_weight(up, data) + table.bundle.mu;
                record(module, seen.count(target) ? 0.0 : 1.0);
            }
        }
        const auto support = spectrum_support(BundleSpec::line(k, data), cutoff, data);
        std::set<Weight> in_l2;
        for (const auto& e : support.entries)
            if (e.l2_status == L2Status::InL2) in_l2.insert(e.lambda);
            else if (e.l2_status == L2Status::Undecided) record(subset, 1.0);
        record(subset, in_l2 == seen ? 0.0 : 1.0);
        bool zero_in = false;
        for (const auto& e : support.entries)
            if (e.origin_m && e.origin_m->total() == 0 && e.lambda == table.bundle.mu)
                zero_in = e.l2_status == L2Status::InL2;
        record(bw, zero_in == borel_weil(table.bundle, data) ? 0.0 : 1.0);
    }
    out.push_back(mf);
    out.push_back(module);
    out.push_back(subset);
    out.push_back(sk);

    Check chain = make_check("cotangent_bound_chain", 0.0);
    chain.note = "lower bound <= multiplicity <= min(M, dim E)";
    const BundleSpec cot = BundleSpec::cotangent(data);
    const auto support = spectrum_support(cot, cutoff, data);
    for (const auto& e : support.entries) {
        const int M = cotangent_multiplicity(e.lambda, cutoff, data);
        const bool ok = e.lower_bound <= e.multiplicity && e.multiplicity <= std::min(M, c.n) &&
                        (!e.exact || e.lower_bound == e.multiplicity);
        record(chain, ok ? 0.0 : 1.0);
    }
    out.push_back(chain);
    bool zero_in = false;
    for (const auto& e : support.entries)
        if (e.lambda == cot.mu) zero_in = e.l2_status == L2Status::InL2;
    record(bw, zero_in == borel_weil(cot, data) ? 0.0 : 1.0);
    out.push_back(bw);
    return out;
}

VerifyReport run_verify(const HermitianType& type, const std::string& suite, std::uint64_t seed,
                        const VerifyOptions& opts) {
    if (suite != "jordan" && suite != "integrals" && suite != "decomp" && suite != "all")
        throw ParameterError("unknown suite '" + suite + "' (expected jordan, integrals, decomp or all)");
    VerifyReport report;
    report.space = type.to_string();
    report.suite = suite;
    report.seed = seed;
    const bool classical = type.family == Family::TypeI || type.family == Family::TypeII || type.family == Family::TypeIII;
    auto append = [&](std::vector<Check> checks, const std::string& prefix) {
        for (auto& ch : checks) {
            ch.name = prefix + "." + ch.name;
            report.checks.push_back(std::move(ch));
        }
    };
    for (const std::string s : {"jordan", "integrals", "decomp"}) {
        if (suite != "all" && suite != s) continue;
        if (s != "decomp" && !classical) {
            if (suite != "all") throw UnsupportedError("no matrix model for " + type.to_string());
            report.skipped.push_back(s);
            continue;
        }
        if (s == "jordan") append(jordan_suite(type, seed, opts), s);
        else if (s == "integrals") append(integrals_suite(type, seed, opts), s);
        else append(decomp_suite(type, opts), s);
    }
    return report;
}

} // namespace nearhol
