#include "nearhol/cli.hpp"

#include "nearhol/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>

namespace nearhol {

namespace {

struct JobConfig {
    std::string space;
    std::string bundle = "line:0";
    int cutoff = 4;
    std::string output = "md";
    std::uint64_t seed = 1;
    std::string suite = "all";
    std::string scheme = "quadrature";
    int nodes = 96;
    long long samples = 100000;
    int k_samples = 32;
};

QuadratureSpec quadrature(const JobConfig& cfg) {
    QuadratureSpec q;
    if (cfg.scheme == "quadrature") q.scheme = Scheme::RadialGaussLegendre;
    else if (cfg.scheme == "montecarlo") q.scheme = Scheme::MonteCarlo;
    else throw ParameterError("unknown scheme '" + cfg.scheme + "' (expected quadrature or montecarlo)");
    q.nodes = cfg.nodes;
    q.samples = cfg.samples;
    q.seed = cfg.seed;
    q.k_samples = cfg.k_samples;
    q.validate();
    return q;
}

int cmd_spectrum(const JobConfig& cfg, std::ostream& out) {
    const auto format = parse_format(cfg.output);
    const RootSystemData data = build_root_data(HermitianType::parse(cfg.space));
    const BundleSpec bundle = BundleSpec::parse(cfg.bundle, data);
    DecompositionTable table = spectrum_support(bundle, cfg.cutoff, data);
    table.space = data.type.to_string();
    out << write_table(table, format);
    return kExitPass;
}

int cmd_verify(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto format = parse_format(cfg.output);
    VerifyOptions opts;
    opts.cutoff = cfg.cutoff;
    const VerifyReport report = run_verify(HermitianType::parse(cfg.space), cfg.suite, cfg.seed, opts);
    out << write_verify(report, format);
    if (report.passed()) return kExitPass;
    for (const auto& c : report.checks)
        if (!c.passed()) err << "failed: " << c.name << " residual " << format_residual(c.residual) << "\n";
    return kExitFailure;
}

int cmd_conjecture(const JobConfig& cfg, std::ostream& out) {
    const auto format = parse_format(cfg.output);
    const RootSystemData data = build_root_data(HermitianType::parse(cfg.space));
    const BundleSpec bundle = BundleSpec::parse(cfg.bundle, data);
    const ConjectureReport report = conjecture_scan(bundle, cfg.cutoff, data, quadrature(cfg));
    out << write_conjecture(report, format);
    return kExitPass;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectra and L2 tests for nearly holomorphic sections on compact Hermitian symmetric spaces",
                 "nearhol"};
    app.require_subcommand(1);
    JobConfig cfg;
    const std::vector<std::string> formats{"json", "csv", "md"};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--space", cfg.space, "Space selector: I:p,q, II:n, III:n, IV:n, EIII, EVII")->required();
        sub->add_option("--cutoff", cfg.cutoff, "Largest total degree |m|")->check(CLI::Range(0, kMaxCutoff));
        sub->add_option("--output", cfg.output, "Output format")->check(CLI::IsMember(formats));
        sub->add_option("--seed", cfg.seed, "Random seed");
    };

    auto* spectrum = app.add_subcommand("spectrum", "K-type table of polynomial L2 sections");
    add_common(spectrum);
    spectrum->add_option("--bundle", cfg.bundle, "line:k, cotangent or mu:c1,c2,...");

    auto* verify = app.add_subcommand("verify", "Run invariant suites");
    add_common(verify);
    verify->add_option("--suite", cfg.suite, "jordan, integrals, decomp or all")
        ->check(CLI::IsMember({"jordan", "integrals", "decomp", "all"}));

    auto* conjecture = app.add_subcommand("conjecture", "Compare the degree criterion with decided tests");
    add_common(conjecture);
    conjecture->add_option("--bundle", cfg.bundle, "line:k, cotangent or mu:c1,c2,...");
    conjecture->add_option("--scheme", cfg.scheme, "Probe integration: quadrature or montecarlo")
        ->check(CLI::IsMember({"quadrature", "montecarlo"}));
    conjecture->add_option("--nodes", cfg.nodes, "Gauss-Legendre nodes per axis");
    conjecture->add_option("--samples", cfg.samples, "Monte Carlo samples");
    conjecture->add_option("--k-samples", cfg.k_samples, "Haar samples for K-averaging");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(cfg, out);
        if (verify->parsed()) return cmd_verify(cfg, out, err);
        return cmd_conjecture(cfg, out);
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const ParameterError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

} // namespace nearhol
