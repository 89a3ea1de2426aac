#pragma once

// Named invariant checks grouped into suites (jordan, integrals, decomp), shared by
// the command-line tool and the acceptance tests.

#include "nearhol/integrals.hpp"

#include <cstdint>

namespace nearhol {

struct Check {
    std::string name;
    double residual = 0.0;   ///< worst measured residual (or violation count)
    double threshold = 0.0;  ///< pass iff residual <= threshold
    int samples = 0;
    std::string note;
    [[nodiscard]] bool passed() const { return residual <= threshold; }
};

struct VerifyReport {
    std::string space;
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    std::vector<std::string> skipped;  ///< suites not applicable to the space

    [[nodiscard]] bool passed() const;
    [[nodiscard]] double max_residual() const;
};

struct VerifyOptions {
    int identity_samples = 200;
    int qmap_samples = 50;
    int bound_samples = 1000;
    int cutoff = 4;
};

/// Algebraic identities of the matrix model. Throws UnsupportedError without one.
std::vector<Check> jordan_suite(const HermitianType& type, std::uint64_t seed, const VerifyOptions& opts = {});

/// Selberg closed form, criterion equivalence, volume baseline and rank-one probes.
std::vector<Check> integrals_suite(const HermitianType& type, std::uint64_t seed, const VerifyOptions& opts = {});

/// Combinatorial invariants of the spectra; available for every space.
std::vector<Check> decomp_suite(const HermitianType& type, const VerifyOptions& opts = {});

/// suite is "jordan", "integrals", "decomp" or "all". "all" skips numeric suites on
/// spaces without a matrix model; a single numeric suite throws UnsupportedError there.
VerifyReport run_verify(const HermitianType& type, const std::string& suite, std::uint64_t seed,
                        const VerifyOptions& opts = {});

} // namespace nearhol
