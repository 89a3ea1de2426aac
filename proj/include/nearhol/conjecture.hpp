#pragma once

// Comparison of the diagonal-degree criterion with the decided minor criterion and
// numerical norm probes on the highest weight vectors p_m (x) v_mu.

#include "nearhol/integrals.hpp"

namespace nearhol {

enum class Verdict { Agree, Disagree, Unknown };

std::string to_string(Verdict v);

struct ConjectureRow {
    Partition m;
    Weight lambda;                ///< gamma_m + mu
    std::vector<int> degrees;     ///< deg_{t_i} of p_m (x) v_mu on the diagonal
    bool degree_criterion = false;  ///< degrees[i] <= lambda(H_gamma_i) for all i
    bool minor_criterion = false;   ///< m_r + mu(H_alpha_1) >= 0
    std::optional<Classification> probe;  ///< numerical probe, when one was run
    Verdict verdict = Verdict::Unknown;
};

struct ConjectureReport {
    std::string space;
    BundleSpec bundle;
    int cutoff = 0;
    std::vector<ConjectureRow> rows;

    [[nodiscard]] int count(Verdict v) const;
};

/// Scan of all signatures |m| <= cutoff. Probes run on rank-one spaces for line
/// bundles and the cotangent bundle. Throws UnsupportedError without a matrix model.
ConjectureReport conjecture_scan(const BundleSpec& bundle, int cutoff, const RootSystemData& data,
                                 const MatrixModel& model, const QuadratureSpec& spec = {});
ConjectureReport conjecture_scan(const BundleSpec& bundle, int cutoff, const RootSystemData& data,
                                 const QuadratureSpec& spec = {});

} // namespace nearhol
