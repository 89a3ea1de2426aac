#pragma once

// K-type decompositions of polynomial sections: Borel-Weil, the L2 tests,
// line-bundle and cotangent spectra, multiplicity bounds.

#include "nearhol/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nearhol {

enum class BundleKind { LineBundle, Cotangent, GeneralIrreducible };

struct BundleSpec {
    BundleKind kind = BundleKind::LineBundle;
    int k = 0;  ///< degree of a line bundle
    Weight mu;  ///< highest weight of the fiber with respect to Phi_c^+

    static BundleSpec line(int k, const RootSystemData& data);
    static BundleSpec cotangent(const RootSystemData& data);
    static BundleSpec general(const Weight& mu, const RootSystemData& data);

    /// "line:k", "cotangent" or "mu:<c1,c2,...>" (exact rationals allowed).
    static BundleSpec parse(const std::string& text, const RootSystemData& data);

    [[nodiscard]] std::string to_string() const;

    /// Central character nu = mu(Z_0).
    [[nodiscard]] Rational nu(const RootSystemData& data) const;

    /// mu(H_alpha_1).
    [[nodiscard]] std::int64_t alpha1_pairing(const RootSystemData& data) const;
};

enum class L2Status { InL2, NotInL2, Undecided };

std::string to_string(L2Status s);
L2Status parse_l2_status(const std::string& text);

struct KTypeEntry {
    Weight lambda;
    int multiplicity = 1;  ///< exact value when `exact`, otherwise the upper bound min(M, dim E)
    int lower_bound = 0;   ///< proven lower bound on m^lambda
    bool exact = true;
    L2Status l2_status = L2Status::Undecided;
    std::optional<Partition> origin_m;
    std::optional<Weight> origin_beta;  ///< lambda - gamma_m
    friend bool operator==(const KTypeEntry&, const KTypeEntry&) = default;
};

struct DecompositionTable {
    std::string space;  ///< selector of the space
    BundleSpec bundle;
    StructureConstants constants;
    int cutoff = 0;
    bool multiplicity_free = false;
    std::vector<KTypeEntry> entries;
};

/// True iff mu(H_alpha_1) >= 0.
bool borel_weil(const BundleSpec& bundle, const RootSystemData& data);

/// m_r + mu(H_alpha_1) >= 0.
bool minor_l2_condition(const Partition& m, const BundleSpec& bundle, const RootSystemData& data);

/// degs[i] <= lambda(H_gamma_i) for all i.
bool degree_l2_necessary(const Weight& lambda, const std::vector<int>& degs, const RootSystemData& data);

/// {gamma_m + k lambda_1 : m_r >= -k, |m| <= cutoff}, each with multiplicity one.
DecompositionTable line_bundle_spectrum(int k, int cutoff, const RootSystemData& data);

/// m~_i = 2 m_{r-i+1} + k for lambda = gamma_m + k lambda_1.
std::vector<int> schlichtkrull_params(const Weight& lambda, int k, const RootSystemData& data);

/// Signature m with gamma_m = v, if any.
std::optional<Partition> as_gamma_weight(const Weight& v, const RootSystemData& data);

/// Highest weights of the K-types of Poly_m(n^-) (x) n^-.
std::vector<Weight> cotangent_tensor_ktypes(const Partition& m, const RootSystemData& data);

/// Signatures m (|m| <= cutoff) with lambda among the K-types of Poly_m(n^-) (x) n^-.
std::vector<Partition> cotangent_witnesses(const Weight& lambda, int cutoff, const RootSystemData& data);

/// M^lambda for the cotangent bundle.
int cotangent_multiplicity(const Weight& lambda, int cutoff, const RootSystemData& data);

/// Candidate U-types (Gamma + Phi(E)) intersected with the dominant chamber, with
/// multiplicity bounds and L2 statuses.
DecompositionTable spectrum_support(const BundleSpec& bundle, int cutoff, const RootSystemData& data);

} // namespace nearhol
