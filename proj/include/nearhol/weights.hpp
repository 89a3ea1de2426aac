#pragma once

// Weight-lattice arithmetic over a RootSystemData: dominance tests, signatures
// gamma_m, Freudenthal weight systems of K-modules and the frame inequalities.

#include "nearhol/rootdata.hpp"

#include <map>
#include <string>
#include <vector>

namespace nearhol {

/// A signature m_1 >= m_2 >= ... >= m_r >= 0.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    [[nodiscard]] const std::vector<int>& parts() const { return parts_; }
    [[nodiscard]] std::size_t size() const { return parts_.size(); }
    [[nodiscard]] int operator[](std::size_t i) const { return parts_[i]; }
    [[nodiscard]] int last() const { return parts_.empty() ? 0 : parts_.back(); }
    [[nodiscard]] int total() const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

    /// All signatures of length r with total <= cutoff, ordered by total and then
    /// lexicographically.
    static std::vector<Partition> enumerate(std::size_t r, int cutoff);

private:
    std::vector<int> parts_;
};

/// Weight multiset of an irreducible K-module.
struct WeightMultiset {
    std::map<Weight, int> entries;

    [[nodiscard]] long long total() const;
    [[nodiscard]] int multiplicity(const Weight& w) const;
};

/// lambda(H_alpha) >= 0 for all simple alpha.
bool is_dominant_U(const Weight& lambda, const RootSystemData& data);

/// lambda(H_alpha) >= 0 for all compact simple alpha, lambda(H_alpha_1) integral.
bool is_dominant_K(const Weight& lambda, const RootSystemData& data);

/// Integral pairings against every root.
bool in_weight_lattice(const Weight& lambda, const RootSystemData& data);

/// gamma_m = m_1 gamma_1 + ... + m_r gamma_r.
Weight gamma_weight(const Partition& m, const RootSystemData& data);

/// Dominant representative of the W_c-orbit of lambda.
Weight compact_dominant_representative(const Weight& lambda, const RootSystemData& data);

/// True when mu - nu is a nonnegative integral combination of compact simple roots.
bool compact_dominates(const Weight& mu, const Weight& nu, const RootSystemData& data);

/// Weyl dimension formula over Phi_c.
long long weyl_dimension(const Weight& mu, const RootSystemData& data);

/// Full weight multiset of the irreducible K-module with highest weight mu
/// (Freudenthal recursion over Phi_c). Throws DomainError if mu is not K-dominant.
WeightMultiset weight_system(const Weight& mu, const RootSystemData& data);

/// mu(H_alpha_1) <= lambda(H_gamma_i) <= mu(H_gamma_1) for every weight lambda of E_mu.
bool verify_weight_inequalities(const Weight& mu, const RootSystemData& data);

/// K-type multiplicities of E_a (x) E_b, keyed by highest weight
/// (Racah-Speiser / Klimyk reflection of the weights of E_b shifted by a + rho_c).
std::map<Weight, int> tensor_multiplicities(const Weight& a, const Weight& b,
                                            const RootSystemData& data);

} // namespace nearhol
