#pragma once

// Root data of the irreducible compact Hermitian symmetric spaces.
//
// Every family is realized in a fixed orthogonal epsilon-basis:
//   I(p,q)   A_{p+q-1} in R^{p+q},   noncompact node e_p - e_{p+1}
//   II(n)    D_n in R^n,             noncompact node e_{n-1} + e_n
//   III(n)   C_n in R^n,             noncompact node 2 e_n
//   IV(n)    B_m / D_m in R^m (n+2 = 2m+1 or 2m), noncompact node e_1 - e_2
//   EIII     E_6 in R^8 (Bourbaki), noncompact node alpha_1
//   EVII     E_7 in R^8 (Bourbaki), noncompact node alpha_7
// The noncompact simple root is moved to index 0; the compact simple roots keep
// their Bourbaki order. Positive roots are ordered lexicographically by their
// coefficient vectors in that simple basis.

#include "nearhol/weight.hpp"

#include <set>
#include <utility>
#include <string>
#include <vector>

namespace nearhol {

enum class Family { TypeI, TypeII, TypeIII, TypeIV, TypeEIII, TypeEVII };

struct StructureConstants {
    int r = 0;  ///< rank
    int a = 0;  ///< root multiplicity between frame roots
    int b = 0;  ///< boundary multiplicity
    int g = 0;  ///< genus
    int n = 0;  ///< complex dimension of n+
    friend bool operator==(const StructureConstants&, const StructureConstants&) = default;
};

struct HermitianType {
    Family family = Family::TypeI;
    int p = 1;  ///< TypeI rows, or the single size parameter of II/III/IV
    int q = 1;  ///< TypeI columns, unused otherwise

    static HermitianType type_i(int p, int q) { return {Family::TypeI, p, q}; }
    static HermitianType type_ii(int n) { return {Family::TypeII, n, 0}; }
    static HermitianType type_iii(int n) { return {Family::TypeIII, n, 0}; }
    static HermitianType type_iv(int n) { return {Family::TypeIV, n, 0}; }
    static HermitianType e_iii() { return {Family::TypeEIII, 0, 0}; }
    static HermitianType e_vii() { return {Family::TypeEVII, 0, 0}; }

    /// Parses selectors like "I:2,3", "II:4", "III:3", "IV:5", "EIII", "EVII".
    static HermitianType parse(const std::string& selector);

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] bool is_classical_matrix() const;  ///< I, II or III

    /// Closed-form constants of the family (used to cross-check the root data).
    [[nodiscard]] StructureConstants expected_constants() const;
    [[nodiscard]] bool tube_type() const { return expected_constants().b == 0; }

    void validate() const;
};

struct Root {
    Weight vec;
    std::vector<int> coeffs;  ///< coefficients in the simple basis (alpha_1 first)
    bool noncompact = false;
};

class RootSystemData {
public:
    HermitianType type;
    std::vector<Weight> simple;            ///< simple[0] is the noncompact alpha_1
    std::vector<Root> positive;            ///< ascending lexicographic order
    std::vector<std::size_t> compact_pos;  ///< indices into `positive`
    std::vector<std::size_t> noncompact_pos;
    std::vector<Weight> gammas;            ///< strongly orthogonal gamma_1..gamma_r
    Weight lambda1;                        ///< fundamental weight of alpha_1 (in the root span)
    Weight rho_c;                          ///< half sum of compact positive roots
    std::vector<int> w0_word;              ///< longest element of W_c as a reflection sequence
    StructureConstants constants;

    [[nodiscard]] std::size_t ambient_dim() const { return simple.front().dim(); }
    [[nodiscard]] const Weight& alpha1() const { return simple.front(); }
    [[nodiscard]] int rank() const { return constants.r; }

    [[nodiscard]] bool is_root(const Weight& v) const { return all_roots_.count(v) > 0; }
    [[nodiscard]] bool is_noncompact_negative(const Weight& v) const;

    [[nodiscard]] std::vector<Weight> compact_simple() const;
    [[nodiscard]] std::vector<Weight> compact_positive() const;
    [[nodiscard]] std::vector<Weight> noncompact_positive() const;
    [[nodiscard]] std::vector<Weight> noncompact_negative() const;

    /// Applies the reflections word[0], word[1], ... to v in that order.
    [[nodiscard]] Weight apply_word(const std::vector<int>& word, Weight v) const;

    /// True when all roots have the same length.
    [[nodiscard]] bool simply_laced() const;

    /// Element Z_0 of the Cartan with alpha(Z_0) = 1 on noncompact positive roots and
    /// 0 on compact ones, expressed through the inner product.
    [[nodiscard]] Weight grading_element() const;

    friend RootSystemData build_root_data(const HermitianType& type);

private:
    std::set<Weight> all_roots_;
};

/// Builds and validates root data; throws ParameterError on bad family parameters
/// and IntegrityError when a structural invariant fails.
RootSystemData build_root_data(const HermitianType& type);

/// Greedy descent: gamma_1 = max of Phi_nc^+, then the highest noncompact positive
/// root strongly orthogonal to all previous ones.
std::vector<Weight> strongly_orthogonal(const RootSystemData& data);

/// (r, a, b, g, n) measured from the root data, cross-checked against
/// g = 2 + a(r-1) + b, the dimension count and g = 2 rho_nc(H_gamma_1).
StructureConstants structure_constants(const RootSystemData& data);

/// Orbit of v under the compact Weyl group (breadth-first over simple reflections).
std::vector<Weight> compact_weyl_orbit(const RootSystemData& data, const Weight& v);

/// Simple roots of an exceptional family parsed from the shipped JSON table.
/// Returns the simple roots in Bourbaki order plus the noncompact node index.
std::pair<std::vector<Weight>, int> exceptional_simple_roots(Family family);

} // namespace nearhol
