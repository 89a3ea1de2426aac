#pragma once

// Exact weight-lattice vectors over the rationals.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nearhol {

/// Exact fraction with 64-bit numerator/denominator; arithmetic overflow throws.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d);

    [[nodiscard]] std::int64_t numerator() const { return num_; }
    [[nodiscard]] std::int64_t denominator() const { return den_; }
    [[nodiscard]] bool is_integer() const { return den_ == 1; }
    [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Thrown for malformed parameters (bad family sizes, unparsable weights, ...).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an input lies outside the domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Thrown when computed data violates an identity it must satisfy.
struct IntegrityError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Thrown when a numerical operator that must be invertible is singular.
struct SingularityError : DomainError {
    using DomainError::DomainError;
};

/// Thrown when an adaptive computation exceeds its configured budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown for requests that a module does not cover (e.g. exceptional matrix models).
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A vector in the orthogonal epsilon-basis of the ambient Cartan subalgebra.
class Weight {
public:
    Weight() = default;
    explicit Weight(std::size_t dim) : coords_(dim, Rational(0)) {}
    explicit Weight(std::vector<Rational> coords) : coords_(std::move(coords)) {}
    Weight(std::initializer_list<Rational> coords) : coords_(coords) {}

    static Weight from_ints(const std::vector<std::int64_t>& xs);

    [[nodiscard]] std::size_t dim() const { return coords_.size(); }
    [[nodiscard]] const std::vector<Rational>& coords() const { return coords_; }
    Rational& operator[](std::size_t i) { return coords_[i]; }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }

    [[nodiscard]] bool is_zero() const;

    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    Weight& operator*=(const Rational& s);

    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator-(Weight a) { return a *= Rational(-1); }
    friend Weight operator*(const Rational& s, Weight a) { return a *= s; }
    friend Weight operator*(std::int64_t s, Weight a) { return a *= Rational(s); }

    friend bool operator==(const Weight& a, const Weight& b) { return a.coords_ == b.coords_; }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
    friend bool operator<(const Weight& a, const Weight& b) { return a.coords_ < b.coords_; }

    /// "(1/2,-1/2,0)"
    [[nodiscard]] std::string to_string() const;

private:
    std::vector<Rational> coords_;
};

Rational dot(const Weight& a, const Weight& b);

/// Coroot pairing lambda(H_alpha) = 2(lambda, alpha)/(alpha, alpha).
Rational coroot_pairing(const Weight& lambda, const Weight& alpha);

/// Integer-valued pairing; throws DomainError when the pairing is fractional.
std::int64_t int_pairing(const Weight& lambda, const Weight& alpha);

/// s_alpha(lambda) = lambda - lambda(H_alpha) alpha.
Weight reflect(const Weight& lambda, const Weight& alpha);

Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& q);

/// Comma-separated list of rationals, optionally wrapped in parentheses/brackets.
Weight parse_weight(const std::string& text);

/// Exact solution of A x = b (A given row-major, m x n). Returns nullopt when the
/// system is inconsistent. Free variables are set to zero.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> a,
                                                 std::vector<Rational> b);

/// Coefficients of v in the basis `basis` when v lies in its span.
std::optional<std::vector<Rational>> coordinates_in_span(const std::vector<Weight>& basis,
                                                         const Weight& v);

} // namespace nearhol
