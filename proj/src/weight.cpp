#include "nearhol/weight.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

namespace nearhol {

namespace {

std::int64_t narrow(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("rational overflow");
    return static_cast<std::int64_t>(v);
}

Rational make(__int128 n, __int128 d) {
    if (d == 0) throw DomainError("division by zero");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        n /= a;
        d /= a;
    }
    return Rational(narrow(n), narrow(d));
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0) throw DomainError("zero denominator");
    std::int64_t g = std::gcd(n, d);
    if (g == 0) g = 1;
    if (d < 0) g = -g;
    num_ = n / g;
    den_ = d / g;
}

Rational& Rational::operator+=(const Rational& o) {
    return *this = make(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                        static_cast<__int128>(den_) * o.den_);
}

Rational& Rational::operator-=(const Rational& o) {
    return *this = make(static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_,
                        static_cast<__int128>(den_) * o.den_);
}

Rational& Rational::operator*=(const Rational& o) {
    return *this = make(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

Rational& Rational::operator/=(const Rational& o) {
    return *this = make(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
}

Weight Weight::from_ints(const std::vector<std::int64_t>& xs) {
    std::vector<Rational> c;
    c.reserve(xs.size());
    for (auto x : xs) c.emplace_back(x);
    return Weight(std::move(c));
}

bool Weight::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
}

Weight& Weight::operator+=(const Weight& o) {
    if (o.dim() != dim()) throw DomainError("weight dimension mismatch");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

Weight& Weight::operator-=(const Weight& o) {
    if (o.dim() != dim()) throw DomainError("weight dimension mismatch");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
}

Weight& Weight::operator*=(const Rational& s) {
    for (auto& c : coords_) c *= s;
    return *this;
}

std::string rational_to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::string Weight::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += ",";
        out += rational_to_string(coords_[i]);
    }
    return out + ")";
}

Rational dot(const Weight& a, const Weight& b) {
    if (a.dim() != b.dim()) throw DomainError("weight dimension mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

Rational coroot_pairing(const Weight& lambda, const Weight& alpha) {
    const Rational aa = dot(alpha, alpha);
    if (aa == 0) throw DomainError("coroot of the zero vector");
    return Rational(2) * dot(lambda, alpha) / aa;
}

std::int64_t int_pairing(const Weight& lambda, const Weight& alpha) {
    const Rational p = coroot_pairing(lambda, alpha);
    if (p.denominator() != 1)
        throw DomainError("non-integral pairing " + lambda.to_string() + " against " + alpha.to_string());
    return p.numerator();
}

Weight reflect(const Weight& lambda, const Weight& alpha) {
    return lambda - coroot_pairing(lambda, alpha) * alpha;
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParameterError("empty rational");
    try {
        std::size_t used = 0;
        const auto slash = s.find('/');
        if (slash == std::string::npos) {
            const long long n = std::stoll(s, &used);
            if (used != s.size()) throw ParameterError("bad rational '" + text + "'");
            return Rational(n);
        }
        const std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        const long long n = std::stoll(ns, &used);
        if (used != ns.size()) throw ParameterError("bad rational '" + text + "'");
        const long long d = std::stoll(ds, &used);
        if (used != ds.size() || d == 0) throw ParameterError("bad rational '" + text + "'");
        return Rational(n, d);
    } catch (const std::logic_error&) {
        throw ParameterError("bad rational '" + text + "'");
    }
}

Weight parse_weight(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != '(' && ch != ')' && ch != '[' && ch != ']') s += ch;
    std::vector<Rational> coords;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) coords.push_back(parse_rational(item));
    if (coords.empty()) throw ParameterError("empty weight '" + text + "'");
    return Weight(std::move(coords));
}

std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> a,
                                                 std::vector<Rational> b) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t piv = row;
        while (piv < m && a[piv][col] == 0) ++piv;
        if (piv == m) continue;
        std::swap(a[piv], a[row]);
        std::swap(b[piv], b[row]);
        const Rational inv = Rational(1) / a[row][col];
        for (std::size_t j = col; j < n; ++j) a[row][j] *= inv;
        b[row] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[row][j];
            b[i] -= f * b[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

std::optional<std::vector<Rational>> coordinates_in_span(const std::vector<Weight>& basis,
                                                         const Weight& v) {
    if (basis.empty()) {
        if (v.is_zero()) return std::vector<Rational>{};
        return std::nullopt;
    }
    const std::size_t dim = v.dim();
    std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(basis.size()));
    std::vector<Rational> b(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) a[i][j] = basis[j][i];
        b[i] = v[i];
    }
    return solve_exact(std::move(a), std::move(b));
}

} // namespace nearhol
