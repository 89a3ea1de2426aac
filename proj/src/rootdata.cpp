#include "nearhol/rootdata.hpp"

#include "json.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <regex>

namespace nearhol {

namespace resources {
extern const char* const kE6Hermitian;
extern const char* const kE7Hermitian;
} // namespace resources

namespace {

Weight unit_diff(std::size_t dim, std::size_t i, std::size_t j) {  // e_i - e_j
    Weight w(dim);
    w[i] = 1;
    w[j] = -1;
    return w;
}

Weight unit_sum(std::size_t dim, std::size_t i, std::size_t j) {  // e_i + e_j
    Weight w(dim);
    w[i] += 1;
    w[j] += 1;
    return w;
}

Weight unit(std::size_t dim, std::size_t i, std::int64_t s = 1) {
    Weight w(dim);
    w[i] = s;
    return w;
}

// Simple roots in Bourbaki order plus the index of the noncompact node.
std::pair<std::vector<Weight>, int> bourbaki_simple_roots(const HermitianType& t) {
    std::vector<Weight> s;
    switch (t.family) {
    case Family::TypeI: {
        const std::size_t d = static_cast<std::size_t>(t.p + t.q);
        for (std::size_t i = 0; i + 1 < d; ++i) s.push_back(unit_diff(d, i, i + 1));
        return {s, t.p - 1};
    }
    case Family::TypeII: {
        const std::size_t d = static_cast<std::size_t>(t.p);
        for (std::size_t i = 0; i + 1 < d; ++i) s.push_back(unit_diff(d, i, i + 1));
        s.push_back(unit_sum(d, d - 2, d - 1));
        return {s, static_cast<int>(d) - 1};
    }
    case Family::TypeIII: {
        const std::size_t d = static_cast<std::size_t>(t.p);
        for (std::size_t i = 0; i + 1 < d; ++i) s.push_back(unit_diff(d, i, i + 1));
        s.push_back(unit(d, d - 1, 2));
        return {s, static_cast<int>(d) - 1};
    }
    case Family::TypeIV: {
        const int total = t.p + 2;
        const std::size_t m = static_cast<std::size_t>(total / 2);
        for (std::size_t i = 0; i + 1 < m; ++i) s.push_back(unit_diff(m, i, i + 1));
        if (total % 2 == 1)
            s.push_back(unit(m, m - 1));
        else
            s.push_back(unit_sum(m, m - 2, m - 1));
        return {s, 0};
    }
    case Family::TypeEIII:
    case Family::TypeEVII:
        return exceptional_simple_roots(t.family);
    }
    throw ParameterError("unknown family");
}

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

// ---------------------------------------------------------------------------
// HermitianType

HermitianType HermitianType::parse(const std::string& selector) {
    static const std::regex two(R"(^\s*I\s*:\s*(\d+)\s*,\s*(\d+)\s*$)");
    static const std::regex one(R"(^\s*(II|III|IV)\s*:\s*(\d+)\s*$)");
    std::smatch m;
    HermitianType t;
    if (std::regex_match(selector, m, two)) {
        t = type_i(std::stoi(m[1]), std::stoi(m[2]));
    } else if (std::regex_match(selector, m, one)) {
        const int n = std::stoi(m[2]);
        if (m[1] == "II") t = type_ii(n);
        else if (m[1] == "III") t = type_iii(n);
        else t = type_iv(n);
    } else if (selector == "EIII") {
        t = e_iii();
    } else if (selector == "EVII") {
        t = e_vii();
    } else {
        throw ParameterError("unrecognized space selector '" + selector + "'");
    }
    t.validate();
    return t;
}

std::string HermitianType::to_string() const {
    switch (family) {
    case Family::TypeI: return "I:" + std::to_string(p) + "," + std::to_string(q);
    case Family::TypeII: return "II:" + std::to_string(p);
    case Family::TypeIII: return "III:" + std::to_string(p);
    case Family::TypeIV: return "IV:" + std::to_string(p);
    case Family::TypeEIII: return "EIII";
    case Family::TypeEVII: return "EVII";
    }
    return "?";
}

bool HermitianType::is_classical_matrix() const {
    return family == Family::TypeI || family == Family::TypeII || family == Family::TypeIII;
}

void HermitianType::validate() const {
    switch (family) {
    case Family::TypeI:
        if (p < 1 || q < 1) throw ParameterError("TypeI(p,q) needs p, q >= 1");
        break;
    case Family::TypeII:
        if (p < 3) throw ParameterError("TypeII(n) needs n >= 3");
        break;
    case Family::TypeIII:
        if (p < 1) throw ParameterError("TypeIII(n) needs n >= 1");
        break;
    case Family::TypeIV:
        if (p < 3) throw ParameterError("TypeIV(n) needs n >= 3");
        break;
    case Family::TypeEIII:
    case Family::TypeEVII:
        break;
    }
}

StructureConstants HermitianType::expected_constants() const {
    StructureConstants c;
    switch (family) {
    case Family::TypeI:
        c = {std::min(p, q), 2, std::abs(p - q), p + q, p * q};
        break;
    case Family::TypeII:
        c = {p / 2, 4, (p % 2) ? 2 : 0, 2 * (p - 1), p * (p - 1) / 2};
        break;
    case Family::TypeIII:
        c = {p, 1, 0, p + 1, p * (p + 1) / 2};
        break;
    case Family::TypeIV:
        c = {2, p - 2, 0, p, p};
        break;
    case Family::TypeEIII:
        c = {2, 6, 4, 12, 16};
        break;
    case Family::TypeEVII:
        c = {3, 8, 0, 18, 27};
        break;
    }
    if (c.r == 1) c.a = 0;
    return c;
}

// ---------------------------------------------------------------------------
// RootSystemData

bool RootSystemData::is_noncompact_negative(const Weight& v) const {
    const Weight neg = -v;
    return std::any_of(noncompact_pos.begin(), noncompact_pos.end(),
                       [&](std::size_t i) { return positive[i].vec == neg; });
}

std::vector<Weight> RootSystemData::compact_simple() const {
    return {simple.begin() + 1, simple.end()};
}

std::vector<Weight> RootSystemData::compact_positive() const {
    std::vector<Weight> out;
    for (auto i : compact_pos) out.push_back(positive[i].vec);
    return out;
}

std::vector<Weight> RootSystemData::noncompact_positive() const {
    std::vector<Weight> out;
    for (auto i : noncompact_pos) out.push_back(positive[i].vec);
    return out;
}

std::vector<Weight> RootSystemData::noncompact_negative() const {
    std::vector<Weight> out;
    for (auto i : noncompact_pos) out.push_back(-positive[i].vec);
    return out;
}

Weight RootSystemData::apply_word(const std::vector<int>& word, Weight v) const {
    for (int letter : word) v = reflect(v, simple.at(static_cast<std::size_t>(letter)));
    return v;
}

bool RootSystemData::simply_laced() const {
    const Rational len = dot(positive.front().vec, positive.front().vec);
    return std::all_of(positive.begin(), positive.end(),
                       [&](const Root& r) { return dot(r.vec, r.vec) == len; });
}

Weight RootSystemData::grading_element() const {
    return (Rational(2) / dot(alpha1(), alpha1())) * lambda1;
}

std::vector<Weight> strongly_orthogonal(const RootSystemData& data) {
    std::vector<Weight> gammas;
    // noncompact_pos is ascending, so scan from the top.
    for (;;) {
        bool found = false;
        for (auto it = data.noncompact_pos.rbegin(); it != data.noncompact_pos.rend(); ++it) {
            const Weight& beta = data.positive[*it].vec;
            const bool ok = std::all_of(gammas.begin(), gammas.end(), [&](const Weight& g) {
                return beta != g && !data.is_root(beta + g) && !data.is_root(beta - g);
            });
            if (ok) {
                gammas.push_back(beta);
                found = true;
                break;
            }
        }
        if (!found) break;
    }
    return gammas;
}

StructureConstants structure_constants(const RootSystemData& data) {
    const auto& gammas = data.gammas;
    const std::size_t r = gammas.size();
    std::map<std::pair<std::size_t, std::size_t>, int> pair_count;
    std::vector<int> single_count(r, 0);
    int diag = 0;
    for (auto idx : data.noncompact_pos) {
        const Weight& beta = data.positive[idx].vec;
        std::vector<std::size_t> ones;
        int twos = 0;
        for (std::size_t i = 0; i < r; ++i) {
            const auto v = int_pairing(beta, gammas[i]);
            if (v == 1) ones.push_back(i);
            else if (v == 2) ++twos;
            else if (v != 0) throw IntegrityError("unexpected frame pairing for " + beta.to_string());
        }
        if (twos == 1 && ones.empty()) ++diag;
        else if (twos == 0 && ones.size() == 2) ++pair_count[{ones[0], ones[1]}];
        else if (twos == 0 && ones.size() == 1) ++single_count[ones[0]];
        else throw IntegrityError("root " + beta.to_string() + " does not fit the frame decomposition");
    }
    if (static_cast<std::size_t>(diag) != r) throw IntegrityError("frame roots miscounted");

    StructureConstants c;
    c.r = static_cast<int>(r);
    c.a = 0;
    if (r >= 2) {
        c.a = pair_count[{0, 1}];
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j)
                if (pair_count[{i, j}] != c.a) throw IntegrityError("non-uniform multiplicity a");
    }
    c.b = single_count.empty() ? 0 : single_count[0];
    for (int s : single_count)
        if (s != c.b) throw IntegrityError("non-uniform multiplicity b");
    c.n = static_cast<int>(data.noncompact_pos.size());
    c.g = 2 + c.a * (c.r - 1) + c.b;

    if (c.n != c.r + c.a * c.r * (c.r - 1) / 2 + c.r * c.b)
        throw IntegrityError("dimension count n != r + a r(r-1)/2 + r b");
    Weight two_rho_nc(data.ambient_dim());
    for (auto idx : data.noncompact_pos) two_rho_nc += data.positive[idx].vec;
    if (coroot_pairing(two_rho_nc, gammas.front()) != Rational(c.g))
        throw IntegrityError("genus mismatch: 2 rho_nc(H_gamma1) != 2 + a(r-1) + b");
    return c;
}

std::vector<Weight> compact_weyl_orbit(const RootSystemData& data, const Weight& v) {
    std::set<Weight> seen{v};
    std::deque<Weight> todo{v};
    const auto simples = data.compact_simple();
    while (!todo.empty()) {
        Weight cur = todo.front();
        todo.pop_front();
        for (const auto& a : simples) {
            Weight nxt = reflect(cur, a);
            if (seen.insert(nxt).second) todo.push_back(std::move(nxt));
        }
    }
    return {seen.begin(), seen.end()};
}

std::pair<std::vector<Weight>, int> exceptional_simple_roots(Family family) {
    const char* text = nullptr;
    if (family == Family::TypeEIII) text = resources::kE6Hermitian;
    else if (family == Family::TypeEVII) text = resources::kE7Hermitian;
    else throw ParameterError("not an exceptional family");
    const auto doc = nlohmann::json::parse(text);
    if (doc.at("schema") != "nearhol.rootdata/1") throw IntegrityError("unknown root table schema");
    std::vector<Weight> roots;
    for (const auto& row : doc.at("simple_roots")) {
        std::vector<Rational> c;
        for (const auto& x : row) c.push_back(parse_rational(x.get<std::string>()));
        roots.emplace_back(std::move(c));
    }
    return {roots, doc.at("noncompact_index").get<int>()};
}

RootSystemData build_root_data(const HermitianType& type) {
    type.validate();
    RootSystemData d;
    d.type = type;

    auto [bourbaki, nc] = bourbaki_simple_roots(type);
    d.simple.push_back(bourbaki[static_cast<std::size_t>(nc)]);
    for (std::size_t i = 0; i < bourbaki.size(); ++i)
        if (static_cast<int>(i) != nc) d.simple.push_back(bourbaki[i]);
    const std::size_t ell = d.simple.size();
    const std::size_t dim = d.simple.front().dim();

    // Positive roots by height, using alpha-strings: beta + alpha is a root iff
    // q = p - beta(H_alpha) > 0 where p is the downward string length.
    std::map<Weight, std::vector<int>> known;
    std::vector<Weight> layer;
    for (std::size_t i = 0; i < ell; ++i) {
        std::vector<int> c(ell, 0);
        c[i] = 1;
        known.emplace(d.simple[i], c);
        layer.push_back(d.simple[i]);
    }
    while (!layer.empty()) {
        std::vector<Weight> next;
        for (const auto& beta : layer) {
            for (std::size_t i = 0; i < ell; ++i) {
                const Weight& alpha = d.simple[i];
                int p = 0;
                Weight down = beta - alpha;
                while (known.count(down)) {
                    ++p;
                    down -= alpha;
                }
                const auto q = p - int_pairing(beta, alpha);
                if (q <= 0) continue;
                Weight up = beta + alpha;
                if (known.count(up)) continue;
                auto c = known.at(beta);
                c[i] += 1;
                known.emplace(up, c);
                next.push_back(up);
            }
        }
        layer = std::move(next);
    }
    for (auto& [vec, coeffs] : known) d.positive.push_back({vec, coeffs, coeffs[0] > 0});
    std::sort(d.positive.begin(), d.positive.end(),
              [](const Root& a, const Root& b) { return lex_less(a.coeffs, b.coeffs); });
    for (std::size_t i = 0; i < d.positive.size(); ++i) {
        (d.positive[i].noncompact ? d.noncompact_pos : d.compact_pos).push_back(i);
        d.all_roots_.insert(d.positive[i].vec);
        d.all_roots_.insert(-d.positive[i].vec);
    }

    // lambda_1 in the root span: sum_j c_j alpha_j(H_alpha_i) = delta_{i0}.
    std::vector<std::vector<Rational>> cartan(ell, std::vector<Rational>(ell));
    std::vector<Rational> rhs(ell, Rational(0));
    rhs[0] = 1;
    for (std::size_t i = 0; i < ell; ++i)
        for (std::size_t j = 0; j < ell; ++j) cartan[i][j] = coroot_pairing(d.simple[j], d.simple[i]);
    const auto coeffs = solve_exact(cartan, rhs);
    if (!coeffs) throw IntegrityError("singular Cartan matrix");
    d.lambda1 = Weight(dim);
    for (std::size_t j = 0; j < ell; ++j) d.lambda1 += (*coeffs)[j] * d.simple[j];

    d.rho_c = Weight(dim);
    for (auto i : d.compact_pos) d.rho_c += Rational(1, 2) * d.positive[i].vec;

    // w_0 of W_c: reflect rho_c until it is antidominant.
    Weight v = d.rho_c;
    for (bool moved = true; moved;) {
        moved = false;
        for (std::size_t i = 1; i < ell; ++i) {
            if (coroot_pairing(v, d.simple[i]) > 0) {
                v = reflect(v, d.simple[i]);
                d.w0_word.push_back(static_cast<int>(i));
                moved = true;
                break;
            }
        }
    }
    if (v != -d.rho_c) throw IntegrityError("compact longest element does not map rho_c to -rho_c");

    d.gammas = strongly_orthogonal(d);
    d.constants = structure_constants(d);

    const StructureConstants expected = type.expected_constants();
    if (!(d.constants == expected))
        throw IntegrityError("structure constants of " + type.to_string() + " disagree with the closed form");
    if (d.gammas.front() != d.positive.back().vec)
        throw IntegrityError("gamma_1 is not the highest root");
    if (d.apply_word(d.w0_word, d.alpha1()) != d.gammas.front())
        throw IntegrityError("gamma_1 != w_0 alpha_1");
    return d;
}

} // namespace nearhol
