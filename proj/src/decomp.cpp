#include "nearhol/decomp.hpp"

#include <algorithm>
#include <map>

namespace nearhol {

BundleSpec BundleSpec::line(int k, const RootSystemData& data) {
    return {BundleKind::LineBundle, k, Rational(k) * data.lambda1};
}

BundleSpec BundleSpec::cotangent(const RootSystemData& data) {
    return {BundleKind::Cotangent, 0, -data.alpha1()};
}

BundleSpec BundleSpec::general(const Weight& mu, const RootSystemData& data) {
    if (mu.dim() != data.ambient_dim())
        throw ParameterError("weight " + mu.to_string() + " has the wrong number of coordinates");
    if (!in_weight_lattice(mu, data)) throw DomainError("weight " + mu.to_string() + " is not integral");
    if (!is_dominant_K(mu, data)) throw DomainError("weight " + mu.to_string() + " is not K-dominant");
    return {BundleKind::GeneralIrreducible, 0, mu};
}

BundleSpec BundleSpec::parse(const std::string& text, const RootSystemData& data) {
    if (text == "cotangent") return cotangent(data);
    if (text.rfind("line:", 0) == 0) {
        const std::string rest = text.substr(5);
        std::size_t used = 0;
        int k = 0;
        try {
            k = std::stoi(rest, &used);
        } catch (const std::logic_error&) {
            throw ParameterError("bad line bundle degree '" + rest + "'");
        }
        if (used != rest.size()) throw ParameterError("bad line bundle degree '" + rest + "'");
        return line(k, data);
    }
    if (text.rfind("mu:", 0) == 0) return general(parse_weight(text.substr(3)), data);
    throw ParameterError("unknown bundle '" + text + "' (expected line:k, cotangent or mu:...)");
}

std::string BundleSpec::to_string() const {
    switch (kind) {
    case BundleKind::LineBundle: return "line:" + std::to_string(k);
    case BundleKind::Cotangent: return "cotangent";
    case BundleKind::GeneralIrreducible: return "mu:" + mu.to_string();
    }
    return {};
}

Rational BundleSpec::nu(const RootSystemData& data) const { return dot(mu, data.grading_element()); }

std::int64_t BundleSpec::alpha1_pairing(const RootSystemData& data) const {
    return int_pairing(mu, data.alpha1());
}

std::string to_string(L2Status s) {
    switch (s) {
    case L2Status::InL2: return "InL2";
    case L2Status::NotInL2: return "NotInL2";
    case L2Status::Undecided: return "Undecided";
    }
    return {};
}

L2Status parse_l2_status(const std::string& text) {
    if (text == "InL2") return L2Status::InL2;
    if (text == "NotInL2") return L2Status::NotInL2;
    if (text == "Undecided") return L2Status::Undecided;
    throw ParameterError("unknown L2 status '" + text + "'");
}

bool borel_weil(const BundleSpec& bundle, const RootSystemData& data) {
    return bundle.alpha1_pairing(data) >= 0;
}

bool minor_l2_condition(const Partition& m, const BundleSpec& bundle, const RootSystemData& data) {
    if (m.size() != data.gammas.size()) throw DomainError("signature length must equal the rank");
    return m.last() + bundle.alpha1_pairing(data) >= 0;
}

bool degree_l2_necessary(const Weight& lambda, const std::vector<int>& degs, const RootSystemData& data) {
    if (degs.size() != data.gammas.size()) throw DomainError("one degree per frame variable expected");
    for (std::size_t i = 0; i < degs.size(); ++i)
        if (Rational(degs[i]) > coroot_pairing(lambda, data.gammas[i])) return false;
    return true;
}

DecompositionTable line_bundle_spectrum(int k, int cutoff, const RootSystemData& data) {
    if (cutoff < 0) throw ParameterError("cutoff must be nonnegative");
    DecompositionTable t;
    t.space = data.type.to_string();
    t.bundle = BundleSpec::line(k, data);
    t.constants = data.constants;
    t.cutoff = cutoff;
    t.multiplicity_free = true;
    std::set<Weight> seen;
    for (const auto& m : Partition::enumerate(data.gammas.size(), cutoff)) {
        if (m.last() < -k) continue;
        KTypeEntry e;
        e.lambda = gamma_weight(m, data) + t.bundle.mu;
        e.multiplicity = 1;
        e.lower_bound = 1;
        e.exact = true;
        e.l2_status = L2Status::InL2;
        e.origin_m = m;
        e.origin_beta = t.bundle.mu;
        if (!seen.insert(e.lambda).second) throw IntegrityError("line bundle spectrum is not multiplicity free");
        t.entries.push_back(std::move(e));
    }
    return t;
}

std::optional<Partition> as_gamma_weight(const Weight& v, const RootSystemData& data) {
    const auto c = coordinates_in_span(data.gammas, v);
    if (!c) return std::nullopt;
    std::vector<int> parts;
    for (const auto& x : *c) {
        if (!x.is_integer() || x < Rational(0)) return std::nullopt;
        parts.push_back(static_cast<int>(x.numerator()));
    }
    for (std::size_t i = 1; i < parts.size(); ++i)
        if (parts[i] > parts[i - 1]) return std::nullopt;
    return Partition(parts);
}

std::vector<int> schlichtkrull_params(const Weight& lambda, int k, const RootSystemData& data) {
    const auto m = as_gamma_weight(lambda - Rational(k) * data.lambda1, data);
    if (!m || m->last() < -k)
        throw DomainError(lambda.to_string() + " is not in the line bundle spectrum of degree " + std::to_string(k));
    const std::size_t r = m->size();
    std::vector<int> out(r);
    for (std::size_t i = 0; i < r; ++i) {
        out[i] = 2 * (*m)[r - 1 - i] + k;
        if (Rational(out[i]) != coroot_pairing(lambda, data.gammas[r - 1 - i]))
            throw IntegrityError("Schlichtkrull parameter disagrees with lambda(H_gamma)");
    }
    if (std::abs(k) > out.front()) throw IntegrityError("Schlichtkrull parameters below |k|");
    for (std::size_t i = 0; i < r; ++i) {
        if (i > 0 && out[i] < out[i - 1]) throw IntegrityError("Schlichtkrull parameters not monotone");
        if ((out[i] - k) % 2 != 0) throw IntegrityError("Schlichtkrull parameters of mixed parity");
    }
    return out;
}

std::vector<Weight> cotangent_tensor_ktypes(const Partition& m, const RootSystemData& data) {
    const Weight gm = gamma_weight(m, data);
    std::vector<Weight> zero_walls;
    for (const auto& a : data.compact_simple())
        if (coroot_pairing(gm, a) == Rational(0)) zero_walls.push_back(a);

    std::vector<Weight> out;
    // Descending noncompact positive roots give ascending beta = -root.
    for (auto it = data.noncompact_pos.rbegin(); it != data.noncompact_pos.rend(); ++it) {
        const Weight beta = -data.positive[*it].vec;
        const Weight lambda = gm + beta;
        if (!is_dominant_K(lambda, data)) continue;
        const bool blocked = std::any_of(zero_walls.begin(), zero_walls.end(), [&](const Weight& a) {
            return data.is_noncompact_negative(beta + a);
        });
        if (!blocked) out.push_back(lambda);
    }
    return out;
}

std::vector<Partition> cotangent_witnesses(const Weight& lambda, int cutoff, const RootSystemData& data) {
    std::vector<Partition> out;
    for (const auto& beta : data.noncompact_negative()) {
        const auto m = as_gamma_weight(lambda - beta, data);
        if (!m || m->total() > cutoff) continue;
        const auto kt = cotangent_tensor_ktypes(*m, data);
        if (std::find(kt.begin(), kt.end(), lambda) != kt.end() &&
            std::find(out.begin(), out.end(), *m) == out.end())
            out.push_back(*m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int cotangent_multiplicity(const Weight& lambda, int cutoff, const RootSystemData& data) {
    if (const auto m = as_gamma_weight(lambda, data)) {
        int count = 1;  // the sentinel m_0 = infinity always gives a descent at i = 1
        for (std::size_t i = 1; i < m->size(); ++i)
            if ((*m)[i - 1] > (*m)[i]) ++count;
        return count;
    }
    const auto w = cotangent_witnesses(lambda, cutoff, data);
    if (w.size() > 1) throw IntegrityError("non-frame K-type " + lambda.to_string() + " occurs more than once");
    return static_cast<int>(w.size());
}

namespace {

struct Witness {
    Partition m;
    Weight beta;
    int mult = 0;
    bool minor_ok = false;
};

} // namespace

DecompositionTable spectrum_support(const BundleSpec& bundle, int cutoff, const RootSystemData& data) {
    if (cutoff < 0) throw ParameterError("cutoff must be nonnegative");
    DecompositionTable t;
    t.space = data.type.to_string();
    t.bundle = bundle;
    t.constants = data.constants;
    t.cutoff = cutoff;

    const long long dim_e = weyl_dimension(bundle.mu, data);
    std::map<Weight, std::vector<Witness>> found;
    std::vector<Weight> order;
    for (const auto& m : Partition::enumerate(data.gammas.size(), cutoff)) {
        const Weight gm = gamma_weight(m, data);
        std::vector<std::pair<Weight, int>> ktypes;
        if (bundle.kind == BundleKind::Cotangent) {
            for (auto& l : cotangent_tensor_ktypes(m, data)) ktypes.emplace_back(std::move(l), 1);
        } else if (dim_e == 1) {
            ktypes.emplace_back(gm + bundle.mu, 1);
        } else {
            for (auto& [l, c] : tensor_multiplicities(gm, bundle.mu, data)) ktypes.emplace_back(l, c);
            // Highest first, then by beta.
            std::sort(ktypes.begin(), ktypes.end(), [&](const auto& a, const auto& b) { return b.first < a.first; });
        }
        const bool ok = minor_l2_condition(m, bundle, data);
        for (auto& [lambda, c] : ktypes) {
            if (!is_dominant_U(lambda, data)) continue;
            auto& ws = found[lambda];
            if (ws.empty()) order.push_back(lambda);
            ws.push_back({m, lambda - gm, c, ok});
        }
    }

    bool mult_free = true;
    for (const auto& lambda : order) {
        const auto& ws = found.at(lambda);
        int big_m = 0, passing = 0;
        for (const auto& w : ws) {
            big_m += w.mult;
            if (w.minor_ok) passing += w.mult;
        }
        if (bundle.kind == BundleKind::Cotangent && big_m != cotangent_multiplicity(lambda, cutoff, data))
            throw IntegrityError("cotangent multiplicity mismatch at " + lambda.to_string());
        if (big_m > 1) mult_free = false;

        KTypeEntry e;
        e.lambda = lambda;
        e.multiplicity = static_cast<int>(std::min<long long>(big_m, dim_e));
        e.origin_m = ws.front().m;
        e.origin_beta = ws.front().beta;
        if (passing > 0) {
            e.l2_status = L2Status::InL2;
            e.lower_bound = passing;
            e.exact = passing == e.multiplicity;
            if (passing > e.multiplicity) throw IntegrityError("lower bound exceeds upper bound at " + lambda.to_string());
        } else {
            e.lower_bound = 0;
            e.exact = false;
            const auto& w = ws.front();
            const bool known_vector = big_m == 1 && (dim_e == 1 || w.beta == bundle.mu);
            e.l2_status = known_vector && !degree_l2_necessary(lambda, w.m.parts(), data) ? L2Status::NotInL2
                                                                                           : L2Status::Undecided;
        }
        t.entries.push_back(std::move(e));
    }
    t.multiplicity_free = mult_free;
    return t;
}

} // namespace nearhol
