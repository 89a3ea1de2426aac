#include "nearhol/weights.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace nearhol {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 0) throw DomainError("signature entries must be nonnegative");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("signature must be nonincreasing");
    }
}

int Partition::total() const {
    int s = 0;
    for (int x : parts_) s += x;
    return s;
}

std::string Partition::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(parts_[i]);
    }
    return out + ")";
}

std::vector<Partition> Partition::enumerate(std::size_t r, int cutoff) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int max_part, int budget) {
        if (cur.size() == r) {
            out.emplace_back(cur);
            return;
        }
        for (int x = 0; x <= std::min(max_part, budget); ++x) {
            cur.push_back(x);
            rec(x, budget - x);
            cur.pop_back();
        }
    };
    rec(cutoff, cutoff);
    std::stable_sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
        if (a.total() != b.total()) return a.total() < b.total();
        return a.parts() < b.parts();
    });
    return out;
}

long long WeightMultiset::total() const {
    long long s = 0;
    for (const auto& [w, m] : entries) s += m;
    return s;
}

int WeightMultiset::multiplicity(const Weight& w) const {
    const auto it = entries.find(w);
    return it == entries.end() ? 0 : it->second;
}

namespace {

bool is_integer(const Rational& q) { return q.denominator() == 1; }

} // namespace

bool in_weight_lattice(const Weight& lambda, const RootSystemData& data) {
    return std::all_of(data.positive.begin(), data.positive.end(),
                       [&](const Root& r) { return is_integer(coroot_pairing(lambda, r.vec)); });
}

bool is_dominant_U(const Weight& lambda, const RootSystemData& data) {
    return std::all_of(data.simple.begin(), data.simple.end(), [&](const Weight& a) {
        const Rational p = coroot_pairing(lambda, a);
        return is_integer(p) && p >= 0;
    });
}

bool is_dominant_K(const Weight& lambda, const RootSystemData& data) {
    if (!is_integer(coroot_pairing(lambda, data.alpha1()))) return false;
    return std::all_of(data.simple.begin() + 1, data.simple.end(), [&](const Weight& a) {
        const Rational p = coroot_pairing(lambda, a);
        return is_integer(p) && p >= 0;
    });
}

Weight gamma_weight(const Partition& m, const RootSystemData& data) {
    if (m.size() != data.gammas.size()) throw DomainError("signature length must equal the rank");
    Weight w(data.ambient_dim());
    for (std::size_t i = 0; i < m.size(); ++i) w += Rational(m[i]) * data.gammas[i];
    return w;
}

Weight compact_dominant_representative(const Weight& lambda, const RootSystemData& data) {
    Weight v = lambda;
    for (bool moved = true; moved;) {
        moved = false;
        for (std::size_t i = 1; i < data.simple.size(); ++i) {
            if (coroot_pairing(v, data.simple[i]) < 0) {
                v = reflect(v, data.simple[i]);
                moved = true;
            }
        }
    }
    return v;
}

bool compact_dominates(const Weight& mu, const Weight& nu, const RootSystemData& data) {
    const auto coeffs = coordinates_in_span(data.compact_simple(), mu - nu);
    if (!coeffs) return false;
    return std::all_of(coeffs->begin(), coeffs->end(),
                       [](const Rational& c) { return is_integer(c) && c >= 0; });
}

long long weyl_dimension(const Weight& mu, const RootSystemData& data) {
    Rational d(1);
    const Weight shifted = mu + data.rho_c;
    for (auto i : data.compact_pos) {
        const Weight& a = data.positive[i].vec;
        d *= dot(shifted, a) / dot(data.rho_c, a);
    }
    if (!is_integer(d)) throw IntegrityError("non-integral Weyl dimension");
    return d.numerator();
}

WeightMultiset weight_system(const Weight& mu, const RootSystemData& data) {
    if (!is_dominant_K(mu, data)) throw DomainError("weight " + mu.to_string() + " is not K-dominant");

    const auto simples = data.compact_simple();
    const auto pos = data.compact_positive();

    // All weights: breadth-first descent through weights whose dominant
    // representative lies below mu.
    std::set<Weight> weights{mu};
    std::deque<Weight> todo{mu};
    std::map<Weight, Weight> dom_of;
    dom_of.emplace(mu, mu);
    while (!todo.empty()) {
        const Weight cur = todo.front();
        todo.pop_front();
        for (const auto& a : simples) {
            Weight nxt = cur - a;
            if (weights.count(nxt)) continue;
            Weight dom = compact_dominant_representative(nxt, data);
            if (!compact_dominates(mu, dom, data)) continue;
            weights.insert(nxt);
            dom_of.emplace(nxt, std::move(dom));
            todo.push_back(std::move(nxt));
        }
    }

    // Freudenthal on dominant weights, ordered by depth below mu.
    auto depth = [&](const Weight& nu) {
        const auto c = coordinates_in_span(simples, mu - nu);
        Rational s(0);
        for (const auto& x : *c) s += x;
        return s;
    };
    std::vector<std::pair<Rational, Weight>> dominant;
    for (const auto& w : weights)
        if (dom_of.at(w) == w) dominant.emplace_back(depth(w), w);
    std::sort(dominant.begin(), dominant.end());

    std::map<Weight, int> dom_mult;
    const Weight mu_rho = mu + data.rho_c;
    const Rational top = dot(mu_rho, mu_rho);
    auto mult = [&](const Weight& w) -> int {
        const auto it = dom_of.find(w);
        if (it == dom_of.end()) return 0;
        const auto jt = dom_mult.find(it->second);
        if (jt == dom_mult.end()) throw IntegrityError("Freudenthal order violated");
        return jt->second;
    };
    for (const auto& [d, nu] : dominant) {
        if (nu == mu) {
            dom_mult[nu] = 1;
            continue;
        }
        Rational num(0);
        for (const auto& a : pos) {
            for (Weight x = nu + a; dom_of.count(x); x += a) num += Rational(2 * mult(x)) * dot(x, a);
        }
        const Weight nu_rho = nu + data.rho_c;
        const Rational den = top - dot(nu_rho, nu_rho);
        if (den <= 0) throw IntegrityError("Freudenthal denominator not positive");
        const Rational m = num / den;
        if (!is_integer(m) || m < 0) throw IntegrityError("non-integral Freudenthal multiplicity");
        dom_mult[nu] = static_cast<int>(m.numerator());
    }

    WeightMultiset out;
    for (const auto& w : weights) {
        const int m = dom_mult.at(dom_of.at(w));
        if (m > 0) out.entries.emplace(w, m);
    }
    if (out.total() != weyl_dimension(mu, data))
        throw IntegrityError("weight system of " + mu.to_string() + " fails the Weyl dimension checksum");
    return out;
}

bool verify_weight_inequalities(const Weight& mu, const RootSystemData& data) {
    const auto ws = weight_system(mu, data);
    const Rational lower = coroot_pairing(mu, data.alpha1());
    const Rational upper = coroot_pairing(mu, data.gammas.front());
    for (const auto& [lambda, m] : ws.entries) {
        for (const auto& g : data.gammas) {
            const Rational v = coroot_pairing(lambda, g);
            if (v < lower || v > upper) return false;
        }
    }
    return true;
}

std::map<Weight, int> tensor_multiplicities(const Weight& a, const Weight& b, const RootSystemData& data) {
    const auto wb = weight_system(b, data);
    std::map<Weight, int> acc;
    for (const auto& [nu, m] : wb.entries) {
        Weight x = a + nu + data.rho_c;
        int sign = 1;
        bool wall = false;
        for (bool moved = true; moved && !wall;) {
            moved = false;
            for (std::size_t i = 1; i < data.simple.size(); ++i) {
                const Rational p = coroot_pairing(x, data.simple[i]);
                if (p == 0) {
                    wall = true;
                    break;
                }
                if (p < 0) {
                    x = reflect(x, data.simple[i]);
                    sign = -sign;
                    moved = true;
                }
            }
        }
        if (wall) continue;
        acc[x - data.rho_c] += sign * m;
    }
    std::map<Weight, int> out;
    for (const auto& [w, m] : acc) {
        if (m < 0) throw IntegrityError("negative tensor multiplicity");
        if (m > 0) out.emplace(w, m);
    }
    return out;
}

} // namespace nearhol
