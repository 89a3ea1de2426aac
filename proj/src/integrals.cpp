#include "nearhol/integrals.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

namespace nearhol {

namespace {

struct GaussRule {
    std::vector<double> x, w;  // on [0, 1]
};

GaussRule gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    GaussRule g;
    g.x.resize(static_cast<std::size_t>(n));
    g.w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        g.x[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
        g.w[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, g).first->second;
}

// Nodes and weights of a composite rule in t: dyadic segments of the ladder plus
// a tail [R_max, inf) handled by t = R_max / v.
struct AxisRule {
    std::vector<double> t, w;
    std::vector<int> segment;  // index of the ladder radius the node lies below; K = tail
};

AxisRule axis_rule(const std::vector<double>& radii, int nodes) {
    const GaussRule g = gauss_legendre(nodes);
    AxisRule a;
    double lo = 0.0;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const double hi = radii[k];
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            a.t.push_back(lo + (hi - lo) * g.x[i]);
            a.w.push_back((hi - lo) * g.w[i]);
            a.segment.push_back(static_cast<int>(k));
        }
        lo = hi;
    }
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double v = g.x[i];
        a.t.push_back(lo / v);
        a.w.push_back(lo / (v * v) * g.w[i]);
        a.segment.push_back(static_cast<int>(radii.size()));
    }
    return a;
}

double frame_norm2(const MatrixModel& model) { return model.frame(0).value.squaredNorm(); }

// log of prod t_i^{2b+1} prod_{i<j} |t_i^2 - t_j^2|^a
double log_polar_weight(const std::vector<double>& t, const StructureConstants& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] <= 0.0) return -std::numeric_limits<double>::infinity();
        s += (2.0 * c.b + 1.0) * std::log(t[i]);
        for (std::size_t j = i + 1; j < t.size() && c.a > 0; ++j) {
            const double d = std::abs(t[i] * t[i] - t[j] * t[j]);
            if (d == 0.0) return -std::numeric_limits<double>::infinity();
            s += c.a * std::log(d);
        }
    }
    return s;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y, double* r2) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sxx > 0 ? sxy / sxx : 0.0;
    if (r2) *r2 = (sxx > 0 && syy > 0) ? (sxy * sxy) / (sxx * syy) : 0.0;
    return slope;
}

void require_r_le_2(const MatrixModel& model) {
    if (model.rank() > 2) throw UnsupportedError("radial quadrature is implemented for rank <= 2");
}

} // namespace

std::string to_string(Classification c) {
    switch (c) {
    case Classification::Convergent: return "Convergent";
    case Classification::Divergent: return "Divergent";
    case Classification::Inconclusive: return "Inconclusive";
    }
    return {};
}

std::vector<double> QuadratureSpec::default_ladder() {
    std::vector<double> r;
    for (int k = 0; k < 12; ++k) r.push_back(std::ldexp(1.0, k));
    return r;
}

void QuadratureSpec::validate() const {
    if (nodes < 8) throw ParameterError("quadrature needs at least 8 nodes per axis");
    if (samples < 1) throw ParameterError("Monte Carlo needs at least one sample");
    if (radii.size() < 4) throw ParameterError("truncation ladder needs at least 4 radii");
    for (std::size_t i = 0; i < radii.size(); ++i)
        if (radii[i] <= 0.0 || (i > 0 && radii[i] <= radii[i - 1]))
            throw ParameterError("truncation ladder must be positive and strictly increasing");
    if (!(tolerance > 0.0)) throw ParameterError("tolerance must be positive");
}

int worker_count() {
    if (const char* env = std::getenv("NEARHOL_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

double log_l2_density(const MatrixModel& model, const BundleSpec& bundle, const PolyMap& p, const JordanPoint& z) {
    const double g = model.constants().g;
    const double log_delta = std::log(delta(model, z, {-z.value.adjoint(), Side::Minus}).real());
    const cmat f = eval_section(model, p, z);
    double log_fiber = 0.0;
    switch (bundle.kind) {
    case BundleKind::LineBundle: log_fiber = std::log(fiber_norm2(f)) - bundle.k * log_delta; break;
    case BundleKind::Cotangent: log_fiber = std::log(fiber_norm2(bergman_bundle_action(model, bundle, z, f))); break;
    default: throw UnsupportedError("L2 density is implemented for line bundles and the cotangent bundle");
    }
    return log_fiber - g * log_delta;
}

double l2_density(const MatrixModel& model, const BundleSpec& bundle, const PolyMap& p, const JordanPoint& z) {
    return std::exp(log_l2_density(model, bundle, p, z));
}

double polar_constant(const MatrixModel& model, int /*nodes*/) {
    // int_{R_+^r} exp(-s |t|^2) prod t^{2b+1} prod |t_i^2-t_j^2|^a dt with u = s t^2 is
    // 2^{-r} s^{-n} prod_j Gamma(b+1+j a/2) Gamma(1+(j+1)a/2) / Gamma(1+a/2).
    const auto& c = model.constants();
    const double s = frame_norm2(model);
    const double gam = 0.5 * c.a;
    double log_int = -c.r * std::log(2.0) - c.n * std::log(s);
    for (int j = 0; j < c.r; ++j)
        log_int += std::lgamma(c.b + 1.0 + j * gam) + std::lgamma(1.0 + (j + 1) * gam) - std::lgamma(1.0 + gam);
    return std::exp(c.n * std::log(std::numbers::pi) - log_int);
}

IntegralVerdict classify_ladder(const std::vector<double>& radii, const std::vector<double>& estimates,
                                double tolerance) {
    IntegralVerdict v;
    v.ladder = estimates;
    const double last = estimates.back();
    std::vector<double> lx, ly;
    for (std::size_t k = 1; k < estimates.size(); ++k) {
        const double d = estimates[k] - estimates[k - 1];
        if (d > 0.0) {
            lx.push_back(std::log(radii[k]));
            ly.push_back(std::log(d));
        }
    }
    const std::size_t window = 4;
    if (lx.size() > window) {
        lx.erase(lx.begin(), lx.end() - window);
        ly.erase(ly.begin(), ly.end() - window);
    }
    if (lx.size() < 3) {
        const bool settled = last > 0.0 && estimates.size() >= 2 && estimates[estimates.size() - 1] == estimates[estimates.size() - 2];
        v.classification = settled ? Classification::Convergent : Classification::Inconclusive;
        v.value = last;
        v.slope = -std::numeric_limits<double>::infinity();
        return v;
    }
    double r2 = 0.0;
    v.slope = fit_slope(lx, ly, &r2);
    double lo = ly.front(), hi = ly.front();
    for (double y : ly) {
        lo = std::min(lo, y);
        hi = std::max(hi, y);
    }
    const bool flat = hi - lo < std::log(1.5);
    if (v.slope > -0.1 && (r2 > 0.9 || flat)) {
        v.classification = Classification::Divergent;
        v.infinite = true;
        v.value = std::numeric_limits<double>::infinity();
        return v;
    }
    if (v.slope < -0.1) {
        // geometric tail of the increments per ladder step
        const double ratio = std::exp(v.slope * (lx.back() - lx[lx.size() - 2]));
        const double tail = std::exp(ly.back()) * ratio / (1.0 - ratio);
        if (tail <= tolerance * std::abs(last)) {
            v.classification = Classification::Convergent;
            v.value = last;
            return v;
        }
    }
    v.classification = Classification::Inconclusive;
    v.value = last;
    return v;
}

IntegralVerdict polar_integrate(const std::function<double(const std::vector<double>&)>& radial,
                                const MatrixModel& model, const QuadratureSpec& spec) {
    spec.validate();
    require_r_le_2(model);
    const int r = model.rank();
    const auto& c = model.constants();
    const double cx = polar_constant(model);
    const AxisRule ax = axis_rule(spec.radii, spec.nodes);
    const std::size_t nk = spec.radii.size();
    std::vector<double> cell(nk + 1, 0.0);  // contribution by outermost segment index
    const std::size_t m = ax.t.size();
    if (r == 1) {
        for (std::size_t i = 0; i < m; ++i) {
            const std::vector<double> t{ax.t[i]};
            const double f = radial(t);
            if (f == 0.0) continue;
            cell[static_cast<std::size_t>(ax.segment[i])] += ax.w[i] * f * std::exp(log_polar_weight(t, c));
        }
    } else {
        // The integrand is symmetric in (t_1, t_2): integrate over t_2 = t_1 u with
        // u in [0, 1] and double, so that |t_1^2 - t_2^2|^a stays smooth.
        const GaussRule g = gauss_legendre(spec.nodes);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < g.x.size(); ++j) {
                const std::vector<double> t{ax.t[i], ax.t[i] * g.x[j]};
                const double lw = log_polar_weight(t, c);
                if (!std::isfinite(lw)) continue;
                const double f = radial(t);
                if (f == 0.0) continue;
                cell[static_cast<std::size_t>(ax.segment[i])] += 2.0 * ax.w[i] * g.w[j] * ax.t[i] * f * std::exp(lw);
            }
    }
    std::vector<double> ladder;
    double acc = 0.0;
    for (std::size_t k = 0; k < nk; ++k) {
        acc += cx * cell[k];
        ladder.push_back(acc);
    }
    IntegralVerdict v = classify_ladder(spec.radii, ladder, spec.tolerance);
    if (v.classification == Classification::Convergent) v.value = acc + cx * cell[nk];
    return v;
}

double selberg_integral(int r, double alpha, double beta, double gamma) {
    if (alpha <= 0.0 || beta <= 0.0) return std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (int j = 0; j < r; ++j)
        s += std::lgamma(alpha + j * gamma) + std::lgamma(beta + j * gamma) + std::lgamma(1.0 + (j + 1) * gamma) -
             std::lgamma(alpha + beta + (r + j - 1) * gamma) - std::lgamma(1.0 + gamma);
    return std::exp(s);
}

IntegralVerdict selberg_bound(const Partition& m, const BundleSpec& bundle, const RootSystemData& data) {
    const auto& c = data.constants;
    if (static_cast<int>(m.size()) != c.r) throw DomainError("signature length must equal the rank");
    const int e1 = m.last() + c.b;
    const int e2 = m.last() + static_cast<int>(bundle.alpha1_pairing(data));
    IntegralVerdict v;
    if (e1 > -1 && e2 > -1) {
        v.value = selberg_integral(c.r, e1 + 1.0, e2 + 1.0, 0.5 * c.a);
        v.classification = Classification::Convergent;
    } else {
        v.value = std::numeric_limits<double>::infinity();
        v.infinite = true;
        v.classification = Classification::Divergent;
    }
    return v;
}

double selberg_quadrature(const Partition& m, const BundleSpec& bundle, const RootSystemData& data, int nodes) {
    const auto& c = data.constants;
    if (c.r > 2) throw UnsupportedError("direct Selberg quadrature is implemented for rank <= 2");
    const double e1 = m.last() + c.b;
    const double e2 = m.last() + static_cast<double>(bundle.alpha1_pairing(data));
    if (e1 <= -1.0 || e2 <= -1.0) return std::numeric_limits<double>::infinity();
    const GaussRule g = gauss_legendre(nodes);
    auto f1 = [&](double s) { return std::pow(s, e1) * std::pow(1.0 - s, e2); };
    double total = 0.0;
    if (c.r == 1) {
        for (std::size_t i = 0; i < g.x.size(); ++i) total += g.w[i] * f1(g.x[i]);
        return total;
    }
    // Split the square along the diagonal so |s_1 - s_2|^a is smooth on each half:
    // integrate over s_2 < s_1 with s_2 = s_1 u and double.
    for (std::size_t i = 0; i < g.x.size(); ++i)
        for (std::size_t j = 0; j < g.x.size(); ++j) {
            const double s1 = g.x[i], s2 = s1 * g.x[j];
            total += g.w[i] * g.w[j] * s1 * f1(s1) * f1(s2) * std::pow(s1 - s2, c.a);
        }
    return 2.0 * total;
}

namespace {

struct McBlock {
    double sum = 0.0, sum2 = 0.0;
    std::vector<double> shells;  // sum of weights with |z| <= radii[k]
    long long count = 0;
    std::vector<long long> beyond;  // samples with |z| > radii[k]
};

IntegralVerdict monte_carlo(const MatrixModel& model, const BundleSpec& bundle, const PolyMap& p,
                            const QuadratureSpec& spec) {
    constexpr long long kBlock = 2048;
    const long long nblocks = (spec.samples + kBlock - 1) / kBlock;
    const std::size_t nk = spec.radii.size();
    std::vector<McBlock> blocks(static_cast<std::size_t>(nblocks));
    std::atomic<long long> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    const int r = model.rank();
    const auto& c = model.constants();
    const double log_cx = std::log(polar_constant(model));

    auto work = [&]() {
        try {
            for (;;) {
                const long long b = next.fetch_add(1);
                if (b >= nblocks) break;
                McBlock blk;
                blk.shells.assign(nk, 0.0);
                blk.beyond.assign(nk, 0);
                Rng rng(Rng::stream_seed(spec.seed, static_cast<std::uint64_t>(b)));
                const long long count = std::min(kBlock, spec.samples - b * kBlock);
                for (long long s = 0; s < count; ++s) {
                    // z = k z_t with k Haar and s_i = t_i^2/(1+t_i^2) uniform on (0,1).
                    const KElement k = model.random_k(rng);
                    std::vector<double> t(static_cast<std::size_t>(r));
                    double log_q = 0.0, radius = 0.0;
                    for (auto& ti : t) {
                        const double u = rng.uniform();
                        ti = std::sqrt(u / (1.0 - u));
                        log_q += std::log(2.0 * ti) - 2.0 * std::log1p(ti * ti);
                        radius = std::max(radius, ti);
                    }
                    const double lw = log_polar_weight(t, c);
                    double w = 0.0;
                    if (std::isfinite(lw)) {
                        const JordanPoint z = model.apply(k, model.diag(Side::Plus, t));
                        w = std::exp(log_cx + lw - log_q + log_l2_density(model, bundle, p, z));
                    }
                    blk.sum += w;
                    blk.sum2 += w * w;
                    for (std::size_t k = 0; k < nk; ++k) {
                        if (radius <= spec.radii[k]) blk.shells[k] += w;
                        else ++blk.beyond[k];
                    }
                }
                blk.count = count;
                blocks[static_cast<std::size_t>(b)] = std::move(blk);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!err) err = std::current_exception();
        }
    };
    const int workers = std::min<long long>(worker_count(), nblocks);
    std::vector<std::thread> pool;
    for (int i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);

    double sum = 0.0, sum2 = 0.0;
    std::vector<double> shells(nk, 0.0);  // radius is max_i t_i, as in the quadrature ladder
    std::vector<long long> beyond(nk, 0);
    for (const auto& blk : blocks) {  // fixed reduction order
        sum += blk.sum;
        sum2 += blk.sum2;
        for (std::size_t k = 0; k < nk; ++k) {
            shells[k] += blk.shells[k];
            beyond[k] += blk.beyond[k];
        }
    }
    const double ns = static_cast<double>(spec.samples);
    // Only radii with enough samples outside them carry information about growth.
    std::vector<double> radii, ladder;
    for (std::size_t k = 0; k < nk; ++k) {
        if (beyond[k] < 50) break;
        radii.push_back(spec.radii[k]);
        ladder.push_back(shells[k] / ns);
    }
    IntegralVerdict v;
    if (radii.size() >= 4) {
        v = classify_ladder(radii, ladder, spec.tolerance);
    } else {
        v.ladder = ladder;
        v.classification = Classification::Inconclusive;
    }
    const double mean = sum / ns;
    const double var = std::max(0.0, sum2 / ns - mean * mean);
    v.stderr_ = std::sqrt(var / ns);
    // The samples beyond the last ladder radius measure the tail directly: accept a
    // decaying ladder whose geometric extrapolation agrees with the full estimate.
    if (v.classification == Classification::Inconclusive && v.slope < -0.1 && radii.size() >= 2) {
        const double d = ladder.back() - ladder[ladder.size() - 2];
        const double ratio = std::exp(v.slope * std::log(radii.back() / radii[radii.size() - 2]));
        const double limit = ladder.back() + std::max(d, 0.0) * ratio / (1.0 - ratio);
        if (std::abs(mean - limit) <= 3.0 * v.stderr_ + spec.tolerance * std::abs(mean))
            v.classification = Classification::Convergent;
    }
    if (v.classification != Classification::Divergent) {
        v.value = mean;
        v.infinite = false;
    }
    return v;
}

} // namespace

IntegralVerdict norm_probe(const MatrixModel& model, const BundleSpec& bundle, const PolyMap& p,
                           const QuadratureSpec& spec) {
    spec.validate();
    if (spec.scheme == Scheme::MonteCarlo) return monte_carlo(model, bundle, p, spec);
    require_r_le_2(model);
    Rng rng(spec.seed);
    std::vector<KElement> ks;
    for (int i = 0; i < spec.k_samples; ++i) ks.push_back(model.random_k(rng));
    auto radial = [&](const std::vector<double>& t) {
        const JordanPoint zt = model.diag(Side::Plus, t);
        double acc = 0.0;
        for (const auto& k : ks) acc += std::exp(log_l2_density(model, bundle, p, model.apply(k, zt)));
        return acc / static_cast<double>(ks.size());
    };
    return polar_integrate(radial, model, spec);
}

} // namespace nearhol
