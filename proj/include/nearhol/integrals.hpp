#pragma once

// L2 densities of sections, polar-coordinate quadrature with the frame weight
// prod t_i^{2b+1} prod |t_i^2 - t_j^2|^a, the closed-form Selberg bound and
// Monte Carlo convergence probes.

#include "nearhol/jordan.hpp"

#include <functional>
#include <limits>

namespace nearhol {

enum class Scheme { RadialGaussLegendre, MonteCarlo };
enum class Classification { Convergent, Divergent, Inconclusive };

std::string to_string(Classification c);

struct QuadratureSpec {
    Scheme scheme = Scheme::RadialGaussLegendre;
    int nodes = 96;                ///< Gauss-Legendre nodes per axis
    long long samples = 100000;    ///< Monte Carlo samples
    std::uint64_t seed = 1;
    int k_samples = 32;            ///< Haar samples for K-averaging non-radial integrands
    std::vector<double> radii = default_ladder();  ///< truncation ladder
    double tolerance = 1e-3;       ///< relative tolerance for a converged tail

    static std::vector<double> default_ladder();
    void validate() const;
};

struct IntegralVerdict {
    double value = 0.0;
    bool infinite = false;
    double stderr_ = 0.0;  ///< Monte Carlo standard error
    Classification classification = Classification::Inconclusive;
    std::vector<double> ladder;  ///< estimates on the truncation radii
    double slope = 0.0;          ///< fitted log-log slope of the ladder increments
};

/// |rho(B(z,-zbar)^{-1/2}) f_p(z)|^2 Delta(z,-zbar)^{-g}.
double l2_density(const MatrixModel& model, const BundleSpec& bundle, const PolyMap& p, const JordanPoint& z);
double log_l2_density(const MatrixModel& model, const BundleSpec& bundle, const PolyMap& p, const JordanPoint& z);

/// c_X with int_{n+} F dlambda = c_X int F(t) prod t_i^{2b+1} prod |t_i^2-t_j^2|^a dt for
/// K-invariant F (calibrated on exp(-|z|^2), whose integral is pi^n).
double polar_constant(const MatrixModel& model, int nodes = 96);

/// Integral of a K-invariant function of t over n+ (rank <= 2).
IntegralVerdict polar_integrate(const std::function<double(const std::vector<double>&)>& radial,
                                const MatrixModel& model, const QuadratureSpec& spec);

/// Closed-form Selberg integral S_r(alpha, beta, gamma), or +inf when it diverges.
double selberg_integral(int r, double alpha, double beta, double gamma);

/// int_{[0,1]^r} prod s_i^{m_r+b} (1-s_i)^{m_r+mu(H_alpha_1)} prod |s_i-s_j|^a ds.
IntegralVerdict selberg_bound(const Partition& m, const BundleSpec& bundle, const RootSystemData& data);

/// Direct Gauss-Legendre evaluation of the same integral (r <= 2, convergent cases).
double selberg_quadrature(const Partition& m, const BundleSpec& bundle, const RootSystemData& data, int nodes);

/// Estimate of ||f_p||^2 with a truncation ladder.
IntegralVerdict norm_probe(const MatrixModel& model, const BundleSpec& bundle, const PolyMap& p,
                           const QuadratureSpec& spec);

/// Ladder classification: Divergent when increments stop decaying, Convergent when
/// they decay geometrically and the extrapolated tail is below tolerance.
IntegralVerdict classify_ladder(const std::vector<double>& radii, const std::vector<double>& estimates,
                                double tolerance);

/// Worker count from NEARHOL_THREADS (default: hardware concurrency, at least 1).
int worker_count();

} // namespace nearhol
