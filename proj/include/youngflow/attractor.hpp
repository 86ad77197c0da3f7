#pragma once

#include <Eigen/Core>
#include <vector>

#include "youngflow/coefficients.hpp"
#include "youngflow/sample_path.hpp"
#include "youngflow/stability.hpp"

namespace youngflow {

/// Right side of the Gronwall conclusion z0 e^{eta (t-a)} + int_a^t alpha(s) e^{eta(t-s)} ds,
/// trapezoid quadrature on the grid of the tabulated alpha. Returns the bound
/// at every grid point.
std::vector<double> gronwall_bound(double z0, const std::vector<double>& alpha, double eta,
                                   double t0, double dt);

/// beta = 32 sqrt(2 (q0 + 1)); moment bound for the unit-block p-var seminorm.
double beta_bound(int q0);

/// Smallest admissible q0: max{ceil(2/(H - nu)), ceil(2p + 2)} with nu = 1/p.
int beta_q0_floor(double hurst, double p);

/// beta_bound with the floor enforced; the error names the floor.
double beta_bound_checked(int q0, double hurst, double p);

struct AttractorCriterion {
    double h = 0.0;    // h_A - c_f e^delta - delta
    double rhs = 0.0;  // 2^{p+1} max{||C||, ||C||^p} max{1/delta^{p-1}, 4KG} (beta+beta^p+beta^2+beta^{p+1})
    bool ok = false;   // h > rhs
};

AttractorCriterion attractor_criterion(double h_A, double c_f, double delta, double C_norm,
                                       double p, double K, double G, double beta);

/// Series truncation policy: at least this many terms, then stop once the last
/// term drops below 1e-12 of the running sum.
inline constexpr int kSeriesMinTerms = 20;
inline constexpr double kSeriesTailRatio = 1e-12;

struct SeriesResult {
    std::vector<double> partial;  // partial sums, index k-1 holds the k-term sum
    int truncated_at = 0;
    bool tail_alarm = false;  // terms were growing when the cap was hit
};

/// Partial sums of the absorbing radius b(omega); omega must reach back to
/// [-n_terms, 1]. Uses kappa(1, theta_{-i} omega) from the stability module.
SeriesResult absorbing_radius(const SamplePath& omega, const CoefficientSet& coeffs,
                              const KappaParams& params, double h, double delta, int n_terms);

struct TemperProbe {
    std::vector<double> slope_pos;  // (1/m) log xi(theta_{+m} omega), m = 1..m_max
    std::vector<double> slope_neg;  // (1/m) log xi(theta_{-m} omega)
    double c = 0.0;
    bool tail_alarm = false;
};

/// Temperedness probe for xi(omega) = 1 + sum_k exp{(-h + c avg_k kappa) k}.
TemperProbe temperedness_probe(const SamplePath& omega, double h, double c, int m_max,
                               const KappaParams& params, int series_terms = 80);

struct AttractorReport {
    double h = 0.0;
    double delta = 0.0;
    std::vector<double> b_partial;
    std::vector<double> xi_partial;
    std::vector<std::pair<double, double>> pullback_distances;  // (t, max pairwise distance)
    double decay_slope = 0.0;
    bool criterion_ok = false;
    double absorbing_time = std::numeric_limits<double>::quiet_NaN();
    int b_truncated_at = 0;
};

struct PullbackOptions {
    double delta = 0.1;
    double p = 0.0;         // 0 -> derived from hurst
    double hurst = 0.7;     // used for beta floor and default p
    int q0 = 0;             // 0 -> floor
    int substeps = 1;
    int series_terms = 64;
};

/// Integrates every x0 over [-t, 0] against the given two-sided driver for each
/// pullback time t, records the max pairwise distance at the fiber, fits the
/// decay slope past the empirical absorbing time, and evaluates the criterion.
AttractorReport pullback_experiment(const CoefficientSet& coeffs, const SamplePath& omega,
                                    const std::vector<Eigen::VectorXd>& x0_set,
                                    const std::vector<double>& times,
                                    const PullbackOptions& options);

/// "cube:R:N" -> N corners of [-R, R]^dim (sign patterns in binary order).
std::vector<Eigen::VectorXd> parse_x0_grid(const std::string& descriptor, int dim);

}  // namespace youngflow
