#pragma once

#include <Eigen/Core>
#include <limits>
#include <vector>

#include "youngflow/coefficients.hpp"
#include "youngflow/sample_path.hpp"

namespace youngflow {

/// Per-unit-interval norms on the blocks [k, k+1], k = 0..m-1.
struct BlockStats {
    int m = 0;
    double p = 0.0, q = 0.0;
    std::vector<double> a_hat;       // ||A||_{inf, block} + ||f||_{inf, block}
    std::vector<double> c_hat;       // ||C||_{q-var, block} (norm: value + seminorm)
    std::vector<double> omega_pvar;  // |||omega|||_{p-var, block}
};

BlockStats block_stats(const CoefficientSet& coeffs, const SamplePath& omega, int m, double p,
                       double q);

/// Finite-m Cesaro surrogate ((1/(m+1)) sum v_k^e)^(1/e) of the limsup averages.
double cesaro_limit(const std::vector<double>& values, double exponent);

struct CesaroDiagnostics {
    double value = 0.0;         // full-array surrogate
    double last_quarter = 0.0;  // surrogate over the final quarter
    double drift = 0.0;         // value - last_quarter
};
CesaroDiagnostics cesaro_diagnostics(const std::vector<double>& values, double exponent);

struct StabilityReport {
    double p = 0.0, q = 0.0;
    int m_blocks = 0;
    double h0 = 0.0;
    double a_hat = 0.0, c_hat = 0.0;
    double gamma2 = 0.0, gamma4 = 0.0, gamma2p2 = 0.0;
    double K = 0.0, g_hat = 0.0;
    double criterion_lhs = 0.0;  // h0
    double criterion_rhs = 0.0;  // K (1 + 4 G_hat) C_hat [Gamma2 + Gamma4^2 + Gamma_{2p+2}^{p+1}]
    bool verdict = false;        // criterion_lhs > criterion_rhs
    double lyapunov_estimate = std::numeric_limits<double>::quiet_NaN();
    CesaroDiagnostics a_hat_diag, c_hat_diag, gamma2_diag, gamma4_diag, gamma2p2_diag;
};

double g_hat_value(double a_hat, double c_hat, double K, double p);

/// Full criterion evaluation over m unit blocks. h0 is h_A - C_f for constant
/// metadata, otherwise the finite-horizon surrogate (1/m) integral of h - f.
StabilityReport criterion_report(const CoefficientSet& coeffs, const SamplePath& omega, int m,
                                 double p, double q);

/// Least-squares slope of log ||x(t)|| over the trailing tail_fraction of the grid.
double lyapunov_estimate(const SamplePath& traj, double tail_fraction);

struct KappaParams {
    double delta = 0.1;
    double p = 0.0;
    double K = 0.0;
    double G = 0.0;
};

/// G = max{8||A||, 16 K ||C||, 8^p ||A||^p, 16^p K^p ||C||^p} for constants A, C.
KappaParams kappa_params_for(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C, double p,
                             double q, double delta);

/// kappa(t, omega) = delta^(1-p) |||omega|||^p_{[0,t]}
///                 + 4 K G |||omega|||_{[0,t]} (t + |||omega|||_{[0,t]} + |||omega|||^p_{[0,t]}).
/// t must be a grid point in [0, 1].
double kappa(double t, const SamplePath& omega, const KappaParams& params);

/// kappa at every grid t in [0, 1] in one quadratic pass.
std::vector<double> kappa_prefix(const SamplePath& omega, const KappaParams& params);

struct BoundViolation {
    double t;
    double lhs, rhs;
};

/// Checks ||Phi(t, omega)|| <= exp(-h_A t + delta + max{||C||, ||C||^p} kappa(t, omega))
/// on every grid t in [0, 1]; empty up to the discretization slack.
std::vector<BoundViolation> phi_bound_check(const CoefficientSet& coeffs, const SamplePath& omega,
                                            double h_A, double delta, double p, double q,
                                            double eps_disc = 1e-6);

}  // namespace youngflow
