#pragma once

#include <Eigen/Core>

#include "youngflow/sample_path.hpp"

namespace youngflow {

/// Young-Loeve constant K = (1 - 2^(1-theta))^(-1), theta = 1/p + 1/q.
/// Throws std::domain_error when theta <= 1 (Young condition violated).
double k_constant(double p, double q);

/// Left-endpoint Riemann sum of the Young integral of x against the scalar
/// driver omega over [from, to] on their shared grid. Additive over adjacent
/// intervals by construction. Optional Kahan compensation.
Eigen::VectorXd young_integral(const SamplePath& x, const SamplePath& omega, double from,
                               double to, bool kahan = false);

/// Roundoff slack for the certificate comparison; lhs of an exactly-tight case
/// (constant integrand) carries summation noise of this order.
inline constexpr double kYoungLoeveSlack = 1e-12;

struct YoungLoeveCertificate {
    double from = 0.0, to = 0.0;
    double lhs = 0.0;   // || integral - x(s) * (omega(t) - omega(s)) ||
    double rhs = 0.0;   // K * |||x|||_q * |||omega|||_p
    double K = 0.0;
    double p = 0.0, q = 0.0;
    bool holds = true;  // lhs <= rhs up to roundoff slack; violations are reported, never dropped
};

YoungLoeveCertificate young_loeve_certify(const SamplePath& x, const SamplePath& omega,
                                          double from, double to, double p, double q);

}  // namespace youngflow
