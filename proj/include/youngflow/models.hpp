#pragma once

#include <Eigen/Core>
#include <optional>

#include "youngflow/coefficients.hpp"
#include "youngflow/sample_path.hpp"

namespace youngflow {

struct SirParams {
    double q = 0.0, a = 0.0, b = 0.0, c = 0.0, gamma = 0.0;
    double sigma1 = 0.0, sigma2 = 0.0, sigma3 = 0.0;

    void validate() const;
    double sigma_max() const;
};

struct SirSystem {
    CoefficientSet original;     // variables y = (S, I, R)
    CoefficientSet transformed;  // x = P^{-1} y, diagonal drift D
    Eigen::Matrix3d A, P, Pinv, D, C, C_transformed;
};

/// Builds the SIR system and its diagonalizing transform A = P D P^{-1}.
/// Throws std::domain_error when b + c = 0 (P's entries divide by b + c).
SirSystem sir_build(const SirParams& params);

/// Integrates the original coordinates from x0 >= 0 and reports the first grid
/// time a component goes strictly negative, or nullopt.
std::optional<double> sir_positivity_probe(const SirParams& params, const SamplePath& omega,
                                           const Eigen::Vector3d& x0, double horizon);

struct LyapunovTransform {
    Eigen::MatrixXd Q;       // principal square root of the solution of A^T Q^2 + Q^2 A = 2D
    double lambda_ratio;     // lambda_D / ||Q||^2
};

/// Solves the Lyapunov matrix equation by Kronecker vectorization. A must be
/// Hurwitz (else the solve is singular or X fails positive definiteness) and
/// D_target symmetric negative definite.
LyapunovTransform lyapunov_transform(const Eigen::MatrixXd& A, const Eigen::MatrixXd& D_target);

/// Bookkeeping of the substitution x~ = Q x: drift QAQ^{-1}, diffusion QCQ^{-1},
/// Lipschitz ||Q|| ||Q^{-1}|| f(t), dissipativity lambda_D / ||Q||^2.
CoefficientSet transform_coefficients(const CoefficientSet& coeffs, const Eigen::MatrixXd& Q,
                                      double dissipativity);

}  // namespace youngflow
