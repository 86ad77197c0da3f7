#pragma once

#include <Eigen/Core>
#include <vector>

#include "youngflow/coefficients.hpp"
#include "youngflow/sample_path.hpp"

namespace youngflow {

/// Explicit Euler for dx = [A(t)x + F(t,x)]dt + C(t)x domega over [from, to].
/// substeps > 1 refines the driver grid by linear interpolation of omega; the
/// output stays on omega's grid. Throws DivergenceError on non-finite state.
SamplePath solve_young_sde(const CoefficientSet& coeffs, const SamplePath& omega,
                           const Eigen::VectorXd& x0, double from, double to, int substeps = 1);

struct FlowMatrix {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<Eigen::MatrixXd> values;      // Phi(t_i), Phi(t_0) = Id
    std::vector<double> condition_numbers;    // per grid point
    bool all_invertible = true;

    double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
    std::size_t size() const { return values.size(); }
};

/// Fundamental matrix of the linear part (F must be absent): columns are
/// solver runs from the canonical basis vectors.
FlowMatrix fundamental_matrix(const CoefficientSet& coeffs, const SamplePath& omega, double from,
                              double to, int substeps = 1);

/// sup_t || x(t) - [Phi(t) x0 + left Riemann sum of Phi(t-s, theta_s omega) F(s, x(s)) ds] ||
/// for autonomous A, C; vanishes with refinement.
double variation_of_parameters_check(const CoefficientSet& coeffs, const SamplePath& omega,
                                     const Eigen::VectorXd& x0, double from, double to);

/// sup_t | log r(t) - log r(0) - integral of the polar drift and noise terms |
/// where r = ||x||, y = x / r. Throws NearZeroError when r falls below r_floor.
double polar_dynamics_check(const CoefficientSet& coeffs, const SamplePath& omega,
                            const Eigen::VectorXd& x0, double from, double to,
                            double r_floor = 1e-30);

}  // namespace youngflow
