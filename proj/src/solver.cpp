#include "youngflow/solver.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>

namespace youngflow {

namespace {

struct StepRange {
    std::size_t ia, ib;  // omega indices of [from, to]
};

StepRange locate(const SamplePath& omega, double from, double to) {
    if (omega.dim() != 1) throw ShapeError("solver: driver must be scalar");
    const std::size_t ia = omega.index_of(from);
    const std::size_t ib = omega.index_of(to);
    if (ib <= ia) throw OffGridError("solver: interval must be nondegenerate");
    return {ia, ib};
}

}  // namespace

SamplePath solve_young_sde(const CoefficientSet& coeffs, const SamplePath& omega,
                           const Eigen::VectorXd& x0, double from, double to, int substeps) {
    if (substeps < 1) throw std::domain_error("solver: substeps must be >= 1");
    if (x0.size() != coeffs.dim) throw ShapeError("solver: x0 dimension mismatch");
    const auto [ia, ib] = locate(omega, from, to);
    const double dt = omega.dt();
    const double h = dt / static_cast<double>(substeps);

    std::vector<double> data((ib - ia + 1) * static_cast<std::size_t>(coeffs.dim));
    Eigen::VectorXd x = x0;
    auto store = [&](std::size_t k) {
        for (int c = 0; c < coeffs.dim; ++c)
            data[k * static_cast<std::size_t>(coeffs.dim) + static_cast<std::size_t>(c)] = x(c);
    };
    store(0);

    for (std::size_t k = ia; k < ib; ++k) {
        const double dw_coarse = omega.value(k + 1) - omega.value(k);
        const double dw = dw_coarse / static_cast<double>(substeps);
        for (int s = 0; s < substeps; ++s) {
            const double t = omega.time(k) + static_cast<double>(s) * h;
            Eigen::VectorXd incr = (coeffs.drift(t) * x) * h + (coeffs.diffusion(t) * x) * dw;
            if (coeffs.has_nonlinearity()) incr += coeffs.nonlinearity(t, x) * h;
            x += incr;
        }
        if (!x.allFinite()) throw DivergenceError(k + 1 - ia, omega.time(k + 1));
        store(k + 1 - ia);
    }
    return SamplePath(from, dt, static_cast<std::size_t>(coeffs.dim), std::move(data));
}

FlowMatrix fundamental_matrix(const CoefficientSet& coeffs, const SamplePath& omega, double from,
                              double to, int substeps) {
    if (coeffs.has_nonlinearity())
        throw std::domain_error("fundamental_matrix: F must be absent (linear part only)");
    const auto d = static_cast<Eigen::Index>(coeffs.dim);

    FlowMatrix flow;
    flow.t0 = from;
    flow.dt = omega.dt();

    std::vector<SamplePath> columns;
    columns.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index c = 0; c < d; ++c)
        columns.push_back(solve_young_sde(coeffs, omega, Eigen::VectorXd::Unit(d, c), from, to, substeps));

    const std::size_t n = columns.front().size();
    flow.values.reserve(n);
    flow.condition_numbers.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::MatrixXd phi(d, d);
        for (Eigen::Index c = 0; c < d; ++c) phi.col(c) = columns[static_cast<std::size_t>(c)].at(i);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(phi);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(d - 1);
        flow.condition_numbers.push_back(smin > 0.0 ? smax / smin
                                                    : std::numeric_limits<double>::infinity());
        if (!(smin > 0.0)) flow.all_invertible = false;
        flow.values.push_back(std::move(phi));
    }
    return flow;
}

double variation_of_parameters_check(const CoefficientSet& coeffs, const SamplePath& omega,
                                     const Eigen::VectorXd& x0, double from, double to) {
    if (!coeffs.drift.is_constant() || !coeffs.diffusion.is_constant())
        throw std::domain_error("variation_of_parameters_check: A, C must be autonomous");
    const auto [ia, ib] = locate(omega, from, to);
    const double dt = omega.dt();
    const Eigen::MatrixXd& A = coeffs.drift.constant_value();
    const Eigen::MatrixXd& C = coeffs.diffusion.constant_value();
    const auto d = static_cast<Eigen::Index>(coeffs.dim);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);

    const SamplePath x = solve_young_sde(coeffs, omega, x0, from, to);

    // v(t_k) = Phi(t_k) x0 + sum_{j<k} Phi(t_k - t_j, theta_{t_j} omega) F(t_j, x_j) dt,
    // accumulated through the per-step transition E_k = I + A dt + C dw_k; the
    // discrete flow satisfies the cocycle exactly, so this is the left Riemann
    // sum of the variation-of-parameters integral on the grid.
    Eigen::VectorXd v = x0;
    double residual = 0.0;
    for (std::size_t k = ia; k < ib; ++k) {
        const double t = omega.time(k);
        const double dw = omega.value(k + 1) - omega.value(k);
        const Eigen::MatrixXd step = id + A * dt + C * dw;
        Eigen::VectorXd feed = Eigen::VectorXd::Zero(d);
        if (coeffs.has_nonlinearity()) feed = coeffs.nonlinearity(t, x.at(k - ia)) * dt;
        v = step * (v + feed);
        residual = std::max(residual, (x.at(k + 1 - ia) - v).norm());
    }
    return residual;
}

double polar_dynamics_check(const CoefficientSet& coeffs, const SamplePath& omega,
                            const Eigen::VectorXd& x0, double from, double to, double r_floor) {
    if (!(x0.norm() > 0.0)) throw std::domain_error("polar_dynamics_check: x0 must be nonzero");
    const auto [ia, ib] = locate(omega, from, to);
    const double dt = omega.dt();
    const SamplePath x = solve_young_sde(coeffs, omega, x0, from, to);

    const double log_r0 = std::log(x0.norm());
    double integral = 0.0;
    double residual = 0.0;
    for (std::size_t k = ia; k <= ib; ++k) {
        const Eigen::VectorXd xk = x.at(k - ia);
        const double r = xk.norm();
        const double t = omega.time(k);
        if (r < r_floor) throw NearZeroError(t, r);
        residual = std::max(residual, std::abs(std::log(r) - log_r0 - integral));
        if (k == ib) break;
        const Eigen::VectorXd y = xk / r;
        double drift_term = y.dot(coeffs.drift(t) * y);
        if (coeffs.has_nonlinearity()) drift_term += y.dot(coeffs.nonlinearity(t, xk)) / r;
        const double noise_term = y.dot(coeffs.diffusion(t) * y);
        const double dw = omega.value(k + 1) - omega.value(k);
        integral += drift_term * dt + noise_term * dw;
    }
    return residual;
}

}  // namespace youngflow
