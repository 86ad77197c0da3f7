#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <vector>

#include "youngflow/rng.hpp"
#include "youngflow/sample_path.hpp"

namespace testutil {

// Independent p-variation oracle: exhaustive enumeration over every subset of
// interior grid points, sums accumulated left-to-right in power space.
inline double pvar_bruteforce(const youngflow::SamplePath& x, double p, std::size_t i0,
                              std::size_t i1) {
    const std::size_t interior = i1 - i0 - 1;
    const std::uint64_t subsets = std::uint64_t{1} << interior;
    double best = 0.0;
    std::vector<std::size_t> pts;
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        pts.clear();
        pts.push_back(i0);
        for (std::size_t b = 0; b < interior; ++b)
            if (mask & (std::uint64_t{1} << b)) pts.push_back(i0 + 1 + b);
        pts.push_back(i1);
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            double norm2 = 0.0;
            for (std::size_t c = 0; c < x.dim(); ++c) {
                const double d = x.component(pts[k + 1], c) - x.component(pts[k], c);
                norm2 += d * d;
            }
            acc += std::pow(std::sqrt(norm2), p);
        }
        if (acc > best) best = acc;
    }
    return std::pow(best, 1.0 / p);
}

inline youngflow::SamplePath random_path(std::uint64_t seed, std::size_t n, std::size_t dim = 1,
                                         double dt = 0.125) {
    youngflow::Rng rng(seed);
    std::vector<double> data(n * dim);
    for (double& v : data) v = rng.gauss();
    return youngflow::SamplePath(0.0, dt, dim, std::move(data));
}

// Classic RK4 for dz/dt = f(t, z); oracle for the Gronwall equality case.
template <typename F>
double rk4_solve(F&& f, double z0, double t0, double t1, int steps) {
    const double h = (t1 - t0) / steps;
    double z = z0;
    for (int k = 0; k < steps; ++k) {
        const double t = t0 + k * h;
        const double k1 = f(t, z);
        const double k2 = f(t + 0.5 * h, z + 0.5 * h * k1);
        const double k3 = f(t + 0.5 * h, z + 0.5 * h * k2);
        const double k4 = f(t + h, z + h * k3);
        z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return z;
}

struct KendallResult {
    double tau;
    double z;  // normal-approximation statistic
};

inline KendallResult kendall_tau(const std::vector<std::pair<double, double>>& points) {
    long long concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double dx = points[j].first - points[i].first;
            const double dy = points[j].second - points[i].second;
            const double s = dx * dy;
            if (s > 0) ++concordant;
            else if (s < 0) ++discordant;
        }
    const double n = static_cast<double>(points.size());
    const double total = n * (n - 1.0) / 2.0;
    KendallResult res;
    res.tau = total > 0 ? static_cast<double>(concordant - discordant) / total : 0.0;
    const double var = n * (n - 1.0) * (2.0 * n + 5.0) / 18.0;
    res.z = var > 0 ? static_cast<double>(concordant - discordant) / std::sqrt(var) : 0.0;
    return res;
}

inline Eigen::MatrixXd random_negative_definite(std::uint64_t seed, int d, double scale = 1.0) {
    youngflow::Rng rng(seed);
    Eigen::MatrixXd b(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) b(i, j) = rng.gauss();
    Eigen::MatrixXd spd = b * b.transpose() / static_cast<double>(d);
    spd += 0.3 * Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd skew(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) skew(i, j) = 0.3 * rng.gauss();
    skew = 0.5 * (skew - skew.transpose().eval());
    return scale * (-spd + skew);  // <x, Ax> = -<x, spd x> <= -0.3 scale |x|^2
}

}  // namespace testutil
