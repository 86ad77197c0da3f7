#pragma once

#include <cstddef>
#include <vector>

#include "youngflow/sample_path.hpp"

namespace youngflow {

/// Exact DP is quadratic in the number of grid points; guard the worst case.
inline constexpr std::size_t kPvarMaxPoints = std::size_t{1} << 15;

struct VariationResult {
    double p = 1.0;
    double from = 0.0;
    double to = 0.0;
    double value = 0.0;
    /// Grid indices (into the full path) achieving the supremum, endpoints included.
    std::vector<std::size_t> argmax_partition;
};

/// p-variation seminorm over partitions restricted to the sample grid,
/// computed exactly by dynamic programming over grid indices.
VariationResult pvar_seminorm(const SamplePath& x, double p, double from, double to);

/// Seminorm value only, via local index range [i0, i1].
double pvar_value(const SamplePath& x, double p, std::size_t i0, std::size_t i1);

/// Seminorm of x on [i0, j] for every j in [i0, i1], one quadratic pass.
std::vector<double> pvar_prefix(const SamplePath& x, double p, std::size_t i0, std::size_t i1);

/// max over grid pairs s < t of ||x(t) - x(s)|| / (t - s)^nu.
double holder_seminorm(const SamplePath& x, double nu, double from, double to);

/// A-priori bound C(b) * max{(t-s)^p + |||omega|||^p, (t-s) + |||omega|||} with
/// C(b) = 2*max{(4b)^p, 4b} on the q-var seminorm of any path y satisfying
/// |||y||| <= b (1 + |||y|||) (t - s + |||omega|||) on every subinterval.
double apriori_variation_bound(double b, double p, double dt_len, double omega_pvar);

/// Two-parameter table on a grid, candidate control function.
class ControlGrid {
public:
    ControlGrid(double t0, double dt, std::size_t n);

    std::size_t size() const { return n_; }
    double time(std::size_t i) const { return t0_ + static_cast<double>(i) * dt_; }
    double& at(std::size_t i, std::size_t j);
    double at(std::size_t i, std::size_t j) const;

private:
    double t0_;
    double dt_;
    std::size_t n_;
    std::vector<double> table_;  // dense n x n, only i <= j used
};

struct ControlViolation {
    std::size_t i, j, k;  // s <= t <= u as grid indices
    double deficit;       // positive amount by which the axiom fails
};

/// Empty iff the table vanishes on the diagonal and is superadditive at every
/// grid triple (within slack for roundoff).
std::vector<ControlViolation> control_superadditivity_check(const ControlGrid& ctrl,
                                                            double slack = 1e-12);

/// ControlGrid filled with the p-th power of the p-var seminorm of x over
/// every grid pair; used to certify that |||x|||^p is a control.
ControlGrid pvar_power_control(const SamplePath& x, double p, double power);

}  // namespace youngflow
