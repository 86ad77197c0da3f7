#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <vector>

#include "youngflow/errors.hpp"

namespace youngflow {

/// A scalar or vector path sampled on a uniform grid. Grid times are always
/// reconstructed by index arithmetic, t(i) = t0 + i*dt, never by accumulated
/// addition, so long horizons carry no floating-point drift.
class SamplePath {
public:
    SamplePath() = default;
    SamplePath(double t0, double dt, std::size_t dim, std::vector<double> data);

    static SamplePath scalar(double t0, double dt, std::vector<double> values) {
        return SamplePath(t0, dt, 1, std::move(values));
    }

    double t0() const { return t0_; }
    double dt() const { return dt_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return data_.size() / dim_; }  // grid points
    double time(std::size_t i) const { return t0_ + static_cast<double>(i) * dt_; }
    double t_end() const { return time(size() - 1); }

    bool on_grid(double t) const;
    /// Index of grid time t; throws OffGridError if t is off-grid or outside.
    std::size_t index_of(double t) const;

    Eigen::Map<const Eigen::VectorXd> at(std::size_t i) const {
        return Eigen::Map<const Eigen::VectorXd>(data_.data() + i * dim_, dim_);
    }
    double value(std::size_t i) const { return data_[i * dim_]; }  // scalar paths
    double component(std::size_t i, std::size_t c) const { return data_[i * dim_ + c]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    /// Closed index range [i0, i1] as a new path.
    SamplePath segment(std::size_t i0, std::size_t i1) const;

    bool same_grid(const SamplePath& other) const;

private:
    double t0_ = 0.0;
    double dt_ = 1.0;
    std::size_t dim_ = 1;
    std::vector<double> data_;
};

}  // namespace youngflow
