#include "youngflow/sample_path.hpp"

#include <cmath>
#include <string>

namespace youngflow {

SamplePath::SamplePath(double t0, double dt, std::size_t dim, std::vector<double> data)
    : t0_(t0), dt_(dt), dim_(dim), data_(std::move(data)) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::domain_error("SamplePath: dt must be positive and finite");
    if (dim_ == 0) throw ShapeError("SamplePath: dimension must be >= 1");
    if (data_.empty() || data_.size() % dim_ != 0)
        throw ShapeError("SamplePath: data size must be a nonzero multiple of dim");
    for (double v : data_)
        if (!std::isfinite(v)) throw std::domain_error("SamplePath: non-finite entry");
}

bool SamplePath::on_grid(double t) const {
    if (!std::isfinite(t)) return false;
    const double x = (t - t0_) / dt_;
    if (x < -0.5 || x > static_cast<double>(size() - 1) + 0.5) return false;
    const auto i = static_cast<long long>(std::llround(x));
    if (i < 0 || static_cast<std::size_t>(i) >= size()) return false;
    return std::abs(time(static_cast<std::size_t>(i)) - t) <= 1e-9 * dt_;
}

std::size_t SamplePath::index_of(double t) const {
    if (!on_grid(t))
        throw OffGridError("time " + std::to_string(t) + " is not a grid point of [" +
                           std::to_string(t0_) + ", " + std::to_string(t_end()) + "]");
    return static_cast<std::size_t>(std::llround((t - t0_) / dt_));
}

SamplePath SamplePath::segment(std::size_t i0, std::size_t i1) const {
    if (i1 < i0 || i1 >= size()) throw OffGridError("SamplePath::segment: bad index range");
    std::vector<double> out(data_.begin() + static_cast<std::ptrdiff_t>(i0 * dim_),
                            data_.begin() + static_cast<std::ptrdiff_t>((i1 + 1) * dim_));
    return SamplePath(time(i0), dt_, dim_, std::move(out));
}

bool SamplePath::same_grid(const SamplePath& other) const {
    if (std::abs(dt_ - other.dt_) > 1e-12 * dt_) return false;
    const double offset = (other.t0_ - t0_) / dt_;
    return std::abs(offset - std::round(offset)) <= 1e-9;
}

}  // namespace youngflow
