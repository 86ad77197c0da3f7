#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace youngflow {

/// Thrown when a requested time does not lie on a path's sample grid, or a
/// shift/interval leaves the path's domain.
class OffGridError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Thrown when two paths that must share a grid do not.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an exact sampler or a dynamic program would exceed its size limit.
class ResourceError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Solver state became non-finite. Carries the first bad step.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::size_t step, double time)
        : std::runtime_error("solver diverged at step " + std::to_string(step) +
                             " (t = " + std::to_string(time) + ")"),
          step_(step), time_(time) {}
    std::size_t step() const { return step_; }
    double time() const { return time_; }

private:
    std::size_t step_;
    double time_;
};

/// A trajectory norm fell below the floor where a polar/log identity degenerates.
class NearZeroError : public std::runtime_error {
public:
    explicit NearZeroError(double time, double norm)
        : std::runtime_error("trajectory norm " + std::to_string(norm) +
                             " below floor at t = " + std::to_string(time)) {}
};

}  // namespace youngflow
