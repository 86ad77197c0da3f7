#pragma once

#include <cstdint>

#include "youngflow/sample_path.hpp"

namespace youngflow {

/// Exact circulant-embedding sampler caps the FFT size here.
inline constexpr std::size_t kMaxCirculantSize = std::size_t{1} << 24;
/// Grids with at most this many increments per side use a dense Cholesky of
/// the fBm covariance instead of the circulant embedding. Both are exact.
inline constexpr std::size_t kCholeskyCutoff = 64;

struct FbmSpec {
    double hurst = 0.7;
    double horizon = 1.0;          // path lives on [-horizon, horizon]
    std::uint32_t steps_per_unit = 256;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Two-sided fractional Brownian covariance 0.5*(|t|^2H + |s|^2H - |t-s|^2H).
double covariance_rh(double s, double t, double hurst);

/// Two-sided fBm realization on [-horizon, horizon], pinned at omega(0) = 0.
/// The negative half is an independent fBm reflected to negative times and
/// glued at zero. Deterministic given the spec.
SamplePath generate_fbm(const FbmSpec& spec);

/// One-sided fBm on [0, horizon]; building block of generate_fbm, exposed for
/// validation against the covariance function.
SamplePath generate_fbm_one_sided(double hurst, double horizon, std::uint32_t steps_per_unit,
                                  std::uint64_t seed);

/// Wiener shift theta_t: s -> omega(t + s) - omega(t) on the maximal remaining
/// grid. t must be a grid point of the path.
SamplePath wiener_shift(const SamplePath& path, double t);

}  // namespace youngflow
