#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace youngflow {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for the k-th member of an ensemble rooted at `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k) {
    return splitmix64(base ^ splitmix64(k));
}

/// mt19937_64 with a portable Gaussian sampler. std::normal_distribution is
/// implementation-defined, so Box-Muller is spelled out here; identical seeds
/// give bit-identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Uniform on (0, 1].
    double uniform() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    double gauss() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace youngflow
