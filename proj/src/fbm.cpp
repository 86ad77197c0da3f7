#include "youngflow/fbm.hpp"

#include <fftw3.h>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "youngflow/rng.hpp"

namespace youngflow {

void FbmSpec::validate() const {
    if (!(hurst >= 0.5) || !(hurst < 1.0))
        throw std::domain_error("FbmSpec: hurst must lie in [1/2, 1)");
    if (!(horizon >= 1.0) || !std::isfinite(horizon))
        throw std::domain_error("FbmSpec: horizon must be >= 1");
    if (steps_per_unit < 2) throw std::domain_error("FbmSpec: steps_per_unit must be >= 2");
    const double steps = horizon * static_cast<double>(steps_per_unit);
    if (std::abs(steps - std::round(steps)) > 1e-9)
        throw std::domain_error("FbmSpec: horizon must be a whole number of grid steps");
}

double covariance_rh(double s, double t, double hurst) {
    if (!std::isfinite(s) || !std::isfinite(t)) throw std::domain_error("covariance_rh: non-finite time");
    if (!(hurst > 0.0) || !(hurst < 1.0)) throw std::domain_error("covariance_rh: hurst must lie in (0, 1)");
    const double h2 = 2.0 * hurst;
    return 0.5 * (std::pow(std::abs(t), h2) + std::pow(std::abs(s), h2) -
                  std::pow(std::abs(t - s), h2));
}

namespace {

// Autocovariance of unit-spacing fractional Gaussian noise.
double fgn_autocov(std::size_t k, double hurst) {
    if (k == 0) return 1.0;
    const double h2 = 2.0 * hurst;
    const double kk = static_cast<double>(k);
    return 0.5 * (std::pow(kk + 1.0, h2) - 2.0 * std::pow(kk, h2) + std::pow(kk - 1.0, h2));
}

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

struct CirculantTable {
    std::size_t big = 0;                // embedding size M
    std::vector<double> sqrt_eig;       // sqrt(lambda_k), k = 0..M-1
};

// Eigenvalues of the circulant embedding of the fGn covariance, cached per
// (hurst, M). fGn embeddings are nonnegative definite; tiny negative values
// from roundoff are clamped.
const CirculantTable& circulant_table(double hurst, std::size_t m) {
    static std::mutex mutex;
    static std::map<std::pair<double, std::size_t>, std::unique_ptr<CirculantTable>> cache;

    const std::size_t big = next_pow2(2 * m);
    if (big > kMaxCirculantSize)
        throw ResourceError("fbm grid needs a circulant embedding of size " + std::to_string(big) +
                            " exceeding the limit " + std::to_string(kMaxCirculantSize));

    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(hurst, big);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    std::vector<std::complex<double>> row(big), spec(big);
    for (std::size_t j = 0; j <= big / 2; ++j) row[j] = fgn_autocov(j, hurst);
    for (std::size_t j = big / 2 + 1; j < big; ++j) row[j] = fgn_autocov(big - j, hurst);

    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(big),
                                      reinterpret_cast<fftw_complex*>(row.data()),
                                      reinterpret_cast<fftw_complex*>(spec.data()),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    auto table = std::make_unique<CirculantTable>();
    table->big = big;
    table->sqrt_eig.resize(big);
    double max_eig = 0.0;
    for (std::size_t k = 0; k < big; ++k) max_eig = std::max(max_eig, spec[k].real());
    for (std::size_t k = 0; k < big; ++k) {
        double lambda = spec[k].real();
        if (lambda < 0.0) {
            if (lambda < -1e-8 * max_eig)
                throw std::runtime_error("circulant embedding not nonnegative definite");
            lambda = 0.0;
        }
        table->sqrt_eig[k] = std::sqrt(lambda);
    }
    auto [pos, inserted] = cache.emplace(key, std::move(table));
    (void)inserted;
    return *pos->second;
}

// m unit-spacing fGn samples via Davies-Harte.
std::vector<double> sample_fgn_circulant(double hurst, std::size_t m, Rng& rng) {
    const CirculantTable& tab = circulant_table(hurst, m);
    const std::size_t big = tab.big;

    std::vector<std::complex<double>> v(big), out(big);
    const double inv_sqrt2 = 0.70710678118654752440;
    v[0] = tab.sqrt_eig[0] * rng.gauss();
    v[big / 2] = tab.sqrt_eig[big / 2] * rng.gauss();
    for (std::size_t k = 1; k < big / 2; ++k) {
        const double a = rng.gauss();
        const double b = rng.gauss();
        const std::complex<double> z(a * inv_sqrt2, b * inv_sqrt2);
        v[k] = tab.sqrt_eig[k] * z;
        v[big - k] = tab.sqrt_eig[big - k] * std::conj(z);
    }

    static std::mutex plan_mutex;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(big),
                                reinterpret_cast<fftw_complex*>(v.data()),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(big));
    std::vector<double> x(m);
    for (std::size_t j = 0; j < m; ++j) x[j] = out[j].real() * scale;
    return x;
}

// Small grids: Cholesky of the dense fBm covariance at positive grid times.
std::vector<double> sample_fbm_values_cholesky(double hurst, std::size_t m, double dt, Rng& rng) {
    Eigen::MatrixXd cov(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double ti = static_cast<double>(i + 1) * dt;
            const double tj = static_cast<double>(j + 1) * dt;
            cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = covariance_rh(ti, tj, hurst);
            cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("fbm covariance Cholesky failed");
    Eigen::VectorXd z(m);
    for (std::size_t i = 0; i < m; ++i) z(static_cast<Eigen::Index>(i)) = rng.gauss();
    Eigen::VectorXd vals = llt.matrixL() * z;
    return std::vector<double>(vals.data(), vals.data() + m);
}

// fBm values at i*dt for i = 1..m (omega(0) = 0 implied).
std::vector<double> sample_fbm_values(double hurst, std::size_t m, double dt, Rng& rng) {
    if (m <= kCholeskyCutoff) return sample_fbm_values_cholesky(hurst, m, dt, rng);
    std::vector<double> fgn = sample_fgn_circulant(hurst, m, rng);
    const double scale = std::pow(dt, hurst);  // self-similarity
    std::vector<double> vals(m);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        acc += scale * fgn[i];
        vals[i] = acc;
    }
    return vals;
}

}  // namespace

SamplePath generate_fbm_one_sided(double hurst, double horizon, std::uint32_t steps_per_unit,
                                  std::uint64_t seed) {
    FbmSpec probe{hurst, std::max(horizon, 1.0), steps_per_unit, seed};
    probe.validate();
    const double dt = 1.0 / static_cast<double>(steps_per_unit);
    const auto m = static_cast<std::size_t>(std::llround(horizon * steps_per_unit));
    Rng rng(seed);
    std::vector<double> vals = sample_fbm_values(hurst, m, dt, rng);
    std::vector<double> data(m + 1);
    data[0] = 0.0;
    for (std::size_t i = 0; i < m; ++i) data[i + 1] = vals[i];
    return SamplePath::scalar(0.0, dt, std::move(data));
}

SamplePath generate_fbm(const FbmSpec& spec) {
    spec.validate();
    const double dt = 1.0 / static_cast<double>(spec.steps_per_unit);
    const auto m = static_cast<std::size_t>(std::llround(spec.horizon * spec.steps_per_unit));

    Rng rng_pos(splitmix64(spec.seed ^ 0x706f736974697665ULL));
    Rng rng_neg(splitmix64(spec.seed ^ 0x6e65676174697665ULL));
    std::vector<double> pos = sample_fbm_values(spec.hurst, m, dt, rng_pos);
    std::vector<double> neg = sample_fbm_values(spec.hurst, m, dt, rng_neg);

    std::vector<double> data(2 * m + 1);
    data[m] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        data[m + 1 + i] = pos[i];
        data[m - 1 - i] = neg[i];
    }
    return SamplePath::scalar(-spec.horizon, dt, std::move(data));
}

SamplePath wiener_shift(const SamplePath& path, double t) {
    if (path.dim() != 1) throw ShapeError("wiener_shift: noise paths are scalar");
    const std::size_t pivot = path.index_of(t);  // throws OffGridError off-grid
    const double base = path.value(pivot);
    std::vector<double> data(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) data[i] = path.value(i) - base;
    return SamplePath::scalar(path.t0() - t, path.dt(), std::move(data));
}

}  // namespace youngflow
