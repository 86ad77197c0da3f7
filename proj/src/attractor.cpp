#include "youngflow/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "youngflow/solver.hpp"
#include "youngflow/variation.hpp"
#include "youngflow/young.hpp"

namespace youngflow {

std::vector<double> gronwall_bound(double z0, const std::vector<double>& alpha, double eta,
                                   double t0, double dt) {
    (void)t0;
    if (!(z0 > 0.0) || !(eta > 0.0)) throw std::domain_error("gronwall_bound: need z0, eta > 0");
    if (alpha.size() < 2) throw std::domain_error("gronwall_bound: alpha needs >= 2 grid points");
    for (double a : alpha)
        if (a < 0.0) throw std::domain_error("gronwall_bound: alpha must be nonnegative");

    // Trapezoid integral of alpha(s) e^{eta (t_k - s)} accumulated recursively;
    // the recursion reproduces the composite rule exactly.
    const double grow = std::exp(eta * dt);
    std::vector<double> bound(alpha.size());
    double integral = 0.0;
    bound[0] = z0;
    for (std::size_t k = 1; k < alpha.size(); ++k) {
        integral = grow * integral + 0.5 * dt * (alpha[k - 1] * grow + alpha[k]);
        bound[k] = z0 * std::exp(eta * static_cast<double>(k) * dt) + integral;
    }
    return bound;
}

double beta_bound(int q0) {
    if (q0 < 1) throw std::domain_error("beta_bound: q0 must be a positive integer");
    return 32.0 * std::sqrt(2.0 * (static_cast<double>(q0) + 1.0));
}

int beta_q0_floor(double hurst, double p) {
    const double nu = 1.0 / p;
    if (!(hurst > nu)) throw std::domain_error("beta_q0_floor: need H > nu = 1/p");
    // tolerant ceiling so 2/(H - nu) landing an ulp above an integer stays there
    const double floor_h = std::ceil(2.0 / (hurst - nu) - 1e-9);
    const double floor_p = std::ceil(2.0 * p + 2.0 - 1e-9);
    return static_cast<int>(std::max(floor_h, floor_p));
}

double beta_bound_checked(int q0, double hurst, double p) {
    const int floor = beta_q0_floor(hurst, p);
    if (q0 < floor)
        throw std::domain_error("beta_bound: q0 = " + std::to_string(q0) +
                                " is below the floor max{ceil(2/(H-nu)), ceil(2p+2)} = " +
                                std::to_string(floor));
    return beta_bound(q0);
}

AttractorCriterion attractor_criterion(double h_A, double c_f, double delta, double C_norm,
                                       double p, double K, double G, double beta) {
    if (!(delta > 0.0)) throw std::domain_error("attractor_criterion: delta must be positive");
    AttractorCriterion crit;
    crit.h = h_A - c_f * std::exp(delta) - delta;
    const double cmax = std::max(C_norm, std::pow(C_norm, p));
    const double mfac = std::max(1.0 / std::pow(delta, p - 1.0), 4.0 * K * G);
    crit.rhs = std::pow(2.0, p + 1.0) * cmax * mfac *
               (beta + std::pow(beta, p) + beta * beta + std::pow(beta, p + 1.0));
    crit.ok = crit.h > crit.rhs;
    return crit;
}

namespace {

// kappa(1, theta_{-i} omega) for i = 0..count-1: the shifted seminorm on [0, 1]
// equals the seminorm of omega itself on [-i, 1-i].
std::vector<double> kappa_back_blocks(const SamplePath& omega, const KappaParams& params,
                                      int count) {
    std::vector<double> kap(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double a = -static_cast<double>(i);
        const std::size_t ia = omega.index_of(a);
        const std::size_t ib = omega.index_of(a + 1.0);
        const double w = pvar_value(omega, params.p, ia, ib);
        const double wp = std::pow(w, params.p);
        kap[static_cast<std::size_t>(i)] =
            wp / std::pow(params.delta, params.p - 1.0) +
            4.0 * params.K * params.G * w * (1.0 + w + wp);
    }
    return kap;
}

struct SeriesAccumulator {
    std::vector<double> partial;
    int truncated_at = 0;
    bool tail_alarm = false;
};

// sum over k >= 1 of exp{(-h + c * avg_{i<k} kappa_i) k}, truncated per the
// minimum-terms + tail-ratio policy. kappa values are consumed by index.
template <typename KappaAt>
SeriesAccumulator exp_average_series(double h, double c, int max_terms, KappaAt&& kappa_at) {
    SeriesAccumulator acc;
    double sum = 0.0;
    double kappa_sum = 0.0;
    double prev_term = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= max_terms; ++k) {
        kappa_sum += kappa_at(k - 1);
        const double exponent = (-h + c * kappa_sum / static_cast<double>(k)) * static_cast<double>(k);
        const double term = std::exp(exponent);
        if (!std::isfinite(term)) {  // diverging: flag, do not truncate silently
            acc.tail_alarm = true;
            acc.partial.push_back(std::numeric_limits<double>::infinity());
            acc.truncated_at = k;
            return acc;
        }
        sum += term;
        acc.partial.push_back(sum);
        acc.truncated_at = k;
        if (k >= kSeriesMinTerms && term < kSeriesTailRatio * sum) return acc;
        if (k == max_terms && term > prev_term) acc.tail_alarm = true;
        prev_term = term;
    }
    return acc;
}

}  // namespace

SeriesResult absorbing_radius(const SamplePath& omega, const CoefficientSet& coeffs,
                              const KappaParams& params, double h, double delta, int n_terms) {
    if (n_terms < 1) throw std::domain_error("absorbing_radius: n_terms must be >= 1");
    const double f0 = coeffs.f_at_zero().norm();
    const double nc = spectral_norm(coeffs.diffusion(0.0));
    const double cmax = std::max(nc, std::pow(nc, params.p));
    const double c = std::pow(2.0, params.p + 1.0) * cmax;
    const double coef = f0 * std::exp(3.0 * h + 2.0 * delta) / (h + delta);

    SeriesResult res;
    if (coef == 0.0) {  // f(0) = 0 kills every term; b(omega) = 1
        res.partial.assign(static_cast<std::size_t>(n_terms), 1.0);
        res.truncated_at = n_terms;
        return res;
    }
    const std::vector<double> kap = kappa_back_blocks(omega, params, n_terms);
    SeriesAccumulator acc = exp_average_series(h, c, n_terms,
                                               [&](int i) { return kap[static_cast<std::size_t>(i)]; });
    res.partial.resize(acc.partial.size());
    for (std::size_t k = 0; k < acc.partial.size(); ++k) res.partial[k] = 1.0 + coef * acc.partial[k];
    res.truncated_at = acc.truncated_at;
    res.tail_alarm = acc.tail_alarm;
    return res;
}

TemperProbe temperedness_probe(const SamplePath& omega, double h, double c, int m_max,
                               const KappaParams& params, int series_terms) {
    if (!(h > 0.0) || c < 0.0) throw std::domain_error("temperedness_probe: need h > 0, c >= 0");
    if (m_max < 1) throw std::domain_error("temperedness_probe: m_max must be >= 1");

    if (c == 0.0) {  // xi is a shift-independent geometric series
        TemperProbe probe;
        SeriesAccumulator geo = exp_average_series(h, 0.0, series_terms, [](int) { return 0.0; });
        const double log_xi = std::log(1.0 + geo.partial.back());
        for (int m = 1; m <= m_max; ++m) {
            probe.slope_pos.push_back(log_xi / static_cast<double>(m));
            probe.slope_neg.push_back(log_xi / static_cast<double>(m));
        }
        return probe;
    }

    // Block kappas kappa(1, theta_j omega) for j in [j_min, j_max].
    const int j_min = -m_max - series_terms;
    const int j_max = m_max;
    std::vector<double> block(static_cast<std::size_t>(j_max - j_min + 1));
    for (int j = j_min; j <= j_max; ++j) {
        const double a = static_cast<double>(j);
        const std::size_t ia = omega.index_of(a);
        const std::size_t ib = omega.index_of(a + 1.0);
        const double w = pvar_value(omega, params.p, ia, ib);
        const double wp = std::pow(w, params.p);
        block[static_cast<std::size_t>(j - j_min)] =
            wp / std::pow(params.delta, params.p - 1.0) +
            4.0 * params.K * params.G * w * (1.0 + w + wp);
    }
    auto kappa_at_shift = [&](int s, int i) {  // kappa(1, theta_{s-i} omega)
        return block[static_cast<std::size_t>(s - i - j_min)];
    };

    TemperProbe probe;
    probe.c = c;
    for (int m = 1; m <= m_max; ++m) {
        SeriesAccumulator pos = exp_average_series(h, c, series_terms,
                                                   [&](int i) { return kappa_at_shift(m, i); });
        SeriesAccumulator neg = exp_average_series(h, c, series_terms,
                                                   [&](int i) { return kappa_at_shift(-m, i); });
        probe.tail_alarm = probe.tail_alarm || pos.tail_alarm || neg.tail_alarm;
        probe.slope_pos.push_back(std::log(1.0 + pos.partial.back()) / static_cast<double>(m));
        probe.slope_neg.push_back(std::log(1.0 + neg.partial.back()) / static_cast<double>(m));
    }
    return probe;
}

AttractorReport pullback_experiment(const CoefficientSet& coeffs, const SamplePath& omega,
                                    const std::vector<Eigen::VectorXd>& x0_set,
                                    const std::vector<double>& times,
                                    const PullbackOptions& options) {
    if (x0_set.size() < 2) throw std::domain_error("pullback_experiment: need >= 2 initial points");
    if (times.empty()) throw std::domain_error("pullback_experiment: no pullback times");
    if (!coeffs.dissipativity.is_constant() || !coeffs.lipschitz.is_constant())
        throw std::domain_error("pullback_experiment: constant h_A, c_f required");

    const double h_A = coeffs.dissipativity.constant_value();
    const double c_f = coeffs.lipschitz.constant_value();
    const double nu = (options.hurst + 0.5) / 2.0;
    const double p = options.p > 0.0 ? options.p : 1.0 / nu;
    const double delta = options.delta;
    const KappaParams params = kappa_params_for(coeffs.drift(0.0), coeffs.diffusion(0.0), p, p, delta);
    const int q0 = options.q0 > 0 ? options.q0 : beta_q0_floor(options.hurst, p);
    const double beta = beta_bound_checked(q0, options.hurst, p);
    const double nc = spectral_norm(coeffs.diffusion(0.0));

    AttractorReport report;
    report.delta = delta;
    const AttractorCriterion crit =
        attractor_criterion(h_A, c_f, delta, nc, p, params.K, params.G, beta);
    report.h = crit.h;
    report.criterion_ok = crit.ok;

    // the back series can only reach as far as the driver's negative coverage
    const int usable = static_cast<int>(std::floor(-omega.t0() + 1e-9));
    if (usable < 1) throw OffGridError("pullback_experiment: driver has no negative-time coverage");
    const int series_terms = std::min(options.series_terms, usable);

    const double h_for_series = crit.h > 0.0 ? crit.h : std::max(h_A - c_f, 1e-3);
    SeriesResult b = absorbing_radius(omega, coeffs, params, h_for_series, delta, series_terms);
    report.b_partial = b.partial;
    report.b_truncated_at = b.truncated_at;

    const double c_series = std::pow(2.0, p + 1.0) * std::max(nc, std::pow(nc, p));
    const std::vector<double> kap = kappa_back_blocks(omega, params, series_terms);
    SeriesAccumulator xi = exp_average_series(h_for_series, c_series, series_terms,
                                              [&](int i) { return kap[static_cast<std::size_t>(i)]; });
    report.xi_partial.resize(xi.partial.size());
    for (std::size_t k = 0; k < xi.partial.size(); ++k) report.xi_partial[k] = 1.0 + xi.partial[k];

    for (double t : times) {
        std::vector<Eigen::VectorXd> ends;
        ends.reserve(x0_set.size());
        for (const Eigen::VectorXd& x0 : x0_set) {
            const SamplePath traj = solve_young_sde(coeffs, omega, x0, -t, 0.0, options.substeps);
            ends.push_back(traj.at(traj.size() - 1));
        }
        double dist = 0.0;
        for (std::size_t i = 0; i < ends.size(); ++i)
            for (std::size_t j = i + 1; j < ends.size(); ++j)
                dist = std::max(dist, (ends[i] - ends[j]).norm());
        report.pullback_distances.emplace_back(t, dist);
    }

    // Fit the decay slope past the empirical absorbing time.
    const double b_omega = report.b_partial.back();
    std::size_t first = 0;
    bool found = false;
    for (std::size_t i = 0; i < report.pullback_distances.size(); ++i)
        if (report.pullback_distances[i].second < b_omega) {
            first = i;
            found = true;
            break;
        }
    if (found) report.absorbing_time = report.pullback_distances[first].first;
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0, n = 0.0;
    for (std::size_t i = found ? first : 0; i < report.pullback_distances.size(); ++i) {
        const auto& [t, dist] = report.pullback_distances[i];
        if (!(dist > 0.0)) continue;
        const double y = std::log(dist);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        n += 1.0;
    }
    const double denom = stt - st * st / std::max(n, 1.0);
    report.decay_slope = (n >= 2.0 && denom > 0.0) ? (sty - st * sy / n) / denom : 0.0;
    return report;
}

std::vector<Eigen::VectorXd> parse_x0_grid(const std::string& descriptor, int dim) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= descriptor.size()) {
        const std::size_t next = descriptor.find(':', pos);
        parts.push_back(descriptor.substr(pos, next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (parts.size() < 3 || parts.size() > 4 || parts[0] != "cube")
        throw std::invalid_argument("x0 grid descriptor must look like cube:R:N[:c1,c2,...]");
    const double radius = std::stod(parts[1]);
    const int count = std::stoi(parts[2]);
    if (count < 1 || count > (1 << dim))
        throw std::invalid_argument("x0 grid: N must lie in [1, 2^dim]");
    Eigen::VectorXd center = Eigen::VectorXd::Zero(dim);
    if (parts.size() == 4) {
        std::size_t start = 0;
        for (int c = 0; c < dim; ++c) {
            const std::size_t comma = parts[3].find(',', start);
            center(c) = std::stod(parts[3].substr(start, comma - start));
            if (comma == std::string::npos && c + 1 < dim)
                throw std::invalid_argument("x0 grid: center needs one entry per dimension");
            start = comma + 1;
        }
    }
    std::vector<Eigen::VectorXd> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd x = center;
        for (int c = 0; c < dim; ++c) x(c) += ((i >> c) & 1) ? radius : -radius;
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace youngflow
