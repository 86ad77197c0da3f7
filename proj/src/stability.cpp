#include "youngflow/stability.hpp"

#include <cmath>

#include "youngflow/solver.hpp"
#include "youngflow/variation.hpp"
#include "youngflow/young.hpp"

namespace youngflow {

BlockStats block_stats(const CoefficientSet& coeffs, const SamplePath& omega, int m, double p,
                       double q) {
    if (m < 1) throw std::domain_error("block_stats: m must be >= 1");
    if (!omega.on_grid(0.0) || !omega.on_grid(static_cast<double>(m)))
        throw OffGridError("block_stats: omega must cover [0, m] on its grid");

    BlockStats stats;
    stats.m = m;
    stats.p = p;
    stats.q = q;
    stats.a_hat.reserve(static_cast<std::size_t>(m));
    stats.c_hat.reserve(static_cast<std::size_t>(m));
    stats.omega_pvar.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const double a = static_cast<double>(k);
        const double b = static_cast<double>(k + 1);
        stats.a_hat.push_back(coeffs.drift.sup_norm(a, b) + coeffs.lipschitz.sup(a, b));
        stats.c_hat.push_back(spectral_norm(coeffs.diffusion(a)) +
                              coeffs.diffusion.qvar_seminorm(q, a, b));
        stats.omega_pvar.push_back(pvar_value(omega, p, omega.index_of(a), omega.index_of(b)));
    }
    return stats;
}

double cesaro_limit(const std::vector<double>& values, double exponent) {
    if (values.empty()) throw std::domain_error("cesaro_limit: empty array");
    if (!(exponent > 0.0)) throw std::domain_error("cesaro_limit: exponent must be positive");
    double acc = 0.0;
    for (double v : values) {
        if (v < 0.0) throw std::domain_error("cesaro_limit: negative value");
        acc += std::pow(v, exponent);
    }
    return std::pow(acc / static_cast<double>(values.size()), 1.0 / exponent);
}

CesaroDiagnostics cesaro_diagnostics(const std::vector<double>& values, double exponent) {
    CesaroDiagnostics diag;
    diag.value = cesaro_limit(values, exponent);
    const std::size_t q0 = values.size() - values.size() / 4;
    std::vector<double> tail(values.begin() + static_cast<std::ptrdiff_t>(q0 < values.size() ? q0 : 0),
                             values.end());
    if (tail.empty()) tail = values;
    diag.last_quarter = cesaro_limit(tail, exponent);
    diag.drift = diag.value - diag.last_quarter;
    return diag;
}

double g_hat_value(double a_hat, double c_hat, double K, double p) {
    const double lin_a = 8.0 * a_hat;
    const double lin_c = 16.0 * K * c_hat;
    return std::max(std::max(lin_a, lin_c), std::max(std::pow(lin_a, p), std::pow(lin_c, p)));
}

StabilityReport criterion_report(const CoefficientSet& coeffs, const SamplePath& omega, int m,
                                 double p, double q) {
    StabilityReport rep;
    rep.p = p;
    rep.q = q;
    rep.m_blocks = m;
    rep.K = k_constant(p, q);

    const BlockStats stats = block_stats(coeffs, omega, m, p, q);
    rep.a_hat_diag = cesaro_diagnostics(stats.a_hat, 4.0 * p);
    rep.c_hat_diag = cesaro_diagnostics(stats.c_hat, 2.0 * p + 2.0);
    rep.gamma2_diag = cesaro_diagnostics(stats.omega_pvar, 2.0);
    rep.gamma4_diag = cesaro_diagnostics(stats.omega_pvar, 4.0);
    rep.gamma2p2_diag = cesaro_diagnostics(stats.omega_pvar, 2.0 * p + 2.0);
    rep.a_hat = rep.a_hat_diag.value;
    rep.c_hat = rep.c_hat_diag.value;
    rep.gamma2 = rep.gamma2_diag.value;
    rep.gamma4 = rep.gamma4_diag.value;
    rep.gamma2p2 = rep.gamma2p2_diag.value;

    if (coeffs.dissipativity.is_constant() && coeffs.lipschitz.is_constant()) {
        rep.h0 = coeffs.dissipativity.constant_value() - coeffs.lipschitz.constant_value();
    } else {
        const double t = static_cast<double>(m);
        rep.h0 = (coeffs.dissipativity.integral(0.0, t) - coeffs.lipschitz.integral(0.0, t)) / t;
    }

    rep.g_hat = g_hat_value(rep.a_hat, rep.c_hat, rep.K, p);
    rep.criterion_lhs = rep.h0;
    rep.criterion_rhs = rep.K * (1.0 + 4.0 * rep.g_hat) * rep.c_hat *
                        (rep.gamma2 + rep.gamma4 * rep.gamma4 + std::pow(rep.gamma2p2, p + 1.0));
    rep.verdict = rep.criterion_lhs > rep.criterion_rhs;
    return rep;
}

double lyapunov_estimate(const SamplePath& traj, double tail_fraction) {
    if (!(tail_fraction > 0.0) || !(tail_fraction <= 1.0))
        throw std::domain_error("lyapunov_estimate: tail_fraction must lie in (0, 1]");
    const std::size_t n = traj.size();
    std::size_t start = n - static_cast<std::size_t>(std::floor(tail_fraction * static_cast<double>(n)));
    if (start + 2 > n) start = (n >= 2) ? n - 2 : 0;

    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    const auto count = static_cast<double>(n - start);
    for (std::size_t i = start; i < n; ++i) {
        const double r = traj.at(i).norm();
        if (!(r > 0.0)) throw NearZeroError(traj.time(i), r);
        const double t = traj.time(i);
        const double y = std::log(r);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double denom = stt - st * st / count;
    if (!(denom > 0.0)) throw std::domain_error("lyapunov_estimate: degenerate time window");
    return (sty - st * sy / count) / denom;
}

KappaParams kappa_params_for(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C, double p,
                             double q, double delta) {
    if (!(delta > 0.0)) throw std::domain_error("kappa: delta must be positive");
    KappaParams params;
    params.delta = delta;
    params.p = p;
    params.K = k_constant(p, q);
    params.G = g_hat_value(spectral_norm(A), spectral_norm(C), params.K, p);
    return params;
}

namespace {

double kappa_from_seminorm(double t, double w, const KappaParams& params) {
    const double wp = std::pow(w, params.p);
    return wp / std::pow(params.delta, params.p - 1.0) +
           4.0 * params.K * params.G * w * (t + w + wp);
}

}  // namespace

double kappa(double t, const SamplePath& omega, const KappaParams& params) {
    if (t < -1e-12 || t > 1.0 + 1e-12) throw OffGridError("kappa: t must lie in [0, 1]");
    const std::size_t i0 = omega.index_of(0.0);
    const std::size_t it = omega.index_of(t);
    if (it == i0) return 0.0;
    return kappa_from_seminorm(t, pvar_value(omega, params.p, i0, it), params);
}

std::vector<double> kappa_prefix(const SamplePath& omega, const KappaParams& params) {
    const std::size_t i0 = omega.index_of(0.0);
    const std::size_t i1 = omega.index_of(1.0);
    const std::vector<double> prefix = pvar_prefix(omega, params.p, i0, i1);
    std::vector<double> out(prefix.size());
    for (std::size_t j = 0; j < prefix.size(); ++j)
        out[j] = kappa_from_seminorm(static_cast<double>(j) * omega.dt(), prefix[j], params);
    return out;
}

std::vector<BoundViolation> phi_bound_check(const CoefficientSet& coeffs, const SamplePath& omega,
                                            double h_A, double delta, double p, double q,
                                            double eps_disc) {
    if (coeffs.has_nonlinearity())
        throw std::domain_error("phi_bound_check: linear systems only");
    const Eigen::MatrixXd& A = coeffs.drift.constant_value();
    const Eigen::MatrixXd& C = coeffs.diffusion.constant_value();
    const KappaParams params = kappa_params_for(A, C, p, q, delta);
    const double nc = spectral_norm(C);
    const double cfac = std::max(nc, std::pow(nc, p));

    const FlowMatrix flow = fundamental_matrix(coeffs, omega, 0.0, 1.0);
    const std::vector<double> kap = kappa_prefix(omega, params);

    std::vector<BoundViolation> violations;
    for (std::size_t i = 0; i < flow.size(); ++i) {
        const double t = flow.time(i);
        const double lhs = spectral_norm(flow.values[i]);
        const double rhs = std::exp(-h_A * t + delta + cfac * kap[i]);
        if (lhs > rhs + eps_disc * std::max(1.0, rhs)) violations.push_back({t, lhs, rhs});
    }
    return violations;
}

}  // namespace youngflow
