#include "youngflow/variation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace youngflow {

namespace {

double increment_norm(const SamplePath& x, std::size_t i, std::size_t j) {
    if (x.dim() == 1) return std::abs(x.value(j) - x.value(i));
    double acc = 0.0;
    for (std::size_t c = 0; c < x.dim(); ++c) {
        const double d = x.component(j, c) - x.component(i, c);
        acc += d * d;
    }
    return std::sqrt(acc);
}

void check_range(const SamplePath& x, std::size_t i0, std::size_t i1) {
    if (i1 <= i0) throw OffGridError("variation: interval must be nondegenerate");
    if (i1 >= x.size()) throw OffGridError("variation: index out of range");
    if (i1 - i0 + 1 > kPvarMaxPoints)
        throw ResourceError("variation: interval has " + std::to_string(i1 - i0 + 1) +
                            " grid points, above the exact-DP limit " +
                            std::to_string(kPvarMaxPoints) + "; evaluate per unit block instead");
}

// Forward DP in power space. best[j] is the maximal sum of ||increment||^p over
// partitions of [i0, j], accumulated strictly left-to-right so that re-summing
// the argmax partition reproduces the value bit-for-bit.
void pvar_dp(const SamplePath& x, double p, std::size_t i0, std::size_t i1,
             std::vector<double>& best, std::vector<std::size_t>* parent) {
    const std::size_t n = i1 - i0 + 1;
    best.assign(n, 0.0);
    if (parent) parent->assign(n, 0);
    for (std::size_t j = 1; j < n; ++j) {
        double best_j = -1.0;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < j; ++i) {
            const double cand = best[i] + std::pow(increment_norm(x, i0 + i, i0 + j), p);
            if (cand > best_j) {
                best_j = cand;
                arg = i;
            }
        }
        best[j] = best_j;
        if (parent) (*parent)[j] = arg;
    }
}

}  // namespace

double pvar_value(const SamplePath& x, double p, std::size_t i0, std::size_t i1) {
    if (!(p >= 1.0)) throw std::domain_error("pvar: p must be >= 1");
    check_range(x, i0, i1);
    std::vector<double> best;
    pvar_dp(x, p, i0, i1, best, nullptr);
    return std::pow(best.back(), 1.0 / p);
}

std::vector<double> pvar_prefix(const SamplePath& x, double p, std::size_t i0, std::size_t i1) {
    if (!(p >= 1.0)) throw std::domain_error("pvar: p must be >= 1");
    if (i1 < i0 || i1 >= x.size()) throw OffGridError("pvar_prefix: bad index range");
    if (i1 - i0 + 1 > kPvarMaxPoints) throw ResourceError("pvar_prefix: interval too long");
    std::vector<double> best;
    if (i1 == i0) return {0.0};
    pvar_dp(x, p, i0, i1, best, nullptr);
    std::vector<double> out(best.size());
    for (std::size_t j = 0; j < best.size(); ++j) out[j] = std::pow(best[j], 1.0 / p);
    return out;
}

VariationResult pvar_seminorm(const SamplePath& x, double p, double from, double to) {
    if (!(p >= 1.0)) throw std::domain_error("pvar: p must be >= 1");
    const std::size_t i0 = x.index_of(from);
    const std::size_t i1 = x.index_of(to);
    check_range(x, i0, i1);

    std::vector<double> best;
    std::vector<std::size_t> parent;
    pvar_dp(x, p, i0, i1, best, &parent);

    VariationResult res;
    res.p = p;
    res.from = from;
    res.to = to;
    res.value = std::pow(best.back(), 1.0 / p);
    std::vector<std::size_t> chain;
    for (std::size_t j = best.size() - 1; j != 0; j = parent[j]) chain.push_back(i0 + j);
    chain.push_back(i0);
    std::reverse(chain.begin(), chain.end());
    res.argmax_partition = std::move(chain);
    return res;
}

double holder_seminorm(const SamplePath& x, double nu, double from, double to) {
    if (!(nu > 0.0) || !(nu < 1.0)) throw std::domain_error("holder: nu must lie in (0, 1)");
    const std::size_t i0 = x.index_of(from);
    const std::size_t i1 = x.index_of(to);
    check_range(x, i0, i1);
    double best = 0.0;
    for (std::size_t i = i0; i < i1; ++i)
        for (std::size_t j = i + 1; j <= i1; ++j) {
            const double gap = static_cast<double>(j - i) * x.dt();
            best = std::max(best, increment_norm(x, i, j) / std::pow(gap, nu));
        }
    return best;
}

double apriori_variation_bound(double b, double p, double dt_len, double omega_pvar) {
    if (!(b >= 0.0)) throw std::domain_error("apriori_variation_bound: b must be >= 0");
    if (!(p > 1.0) || !(p < 2.0)) throw std::domain_error("apriori_variation_bound: p must lie in (1, 2)");
    if (!(dt_len >= 0.0) || !(omega_pvar >= 0.0))
        throw std::domain_error("apriori_variation_bound: lengths must be nonnegative");
    const double cb = 2.0 * std::max(std::pow(4.0 * b, p), 4.0 * b);
    return cb * std::max(std::pow(dt_len, p) + std::pow(omega_pvar, p), dt_len + omega_pvar);
}

ControlGrid::ControlGrid(double t0, double dt, std::size_t n) : t0_(t0), dt_(dt), n_(n) {
    if (n < 2) throw std::domain_error("ControlGrid: need at least 2 grid points");
    table_.assign(n * n, 0.0);
}

double& ControlGrid::at(std::size_t i, std::size_t j) {
    if (i > j || j >= n_) throw OffGridError("ControlGrid: need i <= j < n");
    return table_[i * n_ + j];
}

double ControlGrid::at(std::size_t i, std::size_t j) const {
    if (i > j || j >= n_) throw OffGridError("ControlGrid: need i <= j < n");
    return table_[i * n_ + j];
}

std::vector<ControlViolation> control_superadditivity_check(const ControlGrid& ctrl, double slack) {
    std::vector<ControlViolation> out;
    const std::size_t n = ctrl.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double diag = ctrl.at(i, i);
        if (std::abs(diag) > slack) out.push_back({i, i, i, std::abs(diag)});
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) {
                const double deficit = ctrl.at(i, j) + ctrl.at(j, k) - ctrl.at(i, k);
                if (deficit > slack * std::max(1.0, std::abs(ctrl.at(i, k))))
                    out.push_back({i, j, k, deficit});
            }
    return out;
}

ControlGrid pvar_power_control(const SamplePath& x, double p, double power) {
    if (x.size() > 512) throw ResourceError("pvar_power_control: grid too large for the cubic fill");
    ControlGrid ctrl(x.t0(), x.dt(), x.size());
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        std::vector<double> prefix = pvar_prefix(x, p, i, x.size() - 1);
        for (std::size_t j = i + 1; j < x.size(); ++j)
            ctrl.at(i, j) = std::pow(prefix[j - i], power);
    }
    return ctrl;
}

}  // namespace youngflow
