#include "youngflow/young.hpp"

#include <algorithm>
#include <cmath>

#include "youngflow/variation.hpp"

namespace youngflow {

double k_constant(double p, double q) {
    if (!(p >= 1.0) || !(q >= 1.0)) throw std::domain_error("k_constant: need p, q >= 1");
    const double theta = 1.0 / p + 1.0 / q;
    if (!(theta > 1.0))
        throw std::domain_error("k_constant: Young condition 1/p + 1/q > 1 violated");
    return 1.0 / (1.0 - std::pow(2.0, 1.0 - theta));
}

namespace {

void check_shared_grid(const SamplePath& x, const SamplePath& omega) {
    if (omega.dim() != 1) throw ShapeError("young_integral: driver must be scalar");
    if (!x.same_grid(omega)) throw ShapeError("young_integral: paths do not share a grid");
}

}  // namespace

Eigen::VectorXd young_integral(const SamplePath& x, const SamplePath& omega, double from,
                               double to, bool kahan) {
    check_shared_grid(x, omega);
    const std::size_t xa = x.index_of(from);
    const std::size_t xb = x.index_of(to);
    const std::size_t wa = omega.index_of(from);
    if (xb < xa) throw OffGridError("young_integral: interval reversed");

    Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(x.dim()));
    if (!kahan) {
        for (std::size_t k = 0; k < xb - xa; ++k) {
            const double dw = omega.value(wa + k + 1) - omega.value(wa + k);
            acc += x.at(xa + k) * dw;
        }
        return acc;
    }
    Eigen::VectorXd comp = Eigen::VectorXd::Zero(acc.size());
    for (std::size_t k = 0; k < xb - xa; ++k) {
        const double dw = omega.value(wa + k + 1) - omega.value(wa + k);
        for (Eigen::Index c = 0; c < acc.size(); ++c) {
            const double term = x.at(xa + k)(c) * dw - comp(c);
            const double next = acc(c) + term;
            comp(c) = (next - acc(c)) - term;
            acc(c) = next;
        }
    }
    return acc;
}

YoungLoeveCertificate young_loeve_certify(const SamplePath& x, const SamplePath& omega,
                                          double from, double to, double p, double q) {
    k_constant(p, q);  // validates the Young condition
    check_shared_grid(x, omega);

    YoungLoeveCertificate cert;
    cert.from = from;
    cert.to = to;
    cert.p = p;
    cert.q = q;
    cert.K = k_constant(p, q);

    const std::size_t xa = x.index_of(from);
    const std::size_t xb = x.index_of(to);
    if (xa == xb) return cert;  // degenerate interval: lhs = rhs = 0

    const Eigen::VectorXd integral = young_integral(x, omega, from, to);
    const double dw = omega.value(omega.index_of(to)) - omega.value(omega.index_of(from));
    cert.lhs = (integral - x.at(xa) * dw).norm();
    cert.rhs = cert.K * pvar_value(x, q, xa, xb) *
               pvar_value(omega, p, omega.index_of(from), omega.index_of(to));
    cert.holds = cert.lhs <= cert.rhs + kYoungLoeveSlack * std::max(1.0, cert.rhs);
    return cert;
}

}  // namespace youngflow
