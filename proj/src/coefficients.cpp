#include "youngflow/coefficients.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "youngflow/rng.hpp"

namespace youngflow {

double spectral_norm(const Eigen::MatrixXd& m) {
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

MatrixFunction::MatrixFunction(Eigen::MatrixXd constant) : constant_(std::move(constant)) {}

MatrixFunction MatrixFunction::tabulated(double t0, double dt, std::vector<Eigen::MatrixXd> values) {
    if (values.empty()) throw std::domain_error("MatrixFunction: empty table");
    MatrixFunction f;
    f.t0_ = t0;
    f.dt_ = dt;
    f.table_ = std::move(values);
    f.constant_ = f.table_.front();
    return f;
}

const Eigen::MatrixXd& MatrixFunction::operator()(double t) const {
    if (is_constant()) return constant_;
    auto i = static_cast<long long>(std::llround((t - t0_) / dt_));
    i = std::max<long long>(0, std::min<long long>(i, static_cast<long long>(table_.size()) - 1));
    return table_[static_cast<std::size_t>(i)];
}

const Eigen::MatrixXd& MatrixFunction::constant_value() const {
    if (!is_constant()) throw std::logic_error("MatrixFunction: not constant");
    return constant_;
}

Eigen::Index MatrixFunction::dim() const { return constant_.rows(); }

double MatrixFunction::sup_norm(double from, double to) const {
    if (is_constant()) return spectral_norm(constant_);
    double best = 0.0;
    for (std::size_t i = 0; i < table_.size(); ++i) {
        const double t = t0_ + static_cast<double>(i) * dt_;
        if (t >= from - 1e-12 && t <= to + 1e-12) best = std::max(best, spectral_norm(table_[i]));
    }
    return best;
}

double MatrixFunction::qvar_seminorm(double q, double from, double to) const {
    if (is_constant()) return 0.0;
    // DP over grid entries within the window, increments in the 2-norm.
    std::vector<const Eigen::MatrixXd*> window;
    for (std::size_t i = 0; i < table_.size(); ++i) {
        const double t = t0_ + static_cast<double>(i) * dt_;
        if (t >= from - 1e-12 && t <= to + 1e-12) window.push_back(&table_[i]);
    }
    const std::size_t n = window.size();
    if (n < 2) return 0.0;
    std::vector<double> best(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        double bj = 0.0;
        for (std::size_t i = 0; i < j; ++i)
            bj = std::max(bj, best[i] + std::pow(spectral_norm(*window[j] - *window[i]), q));
        best[j] = bj;
    }
    return std::pow(best.back(), 1.0 / q);
}

ScalarFunction ScalarFunction::tabulated(double t0, double dt, std::vector<double> values) {
    if (values.empty()) throw std::domain_error("ScalarFunction: empty table");
    ScalarFunction f;
    f.t0_ = t0;
    f.dt_ = dt;
    f.table_ = std::move(values);
    f.constant_ = f.table_.front();
    return f;
}

double ScalarFunction::operator()(double t) const {
    if (is_constant()) return constant_;
    auto i = static_cast<long long>(std::llround((t - t0_) / dt_));
    i = std::max<long long>(0, std::min<long long>(i, static_cast<long long>(table_.size()) - 1));
    return table_[static_cast<std::size_t>(i)];
}

double ScalarFunction::sup(double from, double to) const {
    if (is_constant()) return constant_;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < table_.size(); ++i) {
        const double t = t0_ + static_cast<double>(i) * dt_;
        if (t >= from - 1e-12 && t <= to + 1e-12) best = std::max(best, table_[i]);
    }
    return best;
}

double ScalarFunction::integral(double from, double to) const {
    if (is_constant()) return constant_ * (to - from);
    const auto ia = static_cast<std::size_t>(std::llround((from - t0_) / dt_));
    const auto ib = static_cast<std::size_t>(std::llround((to - t0_) / dt_));
    if (ib >= table_.size() || ib <= ia) throw OffGridError("ScalarFunction::integral: bad window");
    double acc = 0.0;
    for (std::size_t i = ia; i < ib; ++i) acc += 0.5 * (table_[i] + table_[i + 1]) * dt_;
    return acc;
}

std::vector<CoefficientSet::HypothesisViolation> CoefficientSet::spot_check(std::uint64_t seed,
                                                                            int trials) const {
    std::vector<HypothesisViolation> out;
    Rng rng(seed);
    const auto d = static_cast<Eigen::Index>(dim);
    for (int k = 0; k < trials; ++k) {
        const double t = 5.0 * rng.uniform();
        Eigen::VectorXd x(d), y(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            x(i) = rng.gauss();
            y(i) = rng.gauss();
        }
        if (x.norm() > 0.0) {
            const Eigen::VectorXd u = x / x.norm();
            const double lhs = u.dot(drift(t) * u);
            const double rhs = -dissipativity(t);
            if (lhs > rhs + 1e-10) out.push_back({"dissipativity", t, lhs, rhs});
        }
        if (has_nonlinearity()) {
            const double lhs = (nonlinearity(t, x) - nonlinearity(t, y)).norm();
            const double rhs = lipschitz(t) * (x - y).norm();
            if (lhs > rhs * (1.0 + 1e-10) + 1e-12) out.push_back({"lipschitz", t, lhs, rhs});
        }
    }
    return out;
}

CoefficientSet make_autonomous(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                               std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> F,
                               double lipschitz, double dissipativity, const std::string& f_name) {
    if (A.rows() != A.cols() || C.rows() != C.cols() || A.rows() != C.rows())
        throw ShapeError("make_autonomous: A and C must be square and share the dimension");
    CoefficientSet coeffs;
    coeffs.dim = static_cast<int>(A.rows());
    coeffs.drift = MatrixFunction(A);
    coeffs.diffusion = MatrixFunction(C);
    coeffs.nonlinearity = std::move(F);
    coeffs.nonlinearity_name = f_name;
    coeffs.lipschitz = ScalarFunction(lipschitz);
    coeffs.dissipativity = ScalarFunction(dissipativity);
    return coeffs;
}

}  // namespace youngflow
