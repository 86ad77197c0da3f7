#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "youngflow/sample_path.hpp"

namespace youngflow {

/// Operator 2-norm (largest singular value); the matrix norm used throughout.
double spectral_norm(const Eigen::MatrixXd& m);

/// A d x d matrix as a function of time: constant, or tabulated on a grid.
class MatrixFunction {
public:
    MatrixFunction() = default;
    explicit MatrixFunction(Eigen::MatrixXd constant);
    static MatrixFunction tabulated(double t0, double dt, std::vector<Eigen::MatrixXd> values);

    bool is_constant() const { return table_.empty(); }
    const Eigen::MatrixXd& operator()(double t) const;
    const Eigen::MatrixXd& constant_value() const;

    /// sup of the 2-norm over grid times in [from, to].
    double sup_norm(double from, double to) const;
    /// q-variation seminorm of t -> M(t) in the 2-norm; zero for constants.
    double qvar_seminorm(double q, double from, double to) const;

    Eigen::Index dim() const;

private:
    Eigen::MatrixXd constant_;
    double t0_ = 0.0, dt_ = 1.0;
    std::vector<Eigen::MatrixXd> table_;
};

/// A scalar coefficient of time (Lipschitz bound f(t), dissipativity h(t)).
class ScalarFunction {
public:
    ScalarFunction() = default;
    explicit ScalarFunction(double constant) : constant_(constant) {}
    static ScalarFunction tabulated(double t0, double dt, std::vector<double> values);

    bool is_constant() const { return table_.empty(); }
    double operator()(double t) const;
    double constant_value() const { return constant_; }
    double sup(double from, double to) const;
    /// Trapezoid quadrature of the function over [from, to].
    double integral(double from, double to) const;

private:
    double constant_ = 0.0;
    double t0_ = 0.0, dt_ = 1.0;
    std::vector<double> table_;
};

/// The triple (A(t), F(t, x), C(t)) with its dissipativity/Lipschitz metadata.
struct CoefficientSet {
    int dim = 1;
    MatrixFunction drift;      // A(t)
    MatrixFunction diffusion;  // C(t)
    /// Nonlinearity F(t, x); empty means F == 0.
    std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> nonlinearity;
    std::string nonlinearity_name = "none";
    ScalarFunction lipschitz;       // f(t)
    ScalarFunction dissipativity;   // h(t)

    bool has_nonlinearity() const { return static_cast<bool>(nonlinearity); }
    Eigen::VectorXd eval_f(double t, const Eigen::VectorXd& x) const {
        return has_nonlinearity() ? nonlinearity(t, x)
                                  : Eigen::VectorXd::Zero(x.size()).eval();
    }
    Eigen::VectorXd f_at_zero(double t = 0.0) const {
        return eval_f(t, Eigen::VectorXd::Zero(dim));
    }

    struct HypothesisViolation {
        std::string hypothesis;  // "dissipativity" or "lipschitz"
        double t;
        double lhs, rhs;
    };
    /// Spot-checks the dissipativity bound on random unit vectors and the
    /// Lipschitz bound on random pairs.
    std::vector<HypothesisViolation> spot_check(std::uint64_t seed, int trials = 200) const;
};

/// Autonomous linear-plus-Lipschitz system from constant matrices.
CoefficientSet make_autonomous(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                               std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> F = {},
                               double lipschitz = 0.0, double dissipativity = 0.0,
                               const std::string& f_name = "none");

}  // namespace youngflow
