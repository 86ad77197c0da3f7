#include "youngflow/models.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "youngflow/solver.hpp"

namespace youngflow {

void SirParams::validate() const {
    const double vals[] = {q, a, b, c, gamma, sigma1, sigma2, sigma3};
    for (double v : vals)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::domain_error("SirParams: all parameters must be nonnegative and finite");
}

double SirParams::sigma_max() const { return std::max({sigma1, sigma2, sigma3}); }

namespace {

// Incidence fraction S I / (S + I + R), zero at the origin of the orthant.
double incidence(double s, double i, double r) {
    const double total = s + i + r;
    if (total == 0.0) return 0.0;
    return s * i / total;
}

}  // namespace

SirSystem sir_build(const SirParams& params) {
    params.validate();
    if (!(params.b + params.c > 0.0))
        throw std::domain_error("sir_build: b + c must be positive (diagonalization divides by it)");

    SirSystem sys;
    const double a = params.a, b = params.b, c = params.c, gamma = params.gamma, q = params.q;

    sys.A << -a, b, 0.0,
             0.0, -(a + b + c), 0.0,
             0.0, c, -a;
    sys.D << -a, 0.0, 0.0,
             0.0, -a, 0.0,
             0.0, 0.0, -(a + b + c);
    sys.P << 1.0, 0.0, b / (b + c),
             0.0, 0.0, -1.0,
             0.0, 1.0, c / (b + c);
    sys.Pinv << 1.0, b / (b + c), 0.0,
                0.0, c / (b + c), 1.0,
                0.0, -1.0, 0.0;
    sys.C << params.sigma1, 0.0, 0.0,
             0.0, params.sigma2, 0.0,
             0.0, 0.0, params.sigma3;
    sys.C_transformed = sys.Pinv * sys.C * sys.P;

    auto F_original = [q, gamma](double, const Eigen::VectorXd& y) {
        Eigen::VectorXd out(3);
        const double frac = gamma * incidence(y(0), y(1), y(2));
        out << q - frac, frac, 0.0;
        return out;
    };
    const Eigen::Matrix3d P = sys.P;
    const Eigen::Matrix3d Pinv = sys.Pinv;
    auto F_transformed = [F_original, P, Pinv](double t, const Eigen::VectorXd& x) {
        return (Pinv * F_original(t, P * x)).eval();
    };

    const double sqrt3 = std::sqrt(3.0);
    sys.original = make_autonomous(sys.A, sys.C, F_original, sqrt3 * gamma, a, "sir");
    sys.transformed = make_autonomous(sys.D, sys.C_transformed, F_transformed,
                                      4.0 * sqrt3 * gamma, a, "sir-transformed");
    return sys;
}

std::optional<double> sir_positivity_probe(const SirParams& params, const SamplePath& omega,
                                           const Eigen::Vector3d& x0, double horizon) {
    for (int i = 0; i < 3; ++i)
        if (x0(i) < 0.0) throw std::domain_error("sir_positivity_probe: x0 must be componentwise >= 0");
    const SirSystem sys = sir_build(params);
    const SamplePath traj = solve_young_sde(sys.original, omega, x0, 0.0, horizon);
    for (std::size_t k = 0; k < traj.size(); ++k)
        for (std::size_t c = 0; c < 3; ++c)
            if (traj.component(k, c) < 0.0) return traj.time(k);
    return std::nullopt;
}

LyapunovTransform lyapunov_transform(const Eigen::MatrixXd& A, const Eigen::MatrixXd& D) {
    const Eigen::Index d = A.rows();
    if (A.cols() != d || D.rows() != d || D.cols() != d)
        throw ShapeError("lyapunov_transform: dimension mismatch");
    if (!D.isApprox(D.transpose(), 1e-12))
        throw std::domain_error("lyapunov_transform: D must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dsolve(D);
    if (dsolve.eigenvalues().maxCoeff() >= 0.0)
        throw std::domain_error("lyapunov_transform: D must be negative definite");
    const double lambda_d = -dsolve.eigenvalues().maxCoeff();

    // vec(A^T X + X A) = (I (x) A^T + A^T (x) I) vec(X) with column-major vec.
    const Eigen::Index n = d * d;
    Eigen::MatrixXd kron = Eigen::MatrixXd::Zero(n, n);
    const Eigen::MatrixXd At = A.transpose();
    for (Eigen::Index j = 0; j < d; ++j)
        kron.block(j * d, j * d, d, d) += At;                        // I (x) A^T
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index k = 0; k < d; ++k)
                kron(j * d + i, k * d + i) += At(j, k);              // A^T (x) I
    Eigen::VectorXd rhs(n);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) rhs(j * d + i) = 2.0 * D(i, j);

    Eigen::FullPivLU<Eigen::MatrixXd> lu(kron);
    if (!lu.isInvertible())
        throw std::domain_error("lyapunov_transform: Lyapunov operator singular (A not Hurwitz)");
    const Eigen::VectorXd xvec = lu.solve(rhs);

    Eigen::MatrixXd X(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) X(i, j) = xvec(j * d + i);
    X = 0.5 * (X + X.transpose());  // symmetrize roundoff

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> xsolve(X);
    if (xsolve.eigenvalues().minCoeff() <= 0.0)
        throw std::runtime_error("lyapunov_transform: solution not positive definite (A not Hurwitz)");

    LyapunovTransform out;
    out.Q = xsolve.eigenvectors() *
            xsolve.eigenvalues().cwiseSqrt().asDiagonal() *
            xsolve.eigenvectors().transpose();
    out.lambda_ratio = lambda_d / std::pow(spectral_norm(out.Q), 2.0);
    return out;
}

CoefficientSet transform_coefficients(const CoefficientSet& coeffs, const Eigen::MatrixXd& Q,
                                      double dissipativity) {
    if (!coeffs.drift.is_constant() || !coeffs.diffusion.is_constant())
        throw std::domain_error("transform_coefficients: constant A, C required");
    const Eigen::MatrixXd Qinv = Q.inverse();
    const double cond = spectral_norm(Q) * spectral_norm(Qinv);

    CoefficientSet out;
    out.dim = coeffs.dim;
    out.drift = MatrixFunction((Q * coeffs.drift.constant_value() * Qinv).eval());
    out.diffusion = MatrixFunction((Q * coeffs.diffusion.constant_value() * Qinv).eval());
    if (coeffs.has_nonlinearity()) {
        auto F = coeffs.nonlinearity;
        const Eigen::MatrixXd Qc = Q, Qi = Qinv;
        out.nonlinearity = [F, Qc, Qi](double t, const Eigen::VectorXd& x) {
            return (Qc * F(t, Qi * x)).eval();
        };
    }
    out.nonlinearity_name = coeffs.nonlinearity_name;
    out.lipschitz = ScalarFunction(cond * coeffs.lipschitz.constant_value());
    out.dissipativity = ScalarFunction(dissipativity);
    return out;
}

}  // namespace youngflow
