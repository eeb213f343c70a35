#include "sdr/precond.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "sdr/errors.hpp"

namespace sdr::precond {

Eigen::MatrixXd inv_sqrt_psd(const Eigen::MatrixXd& m, double eps_clamp,
                             int* clamp_count) {
  if (m.rows() != m.cols()) throw ParameterError("matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw ParameterError("matrix must be symmetric within 1e-10");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (m + m.transpose()));
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double lmax = lambda(lambda.size() - 1);
  if (!(lmax > 0.0)) {
    throw SingularInputError("matrix has no positive eigenvalue");
  }

  const double floor = eps_clamp * lmax;
  int clamped = 0;
  Eigen::VectorXd inv_sqrt(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    double li = lambda(i);
    if (li < floor) {
      li = floor;
      ++clamped;
    }
    inv_sqrt(i) = 1.0 / std::sqrt(li);
  }
  if (clamp_count) *clamp_count = clamped;
  return eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().transpose();
}

PreconditionedData precondition(const Eigen::MatrixXd& y, double theta,
                                double eps_clamp) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw ParameterError("theta must lie in (0, 1] for preconditioning");
  }
  if (y.cols() < y.rows()) {
    throw ParameterError("preconditioning requires p >= n samples");
  }
  PreconditionedData out;
  out.theta_used = theta;
  const Eigen::MatrixXd gram = y * y.transpose();
  const Eigen::MatrixXd w = inv_sqrt_psd(gram, eps_clamp, &out.clamp_count);
  const double scale = std::sqrt(static_cast<double>(y.cols()) * theta);
  out.ybar = scale * (w * y);
  return out;
}

double perturbation_norm(const Eigen::MatrixXd& ybar, const Eigen::MatrixXd& a0,
                         const Eigen::MatrixXd& x0) {
  const auto n = a0.rows();
  if (a0.cols() != n || ybar.rows() != n || x0.rows() != n || ybar.cols() != x0.cols()) {
    throw ParameterError("dimension mismatch in perturbation diagnostic");
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a0, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (!(svd.singularValues()(n - 1) >
        static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
            svd.singularValues()(0))) {
    throw SingularInputError("dictionary is numerically singular");
  }
  const Eigen::MatrixXd rot = svd.matrixU() * svd.matrixV().transpose();

  const Eigen::MatrixXd gram = x0 * x0.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const double lmax = eig.eigenvalues()(n - 1);
  if (!(eig.eigenvalues()(0) >
        static_cast<double>(n) * std::numeric_limits<double>::epsilon() * lmax)) {
    throw SingularInputError("coefficients are rank-deficient; diagnostic unavailable");
  }

  // Xi = (ybar - rot*x0) x0^+, pseudoinverse realized by least squares; the
  // transpose has the same spectral norm.
  const Eigen::MatrixXd resid = ybar - rot * x0;
  const Eigen::MatrixXd xi = gram.ldlt().solve(x0 * resid.transpose());

  // Spectral norm by power iteration on Xi Xi^T.
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  double sigma = 0.0;
  for (int it = 0; it < 50; ++it) {
    Eigen::VectorXd u = xi * (xi.transpose() * v);
    const double norm = u.norm();
    if (norm == 0.0) return 0.0;
    v = u / norm;
    const double next = std::sqrt(v.dot(xi * (xi.transpose() * v)));
    if (std::abs(next - sigma) <= 1e-8 * std::max(1.0, next)) {
      return next;
    }
    sigma = next;
  }
  return sigma;
}

}  // namespace sdr::precond
