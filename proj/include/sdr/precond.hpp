#ifndef SDR_PRECOND_HPP
#define SDR_PRECOND_HPP

#include <Eigen/Core>

namespace sdr::precond {

struct PreconditionedData {
  Eigen::MatrixXd ybar;   // sqrt(p theta) (Y Y^T)^{-1/2} Y
  int clamp_count = 0;    // eigenvalues floored while inverting Y Y^T
  double theta_used = 0.0;
};

/// Inverse square root of a symmetric PSD matrix via eigendecomposition.
/// Eigenvalues below eps_clamp * lambda_max are floored at that level; the
/// number of floored eigenvalues is reported through clamp_count when given.
Eigen::MatrixXd inv_sqrt_psd(const Eigen::MatrixXd& m, double eps_clamp = 1e-12,
                             int* clamp_count = nullptr);

/// Whitens the observations so the effective dictionary is near-orthogonal.
PreconditionedData precondition(const Eigen::MatrixXd& y, double theta,
                                double eps_clamp = 1e-12);

/// Measured operator norm of the preconditioning perturbation: with
/// U S V^T = SVD(a0), returns ||(ybar - U V^T x0) x0^+|| estimated by power
/// iteration (50 iterations, tolerance 1e-8). Diagnostic only; requires x0
/// to have full row rank.
double perturbation_norm(const Eigen::MatrixXd& ybar, const Eigen::MatrixXd& a0,
                         const Eigen::MatrixXd& x0);

}  // namespace sdr::precond

#endif  // SDR_PRECOND_HPP
