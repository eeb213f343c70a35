#ifndef SDR_ADM_HPP
#define SDR_ADM_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace sdr::adm {

struct AdmResult {
  Eigen::MatrixXd a;  // orthogonal iterate at stop
  Eigen::MatrixXd x;
  std::vector<double> objective_trace;  // lambda ||X||_1 + 1/2 ||AX - Y||_F^2
  double l1_score = 0.0;                // ||A^T Y||_1, entrywise
  int iters = 0;
  bool converged = false;         // ||A_k - A_{k-1}||_F <= tol before the cap
  bool trivial_solution = false;  // soft threshold zeroed X (lambda too large)
};

struct DispersionResult {
  std::vector<double> l1_scores;
  double relative_spread = 0.0;  // (max - min) / median
};

/// Elementwise shrinkage sign(x) * max(|x| - lambda, 0).
Eigen::MatrixXd soft_threshold(const Eigen::MatrixXd& m, double lambda);

/// U V^T from the full SVD: the nearest orthogonal matrix in Frobenius norm.
/// Singular-vector signs are pinned (largest-magnitude entry of each left
/// vector positive) so the factorization is deterministic across backends.
Eigen::MatrixXd polar_factor(const Eigen::MatrixXd& m);

/// Alternating minimization for the orthobasis fit: X_k = S_lambda[A^T Y],
/// A_k = polar(Y X_k^T), starting from the given orthogonal a_init; stops
/// when ||A_k - A_{k-1}||_F <= tol or after max_iters iterations.
AdmResult adm_learn(const Eigen::MatrixXd& y, double lambda,
                    const Eigen::MatrixXd& a_init, int max_iters = 10000,
                    double tol = 1e-8);

/// Same, from a Haar-random orthogonal initialization.
AdmResult adm_learn(const Eigen::MatrixXd& y, double lambda, std::uint64_t seed,
                    int max_iters = 10000, double tol = 1e-8);

/// Repeated runs from independent Haar-random inits; reports the spread of
/// the converged ||A^T Y||_1 scores.
DispersionResult dispersion_experiment(const Eigen::MatrixXd& y, double lambda,
                                       int restarts, int max_iters,
                                       std::uint64_t seed, double tol = 1e-8);

}  // namespace sdr::adm

#endif  // SDR_ADM_HPP
