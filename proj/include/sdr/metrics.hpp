#ifndef SDR_METRICS_HPP
#define SDR_METRICS_HPP

#include <Eigen/Core>
#include <functional>
#include <vector>

namespace sdr::metrics {

/// Best signed-permutation match between an estimated dictionary and the
/// ground truth, quotienting the sign/scale/permutation symmetry.
struct Alignment {
  std::vector<int> perm;          // perm[i] = a_hat column matched to a0 column i
  Eigen::VectorXd signs;          // +1/-1 making matched inner products positive
  double error_fro = 0.0;         // ||Ahat P S - A0||_F / ||A0||_F after matching
  Eigen::VectorXd per_atom_dist;  // column-wise distance after sign fix
};

/// Optimal assignment maximizing sum_i |<ahat_{perm[i]}, a0_i>| via the
/// Hungarian algorithm on the absolute inner-product score matrix. Columns
/// are unit-normalized before matching unless normalize_columns is false.
Alignment signed_perm_align(const Eigen::MatrixXd& a_hat, const Eigen::MatrixXd& a0,
                            bool normalize_columns = true);

/// Scalar summary: error_fro of the optimal signed-permutation alignment.
double recovery_error(const Eigen::MatrixXd& a_hat, const Eigen::MatrixXd& a0);

/// Central-difference check of an analytic gradient; returns the worst
/// per-coordinate relative discrepancy (absolute when both values are tiny).
double grad_check(const std::function<double(const Eigen::VectorXd&)>& f,
                  const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
                  const Eigen::VectorXd& point, double step);

namespace detail {
/// Assignment minimizing total cost over a square matrix; ties go to the
/// lowest column index. Returns row -> column.
std::vector<int> hungarian_min(const Eigen::MatrixXd& cost);
}  // namespace detail

}  // namespace sdr::metrics

#endif  // SDR_METRICS_HPP
