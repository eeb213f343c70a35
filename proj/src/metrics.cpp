#include "sdr/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sdr/errors.hpp"

namespace sdr::metrics {

namespace detail {

std::vector<int> hungarian_min(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n || n == 0) throw ParameterError("cost matrix must be square");
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Potentials-based shortest augmenting path, 1-indexed with a virtual 0 slot.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j]) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace detail

Alignment signed_perm_align(const Eigen::MatrixXd& a_hat, const Eigen::MatrixXd& a0,
                            bool normalize_columns) {
  const auto n = a0.rows();
  if (a0.cols() != n || a_hat.rows() != n || a_hat.cols() != n) {
    throw ParameterError("alignment requires two square matrices of equal order");
  }

  Eigen::MatrixXd lhs = a_hat;
  Eigen::MatrixXd rhs = a0;
  if (normalize_columns) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double ln = lhs.col(j).norm();
      const double rn = rhs.col(j).norm();
      if (!(ln > 0.0) || !(rn > 0.0)) {
        throw ParameterError("cannot align matrices with zero columns");
      }
      lhs.col(j) /= ln;
      rhs.col(j) /= rn;
    }
  }

  // score(i, j) = |<lhs_j, rhs_i>|; maximize by minimizing the negation.
  const Eigen::MatrixXd score = (lhs.transpose() * rhs).cwiseAbs().transpose();
  const std::vector<int> perm = detail::hungarian_min(-score);

  Alignment out;
  out.perm = perm;
  out.signs.resize(n);
  out.per_atom_dist.resize(n);
  Eigen::MatrixXd aligned(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int j = perm[i];
    const double ip = lhs.col(j).dot(rhs.col(i));
    out.signs(i) = ip < 0.0 ? -1.0 : 1.0;
    aligned.col(i) = out.signs(i) * lhs.col(j);
    out.per_atom_dist(i) = (aligned.col(i) - rhs.col(i)).norm();
  }
  out.error_fro = (aligned - rhs).norm() / rhs.norm();
  return out;
}

double recovery_error(const Eigen::MatrixXd& a_hat, const Eigen::MatrixXd& a0) {
  return signed_perm_align(a_hat, a0).error_fro;
}

double grad_check(const std::function<double(const Eigen::VectorXd&)>& f,
                  const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
                  const Eigen::VectorXd& point, double step) {
  if (!(step > 0.0)) throw ParameterError("finite-difference step must be positive");
  const Eigen::VectorXd g = grad(point);
  if (g.size() != point.size()) throw ParameterError("gradient dimension mismatch");

  double worst = 0.0;
  Eigen::VectorXd x = point;
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    x(i) = point(i) + step;
    const double fp = f(x);
    x(i) = point(i) - step;
    const double fm = f(x);
    x(i) = point(i);
    const double fd = (fp - fm) / (2.0 * step);
    if (!std::isfinite(fd) || !std::isfinite(g(i))) {
      throw NumericalFailure("non-finite value in gradient check");
    }
    const double denom = std::max(std::abs(fd), std::abs(g(i)));
    const double err = denom < 1e-8 ? std::abs(fd - g(i)) : std::abs(fd - g(i)) / denom;
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace sdr::metrics
