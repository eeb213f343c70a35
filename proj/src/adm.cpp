#include "sdr/adm.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "sdr/errors.hpp"
#include "sdr/model.hpp"
#include "sdr/rng.hpp"

namespace sdr::adm {

Eigen::MatrixXd soft_threshold(const Eigen::MatrixXd& m, double lambda) {
  if (lambda < 0.0) throw ParameterError("shrinkage parameter must be >= 0");
  return m.unaryExpr([lambda](double v) {
    const double mag = std::abs(v) - lambda;
    return mag > 0.0 ? (v < 0.0 ? -mag : mag) : 0.0;
  });
}

Eigen::MatrixXd polar_factor(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw ParameterError("polar factor requires a square matrix");
  if (!(m.cwiseAbs().maxCoeff() > 0.0)) {
    throw SingularInputError("polar factor of the zero matrix is undefined");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd u = svd.matrixU();
  Eigen::MatrixXd v = svd.matrixV();
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    Eigen::Index imax = 0;
    u.col(k).cwiseAbs().maxCoeff(&imax);
    if (u(imax, k) < 0.0) {
      u.col(k) = -u.col(k);
      v.col(k) = -v.col(k);
    }
  }
  return u * v.transpose();
}

AdmResult adm_learn(const Eigen::MatrixXd& y, double lambda,
                    const Eigen::MatrixXd& a_init, int max_iters, double tol) {
  const auto n = y.rows();
  if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
  if (!(y.cwiseAbs().maxCoeff() > 0.0)) throw ParameterError("observations must be nonzero");
  if (a_init.rows() != n || a_init.cols() != n) {
    throw ParameterError("initial dictionary must be n x n");
  }
  if ((a_init.transpose() * a_init - Eigen::MatrixXd::Identity(n, n)).norm() > 1e-8) {
    throw ParameterError("initial dictionary must be orthogonal");
  }
  if (max_iters < 1) throw ParameterError("max_iters must be >= 1");

  AdmResult res;
  res.a = a_init;
  res.objective_trace.reserve(static_cast<std::size_t>(std::min(max_iters, 1 << 20)));

  for (int k = 0; k < max_iters; ++k) {
    res.x = soft_threshold(res.a.transpose() * y, lambda);
    if (!(res.x.cwiseAbs().maxCoeff() > 0.0)) {
      // Fixed point: with X = 0, the dictionary update leaves A unchanged.
      res.trivial_solution = true;
      res.objective_trace.push_back(0.5 * y.squaredNorm());
      res.iters = k + 1;
      break;
    }
    const Eigen::MatrixXd a_next = polar_factor(y * res.x.transpose());
    const double obj = lambda * res.x.cwiseAbs().sum() +
                       0.5 * (a_next * res.x - y).squaredNorm();
    res.objective_trace.push_back(obj);
    const double da = (a_next - res.a).norm();
    res.a = a_next;
    res.iters = k + 1;
    if (da <= tol) {
      res.converged = true;
      break;
    }
  }
  res.l1_score = (res.a.transpose() * y).cwiseAbs().sum();
  return res;
}

AdmResult adm_learn(const Eigen::MatrixXd& y, double lambda, std::uint64_t seed,
                    int max_iters, double tol) {
  const int n = static_cast<int>(y.rows());
  const Eigen::MatrixXd a0 =
      model::sample_dictionary(n, model::DictionaryKind::kOrthogonal, seed);
  return adm_learn(y, lambda, a0, max_iters, tol);
}

DispersionResult dispersion_experiment(const Eigen::MatrixXd& y, double lambda,
                                       int restarts, int max_iters,
                                       std::uint64_t seed, double tol) {
  if (restarts < 2) throw ParameterError("dispersion needs at least 2 restarts");
  DispersionResult out;
  out.l1_scores.reserve(static_cast<std::size_t>(restarts));
  for (int r = 0; r < restarts; ++r) {
    const AdmResult res =
        adm_learn(y, lambda, mix64(seed, static_cast<std::uint64_t>(r)), max_iters, tol);
    out.l1_scores.push_back(res.l1_score);
  }
  std::vector<double> sorted = out.l1_scores;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const double median =
      m % 2 == 1 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  out.relative_spread = (sorted.back() - sorted.front()) / median;
  return out;
}

}  // namespace sdr::adm
