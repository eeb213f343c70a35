#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "sdr/errors.hpp"
#include "sdr/model.hpp"
#include "sdr/precond.hpp"
#include "sdr/rng.hpp"

using namespace sdr;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("inv_sqrt_psd basics") {
  CHECK(precond::inv_sqrt_psd(MatrixXd::Identity(4, 4)).isIdentity(1e-14));

  MatrixXd d = MatrixXd::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  const MatrixXd r = precond::inv_sqrt_psd(d);
  CHECK(r(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r(1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(r(0, 1)) <= 1e-15);

  CHECK_THROWS_AS(precond::inv_sqrt_psd(MatrixXd::Zero(3, 3)), SingularInputError);
  CHECK_THROWS_AS(precond::inv_sqrt_psd(-MatrixXd::Identity(3, 3)), SingularInputError);

  MatrixXd asym = MatrixXd::Identity(3, 3);
  asym(0, 1) = 1e-3;
  CHECK_THROWS_AS(precond::inv_sqrt_psd(asym), ParameterError);
}

TEST_CASE("inv_sqrt_psd residual on random PSD input") {
  Philox rng(13);
  MatrixXd g(20, 20);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) g(i, j) = rng.normal();
  const MatrixXd m = g * g.transpose() + 0.1 * MatrixXd::Identity(20, 20);
  const MatrixXd w = precond::inv_sqrt_psd(m);
  CHECK((w * m * w - MatrixXd::Identity(20, 20)).norm() <= 1e-8);
  CHECK((w - w.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("inv_sqrt_psd reports clamping") {
  MatrixXd d = MatrixXd::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 1e-30;
  int clamped = -1;
  (void)precond::inv_sqrt_psd(d, 1e-12, &clamped);
  CHECK(clamped == 2);
}

TEST_CASE("precondition fixes already-white data") {
  // Y with Y Y^T = p*theta*I: scaled orthogonal rows.
  const int n = 4, p = 16;
  const double theta = 0.25;
  MatrixXd y = MatrixXd::Zero(n, p);
  for (int i = 0; i < n; ++i) {
    y(i, i) = std::sqrt(static_cast<double>(p) * theta);
  }
  const auto pre = precond::precondition(y, theta);
  CHECK((pre.ybar - y).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(pre.clamp_count == 0);
}

TEST_CASE("precondition reduces an orthogonal instance to itself") {
  // With orthogonal A0 and X0 X0^T = p*theta*I, ybar equals A0 X0 exactly.
  const int n = 5, p = 25;
  const double theta = 0.2;
  const MatrixXd a0 = model::sample_dictionary(n, model::DictionaryKind::kOrthogonal, 3);
  MatrixXd x0 = MatrixXd::Zero(n, p);
  for (int i = 0; i < n; ++i) x0(i, i) = std::sqrt(static_cast<double>(p) * theta);
  const MatrixXd y = a0 * x0;
  const auto pre = precond::precondition(y, theta);
  CHECK((pre.ybar - y).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("precondition whitens a generated instance") {
  const int n = 10, p = 100000;
  const double theta = 0.3;
  const MatrixXd a0 =
      model::sample_dictionary(n, model::DictionaryKind::kConditioned, 5, 5.0);
  const MatrixXd x0 = model::sample_bg(n, p, theta, 6);
  const auto pre = precond::precondition(a0 * x0, theta);
  const MatrixXd white =
      pre.ybar * pre.ybar.transpose() / (static_cast<double>(p) * theta);
  CHECK((white - MatrixXd::Identity(n, n)).norm() <= 0.05);
}

TEST_CASE("precondition is scale-invariant") {
  const MatrixXd y = model::sample_bg(6, 500, 0.4, 7);
  const auto a = precond::precondition(y, 0.4);
  const auto b = precond::precondition(MatrixXd(3.7 * y), 0.4);
  CHECK((a.ybar - b.ybar).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("precondition rejects bad inputs") {
  const MatrixXd y = model::sample_bg(6, 500, 0.4, 7);
  CHECK_THROWS_AS(precond::precondition(y, 0.0), ParameterError);
  CHECK_THROWS_AS(precond::precondition(MatrixXd::Zero(4, 3), 0.3), ParameterError);
  CHECK_THROWS_AS(precond::precondition(MatrixXd::Zero(4, 10), 0.3), SingularInputError);
}

TEST_CASE("perturbation_norm vanishes in exact cases") {
  const int n = 6, p = 60;
  const MatrixXd x0 = model::sample_bg(n, p, 0.5, 11);

  // ybar constructed exactly as U V^T x0.
  const MatrixXd a0 =
      model::sample_dictionary(n, model::DictionaryKind::kConditioned, 12, 4.0);
  Eigen::JacobiSVD<MatrixXd> svd(a0, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const MatrixXd rot = svd.matrixU() * svd.matrixV().transpose();
  CHECK(precond::perturbation_norm(rot * x0, a0, x0) <= 1e-8);

  CHECK(precond::perturbation_norm(x0, MatrixXd::Identity(n, n), x0) <= 1e-8);
}

TEST_CASE("perturbation_norm matches the spectral norm on a constructed case") {
  const int n = 5, p = 50;
  const MatrixXd x0 = model::sample_bg(n, p, 0.8, 21);
  MatrixXd xi = MatrixXd::Zero(n, n);
  xi(0, 1) = 0.3;
  xi(2, 2) = -0.2;
  const MatrixXd ybar = x0 + xi * x0;  // a0 = I, so UV^T = I
  const double est = precond::perturbation_norm(ybar, MatrixXd::Identity(n, n), x0);
  Eigen::JacobiSVD<MatrixXd> svd(xi);
  CHECK(est == doctest::Approx(svd.singularValues()(0)).epsilon(1e-6));
}

TEST_CASE("perturbation_norm requires full-rank coefficients") {
  const int n = 4, p = 30;
  MatrixXd x0 = model::sample_bg(n, p, 0.9, 31);
  x0.row(2).setZero();
  CHECK_THROWS_AS(
      precond::perturbation_norm(x0, MatrixXd::Identity(n, n), x0),
      SingularInputError);
}

TEST_CASE("measured perturbation shrinks with more samples") {
  // Lemma-9-style trend at n = 10, kappa = 5: averaged over 5 seeds the
  // measured norm decreases from p = 1e4 to p = 1e5.
  const int n = 10;
  const double theta = 0.3;
  double avg_small = 0.0, avg_large = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const MatrixXd a0 = model::sample_dictionary(
        n, model::DictionaryKind::kConditioned, 100 + seed, 5.0);
    for (const int p : {10000, 100000}) {
      const MatrixXd x0 = model::sample_bg(n, p, theta, 200 + seed);
      const auto pre = precond::precondition(a0 * x0, theta);
      const double xi = precond::perturbation_norm(pre.ybar, a0, x0);
      (p == 10000 ? avg_small : avg_large) += xi / 5.0;
    }
  }
  CHECK(avg_large < avg_small);
}
