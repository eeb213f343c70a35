#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "sdr/errors.hpp"
#include "sdr/metrics.hpp"
#include "sdr/model.hpp"
#include "sdr/rng.hpp"
#include "sdr/solver.hpp"
#include "sdr/surrogate.hpp"

using namespace sdr;
using surrogate::SpherePoint;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Brute-force polar grid over the 3-ball: spherical Fibonacci directions with
// the radial quadratic minimized in closed form per direction.
double brute_force_ball_min(const VectorXd& g, const MatrixXd& h, double delta,
                            int num_dirs = 200000) {
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  double best = 0.0;  // s = 0 is feasible
  for (int k = 0; k < num_dirs; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / num_dirs;
    const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * M_PI * (k / golden - std::floor(k / golden));
    VectorXd u(3);
    u << rxy * std::cos(phi), rxy * std::sin(phi), z;
    const double a = 0.5 * u.dot(h * u);
    const double b = g.dot(u);
    // minimize a r^2 + b r over r in [0, delta]
    double r = delta;
    if (a > 0.0) r = std::min(delta, std::max(0.0, -b / (2.0 * a)));
    const double val = std::min(a * r * r + b * r, a * delta * delta + b * delta);
    best = std::min(best, val);
  }
  return best;
}

double model_value(const VectorXd& g, const MatrixXd& h, const VectorXd& s) {
  return g.dot(s) + 0.5 * s.dot(h * s);
}

MatrixXd random_symmetric(int n, Philox& rng, double scale = 1.0) {
  MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  return scale * 0.5 * (a + a.transpose());
}

}  // namespace

TEST_CASE("retract") {
  VectorXd e1 = VectorXd::Zero(3), e2 = VectorXd::Zero(3);
  e1(0) = 1.0;
  e2(1) = 1.0;
  const SpherePoint q(e1);
  CHECK((solver::retract(q, VectorXd::Zero(3)).vec() - e1).norm() == 0.0);
  const VectorXd mid = solver::retract(q, e2).vec();
  CHECK(mid(0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(mid(1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  Philox rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    VectorXd v(3), d(3);
    for (int i = 0; i < 3; ++i) {
      v(i) = rng.normal();
      d(i) = rng.normal();
    }
    const SpherePoint p = SpherePoint::normalized(v);
    d -= d.dot(p.vec()) * p.vec();
    CHECK(std::abs(solver::retract(p, d).vec().norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("tangent basis is orthonormal and orthogonal to q") {
  Philox rng(5);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + static_cast<int>(rng.uniform01() * 8);
    VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.normal();
    const VectorXd q = v / v.norm();
    const MatrixXd b = solver::tangent_basis(q);
    CHECK((b.transpose() * b - MatrixXd::Identity(n - 1, n - 1)).norm() <= 1e-12);
    CHECK((b.transpose() * q).norm() <= 1e-12);
  }
}

TEST_CASE("tr_subproblem analytic cases") {
  SUBCASE("zero gradient with PSD curvature stays put") {
    const MatrixXd h = MatrixXd::Identity(3, 3);
    const auto sol = solver::tr_subproblem(VectorXd::Zero(3), h, 0.7);
    CHECK(sol.step.norm() == 0.0);
    CHECK(sol.predicted_decrease == 0.0);
  }
  SUBCASE("newton step inside a large radius") {
    const MatrixXd h = MatrixXd::Identity(3, 3);
    VectorXd g(3);
    g << 0.3, -0.2, 0.5;
    const auto sol = solver::tr_subproblem(g, h, 10.0);
    CHECK((sol.step + g).norm() <= 1e-12);
    CHECK(!sol.on_boundary);
  }
  SUBCASE("pure negative curvature rides the bottom eigenvector") {
    MatrixXd h = MatrixXd::Zero(3, 3);
    h.diagonal() << -1.0, 1.0, 2.0;
    const auto sol = solver::tr_subproblem(VectorXd::Zero(3), h, 0.5);
    CHECK(std::abs(sol.step(0)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(sol.step(1)) <= 1e-12);
    CHECK(std::abs(sol.step(2)) <= 1e-12);
    CHECK(sol.predicted_decrease == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(sol.on_boundary);
  }
  SUBCASE("asymmetric operators are rejected") {
    MatrixXd h = MatrixXd::Identity(3, 3);
    h(0, 1) = 0.1;
    CHECK_THROWS_AS(solver::tr_subproblem(VectorXd::Zero(3), h, 1.0),
                    ContractViolation);
  }
}

TEST_CASE("tr_subproblem matches the brute-force ball oracle") {
  Philox rng(17);
  int hard_cases = 0;
  for (int rep = 0; rep < 60; ++rep) {
    MatrixXd h = random_symmetric(3, rng, 2.0);
    VectorXd g(3);
    for (int i = 0; i < 3; ++i) g(i) = rng.normal();
    double delta = 0.2 + rng.uniform01();

    if (rep % 5 == 0) {
      // Constructed hard case: g orthogonal to the bottom eigenvector.
      Eigen::SelfAdjointEigenSolver<MatrixXd> eig(h);
      h -= (eig.eigenvalues()(0) > -0.5 ? eig.eigenvalues()(0) + 0.5 : 0.0) *
           MatrixXd::Identity(3, 3);
      Eigen::SelfAdjointEigenSolver<MatrixXd> eig2(h);
      g -= eig2.eigenvectors().col(0).dot(g) * eig2.eigenvectors().col(0);
      g *= 0.05;   // keep the pseudo-step well inside the ball
      delta = 1.0;
      ++hard_cases;
    }

    const auto sol = solver::tr_subproblem(g, h, delta);
    CHECK(sol.step.norm() <= delta + 1e-10);
    const double direct = model_value(g, h, sol.step);
    CHECK(std::abs(-sol.predicted_decrease - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));
    const double oracle = brute_force_ball_min(g, h, delta);
    CHECK(direct <= oracle + 1e-3);
    CHECK(direct >= oracle - 1e-3);
  }
  CHECK(hard_cases == 12);
}

TEST_CASE("trm_solve stays near a constructed minimizer") {
  const int n = 6, p = 20000;
  const MatrixXd x0 = model::sample_bg(n, p, 0.2, 23);
  const double mu = 1e-3;
  VectorXd q0v = VectorXd::Zero(n);
  q0v(2) = 1.0;  // basis direction of the identity dictionary
  solver::TrmOptions opts;
  const auto res = solver::trm_solve(x0, mu, SpherePoint(q0v), opts);
  CHECK(res.converged);
  CHECK(res.iters <= 5);
  CHECK(std::min((res.q_star - q0v).norm(), (res.q_star + q0v).norm()) <= 1e-3);
}

TEST_CASE("trm_solve escapes the symmetric saddle between two targets") {
  const int n = 6, p = 50000;
  const MatrixXd x0 = model::sample_bg(n, p, 0.2, 29);
  const double mu = 1e-2;
  VectorXd q0v = VectorXd::Zero(n);
  q0v(0) = q0v(1) = 1.0 / std::sqrt(2.0);  // bisector of two basis directions
  solver::TrmOptions opts;
  const SpherePoint q0(q0v);
  const double f0 = surrogate::objective(q0, x0, mu);
  const auto res = solver::trm_solve(x0, mu, q0, opts);
  CHECK(res.converged);
  CHECK(res.grad_norm <= opts.grad_tol);
  CHECK(res.f_star < f0);
}

TEST_CASE("accepted trace entries never increase f and honor the decrease rule") {
  const int n = 5, p = 20000;
  const MatrixXd x0 = model::sample_bg(n, p, 0.3, 31);
  solver::TrmOptions opts;
  Philox rng(33);
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  const auto res = solver::trm_solve(x0, 1e-2, SpherePoint::normalized(v), opts);
  CHECK(res.converged);
  double last_accepted_f = std::numeric_limits<double>::infinity();
  for (const auto& e : res.trace) {
    if (e.step_kind == solver::StepKind::kRejected) continue;
    CHECK(e.f <= last_accepted_f + 1e-12);
    last_accepted_f = e.f;
  }
  CHECK(res.f_star <= last_accepted_f + 1e-12);
}

TEST_CASE("trm_solve is rotation-equivariant up to sign") {
  const int n = 5, p = 30000;
  const MatrixXd x0 = model::sample_bg(n, p, 0.25, 37);
  const MatrixXd rot = model::sample_dictionary(n, model::DictionaryKind::kOrthogonal, 41);
  Philox rng(43);
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  const VectorXd q0 = v / v.norm();

  solver::TrmOptions opts;
  const auto base = solver::trm_solve(x0, 1e-2, SpherePoint(q0), opts);
  const auto turned =
      solver::trm_solve(rot * x0, 1e-2, SpherePoint::normalized(rot * q0), opts);
  CHECK(base.converged);
  CHECK(turned.converged);
  const VectorXd mapped = rot * base.q_star;
  CHECK(std::min((turned.q_star - mapped).norm(), (turned.q_star + mapped).norm()) <=
        1e-6);
}

TEST_CASE("dedup_signed") {
  VectorXd e1 = VectorXd::Zero(4), e2 = VectorXd::Zero(4);
  e1(0) = 1.0;
  e2(1) = 1.0;
  CHECK(solver::dedup_signed({e1, VectorXd(-e1)}, 0.1).size() == 1);
  CHECK(solver::dedup_signed({e1, e2}, 0.1).size() == 2);
  CHECK_THROWS_AS(solver::dedup_signed({e1}, 0.0), ParameterError);
  CHECK_THROWS_AS(solver::dedup_signed({e1}, 1.5), ParameterError);

  // 100 noisy copies of 4 directions collapse to 4 representatives.
  Philox rng(51);
  std::vector<VectorXd> noisy;
  for (int k = 0; k < 100; ++k) {
    VectorXd v = VectorXd::Zero(4);
    v(k % 4) = 1.0;
    for (int i = 0; i < 4; ++i) v(i) += 1e-3 * rng.normal();
    v /= v.norm();
    if (rng.bernoulli(0.5)) v = -v;
    noisy.push_back(v);
  }
  CHECK(solver::dedup_signed(noisy, 1e-2).size() == 4);
}

TEST_CASE("multistart collects distinct directions and reports duplicates once") {
  const int n = 4, p = 30000;
  const MatrixXd x0 = model::sample_bg(n, p, 0.25, 53);
  solver::TrmOptions opts;
  opts.seed = 1;

  SUBCASE("single target returns after the first converged run") {
    int used = 0;
    const auto results = solver::multistart(x0, 1e-2, opts, 20, 1, 0.1, &used);
    CHECK(results.size() == 1);
    CHECK(used == 1);
  }
  SUBCASE("all four directions are found and are near basis vectors") {
    int used = 0;
    const auto results = solver::multistart(x0, 1e-2, opts, 60, n, 0.1, &used);
    CHECK(results.size() == 4);
    CHECK(used <= 60);
    MatrixXd q(n, n);
    for (int i = 0; i < n; ++i) q.col(i) = results[i].q_star;
    CHECK(metrics::recovery_error(q, MatrixXd::Identity(n, n)) <= 0.05);
    // Feeding the found representatives through dedup never inflates them.
    std::vector<VectorXd> qs;
    for (const auto& r : results) {
      qs.push_back(r.q_star);
      qs.push_back(r.q_star);
    }
    CHECK(solver::dedup_signed(qs, 0.1).size() == 4);
  }
  SUBCASE("an exhausted budget raises a partial result carrying the finds") {
    try {
      (void)solver::multistart(x0, 1e-2, opts, 2, n, 0.1, nullptr);
      FAIL("expected PartialResultError");
    } catch (const solver::PartialResultError& e) {
      CHECK(e.found().size() < 4);
    }
  }
}

TEST_CASE("recover_dictionary on a constructed white instance") {
  // X0 with X0 X0^T = p*theta*I: the preconditioner is the identity and the
  // recovered dictionary matches I up to signed permutation.
  const int n = 4, p = 64;
  const double theta = 0.25;
  MatrixXd x0 = MatrixXd::Zero(n, p);
  for (int j = 0; j < p; ++j) x0(j % n, j) = (j % 2 ? 1.0 : -1.0) * std::sqrt(theta * n);
  const MatrixXd y = x0;  // A0 = I

  solver::RecoverOptions opts;
  opts.trm.seed = 3;
  opts.max_restarts = 60;
  const auto rep = solver::recover_dictionary(y, theta, 1e-3, opts);
  CHECK(rep.distinct_directions_found == n);
  CHECK(metrics::recovery_error(rep.a_hat, MatrixXd::Identity(n, n)) <= 1e-6);
  CHECK(rep.residual <= 1e-6);
  CHECK((y - rep.a_hat * rep.x_hat).norm() / y.norm() == doctest::Approx(rep.residual));
}

TEST_CASE("recover_dictionary rejects theta outside the theorem range") {
  const MatrixXd y = model::sample_bg(4, 100, 0.3, 57);
  solver::RecoverOptions opts;
  CHECK_THROWS_AS(solver::recover_dictionary(y, 0.7, 1e-2, opts), ParameterError);
  CHECK_THROWS_AS(solver::recover_dictionary(MatrixXd::Zero(4, 2), 0.2, 1e-2, opts),
                  ParameterError);
}

TEST_CASE("option validation") {
  solver::TrmOptions opts;
  opts.eta_accept = 0.3;
  CHECK_THROWS_AS(opts.validate(), ParameterError);
  opts = {};
  opts.delta0 = 2.0;
  opts.delta_max = 1.0;
  CHECK_THROWS_AS(opts.validate(), ParameterError);
}
