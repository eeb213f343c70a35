#include "sdr/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "sdr/precond.hpp"
#include "sdr/rng.hpp"

namespace sdr::solver {

namespace {

using surrogate::SpherePoint;

// Predicted model decrease -(g.p + 1/2 p^T H p) in eigen-coordinates.
double model_decrease(const Eigen::VectorXd& gbar, const Eigen::VectorXd& lambda,
                      const Eigen::VectorXd& pbar) {
  double lin = 0.0, quad = 0.0;
  for (Eigen::Index i = 0; i < pbar.size(); ++i) {
    lin += gbar(i) * pbar(i);
    quad += lambda(i) * pbar(i) * pbar(i);
  }
  return -(lin + 0.5 * quad);
}

Eigen::VectorXd shifted_inverse_step(const Eigen::VectorXd& gbar,
                                     const Eigen::VectorXd& lambda, double sigma) {
  Eigen::VectorXd pbar(gbar.size());
  for (Eigen::Index i = 0; i < gbar.size(); ++i) {
    pbar(i) = -gbar(i) / (lambda(i) + sigma);
  }
  return pbar;
}

Eigen::VectorXd random_unit_vector(int n, std::uint64_t seed) {
  Philox rng(seed);
  Eigen::VectorXd v(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) v(i) = rng.normal();
    norm = v.norm();
  } while (!(norm > 0.0));
  return v / norm;
}

bool sign_distinct(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
  return std::min((a - b).norm(), (a + b).norm()) > tol;
}

}  // namespace

void TrmOptions::validate() const {
  if (!(delta0 > 0.0 && delta0 <= delta_max)) {
    throw ParameterError("trust radii must satisfy 0 < delta0 <= delta_max");
  }
  if (!(eta_accept > 0.0 && eta_accept < 0.25)) {
    throw ParameterError("eta_accept must lie in (0, 1/4)");
  }
  if (!(grad_tol > 0.0) || !(neg_curv_tol > 0.0)) {
    throw ParameterError("tolerances must be positive");
  }
  if (max_iters < 1) throw ParameterError("max_iters must be >= 1");
}

SpherePoint retract(const SpherePoint& q, const Eigen::VectorXd& delta) {
  if (delta.size() != q.dim()) throw ParameterError("step dimension mismatch");
  const Eigen::VectorXd moved = q.vec() + delta;
  const double norm = moved.norm();
  if (!(norm > 0.0)) {
    throw NumericalFailure("degenerate retraction: q + delta vanished");
  }
  return SpherePoint(moved / norm);
}

Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& q) {
  const int n = static_cast<int>(q.size());
  if (n < 2) throw ParameterError("tangent basis requires dimension >= 2");
  // Householder vector mapping q to -sign(q_n) e_n; the reflector's first
  // n-1 columns span the tangent space at q.
  Eigen::VectorXd v = q;
  const double sign = q(n - 1) < 0.0 ? -1.0 : 1.0;
  v(n - 1) += sign;
  const double vv = v.squaredNorm();
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(n, n - 1);
  basis.noalias() -= (2.0 / vv) * v * v.head(n - 1).transpose();
  return basis;
}

SubproblemSolution tr_subproblem(const Eigen::VectorXd& g, const Eigen::MatrixXd& h,
                                 double delta) {
  if (!(delta > 0.0)) throw ParameterError("trust radius must be positive");
  const auto m = g.size();
  if (h.rows() != m || h.cols() != m) throw ParameterError("operator dimension mismatch");
  const double hscale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-8 * hscale) {
    throw ContractViolation("trust-region operator is not symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (h + h.transpose()));
  const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
  const Eigen::MatrixXd& basis = eig.eigenvectors();
  const Eigen::VectorXd gbar = basis.transpose() * g;
  const double lmin = lambda(0);

  SubproblemSolution out;
  out.hess_min_eig = lmin;

  // Interior Newton point when the model is convex and the step fits.
  if (lmin > 0.0) {
    const Eigen::VectorXd pbar = shifted_inverse_step(gbar, lambda, 0.0);
    if (pbar.norm() <= delta) {
      out.step = basis * pbar;
      out.predicted_decrease = std::max(0.0, model_decrease(gbar, lambda, pbar));
      out.on_boundary = false;
      return out;
    }
  }

  // Boundary solution: find sigma >= max(0, -lmin) with ||p(sigma)|| = delta.
  const double sigma_floor = std::max(0.0, -lmin);
  const double gap = 1e-12 * std::max(1.0, std::abs(lmin));

  // Hard case: the gradient has no component on the bottom eigenspace and the
  // pseudo-inverse step already fits inside the ball.
  double active_mass = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (lambda(i) - lmin <= gap) active_mass += gbar(i) * gbar(i);
  }
  if (lmin <= 0.0 && active_mass <= 1e-24 * std::max(1.0, gbar.squaredNorm())) {
    Eigen::VectorXd pbar = Eigen::VectorXd::Zero(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (lambda(i) - lmin > gap) pbar(i) = -gbar(i) / (lambda(i) + sigma_floor);
    }
    const double rest = pbar.norm();
    if (rest <= delta) {
      const double tau = std::sqrt(std::max(0.0, delta * delta - rest * rest));
      Eigen::VectorXd dir = basis.col(0);
      // Deterministic sign: largest-magnitude entry positive.
      Eigen::Index imax = 0;
      dir.cwiseAbs().maxCoeff(&imax);
      if (dir(imax) < 0.0) dir = -dir;
      pbar(0) += 0.0;  // tau carried in ambient coordinates below
      out.step = basis * pbar + tau * dir;
      Eigen::VectorXd pfull = pbar;
      pfull(0) += tau * (basis.col(0).dot(dir) >= 0.0 ? 1.0 : -1.0);
      out.predicted_decrease = std::max(0.0, model_decrease(gbar, lambda, pfull));
      out.on_boundary = true;
      return out;
    }
  }

  // Safeguarded Newton iteration on the secular equation.
  double lo = sigma_floor;
  double hi = sigma_floor + gbar.norm() / delta + gap;
  while ((shifted_inverse_step(gbar, lambda, hi)).norm() > delta) hi = 2.0 * hi + 1.0;
  double sigma = std::min(hi, lo + gbar.norm() / delta);
  if (!(sigma > lo)) sigma = 0.5 * (lo + hi);
  Eigen::VectorXd pbar = shifted_inverse_step(gbar, lambda, sigma);
  for (int it = 0; it < 100; ++it) {
    const double norm = pbar.norm();
    if (std::abs(norm - delta) <= 1e-12 * delta) break;
    if (norm > delta) {
      lo = sigma;
    } else {
      hi = sigma;
    }
    double dnorm2 = 0.0;  // d/dsigma ||p||^2 = -2 sum gbar_i^2/(lambda_i+sigma)^3
    for (Eigen::Index i = 0; i < m; ++i) {
      const double den = lambda(i) + sigma;
      dnorm2 -= 2.0 * gbar(i) * gbar(i) / (den * den * den);
    }
    const double dnorm = dnorm2 / (2.0 * norm);
    // Newton step on 1/||p|| - 1/delta, the standard well-behaved form.
    double next = sigma - (1.0 / delta - 1.0 / norm) * (norm * norm / dnorm) / norm;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    sigma = next;
    pbar = shifted_inverse_step(gbar, lambda, sigma);
  }
  // Exact rescale onto the boundary guards the ||step|| <= delta contract.
  if (pbar.norm() > 0.0) pbar *= delta / pbar.norm();
  out.step = basis * pbar;
  out.predicted_decrease = std::max(0.0, model_decrease(gbar, lambda, pbar));
  out.on_boundary = true;
  return out;
}

SolverResult trm_solve(const Eigen::MatrixXd& yhat, double mu, const SpherePoint& q0,
                       const TrmOptions& opts) {
  opts.validate();
  if (yhat.rows() != q0.dim()) throw ParameterError("data row count mismatch");
  const int n = q0.dim();
  if (n < 2) throw ParameterError("sphere optimization requires n >= 2");

  SolverResult res;
  Eigen::VectorXd q = q0.vec();
  double delta = opts.delta0;

  double f = 0.0;
  Eigen::VectorXd egrad;
  Eigen::MatrixXd ehess;
  double gnorm = 0.0;
  double lmin = 0.0;

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    surrogate::detail::eval_all(q, yhat, mu, &f, &egrad, &ehess);
    if (!std::isfinite(f)) {
      res.q_star = q;
      res.iters = iter;
      throw TrmNumericalFailure("objective is not finite", std::move(res));
    }
    const double qg = q.dot(egrad);
    gnorm = (egrad - qg * q).norm();

    const Eigen::MatrixXd basis = tangent_basis(q);
    const Eigen::VectorXd gt = basis.transpose() * egrad;
    Eigen::MatrixXd ht = basis.transpose() * ehess * basis;
    ht.diagonal().array() -= qg;

    const SubproblemSolution sub = tr_subproblem(gt, ht, delta);
    lmin = sub.hess_min_eig;
    if (gnorm <= opts.grad_tol && lmin >= -opts.neg_curv_tol) {
      res.converged = true;
      res.iters = iter;
      break;
    }
    if (!(sub.predicted_decrease > 0.0)) {
      res.iters = iter;  // exact solver found no descent; stationary enough
      break;
    }

    const Eigen::VectorXd ambient_step = basis * sub.step;
    const SpherePoint moved = retract(SpherePoint(q), ambient_step);
    const double f_new = surrogate::detail::objective_raw(moved.vec(), yhat, mu);
    const double rho = (f - f_new) / sub.predicted_decrease;

    TraceEntry entry;
    entry.f = f;
    entry.grad_norm = gnorm;
    entry.delta = delta;
    if (std::isfinite(rho) && rho > opts.eta_accept) {
      q = moved.vec();
      entry.step_kind = sub.on_boundary ? StepKind::kBoundary : StepKind::kNewtonLike;
    } else {
      entry.step_kind = StepKind::kRejected;
    }
    res.trace.push_back(entry);

    if (!std::isfinite(rho) || rho < 0.25) {
      delta *= 0.25;
    } else if (rho > 0.75 && sub.on_boundary) {
      delta = std::min(2.0 * delta, opts.delta_max);
    }
    res.iters = iter + 1;
  }

  // Final state at the returned iterate.
  surrogate::detail::eval_all(q, yhat, mu, &f, &egrad, &ehess);
  const double qg = q.dot(egrad);
  gnorm = (egrad - qg * q).norm();
  const Eigen::MatrixXd basis = tangent_basis(q);
  Eigen::MatrixXd ht = basis.transpose() * ehess * basis;
  ht.diagonal().array() -= qg;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ht);
  lmin = eig.eigenvalues()(0);

  res.q_star = q;
  res.f_star = f;
  res.grad_norm = gnorm;
  res.hess_min_eig = lmin;
  res.converged = gnorm <= opts.grad_tol && lmin >= -opts.neg_curv_tol;
  return res;
}

std::vector<SolverResult> multistart(const Eigen::MatrixXd& yhat, double mu,
                                     const TrmOptions& opts, int max_restarts,
                                     int target_count, double dedup_tol,
                                     int* restarts_used) {
  opts.validate();
  const int n = static_cast<int>(yhat.rows());
  if (target_count < 1 || target_count > n) {
    throw ParameterError("target_count must lie in [1, n]");
  }
  if (max_restarts < 1) throw ParameterError("max_restarts must be >= 1");

  std::vector<SolverResult> found;
  int used = 0;
  for (int r = 0; r < max_restarts; ++r) {
    used = r + 1;
    const SpherePoint q0(random_unit_vector(n, mix64(opts.seed, static_cast<std::uint64_t>(r))));
    SolverResult res = trm_solve(yhat, mu, q0, opts);
    if (!res.converged) continue;
    bool fresh = true;
    for (const auto& have : found) {
      if (!sign_distinct(res.q_star, have.q_star, dedup_tol)) {
        fresh = false;
        break;
      }
    }
    if (fresh) found.push_back(std::move(res));
    if (static_cast<int>(found.size()) >= target_count) {
      if (restarts_used) *restarts_used = used;
      return found;
    }
  }
  if (restarts_used) *restarts_used = used;
  throw PartialResultError("multistart found " + std::to_string(found.size()) + " of " +
                               std::to_string(target_count) + " directions",
                           std::move(found));
}

std::vector<Eigen::VectorXd> dedup_signed(const std::vector<Eigen::VectorXd>& points,
                                          double tol) {
  if (!(tol > 0.0 && tol < std::sqrt(2.0))) {
    throw ParameterError("dedup tolerance must lie in (0, sqrt 2)");
  }
  std::vector<Eigen::VectorXd> reps;
  for (const auto& p : points) {
    bool fresh = true;
    for (const auto& r : reps) {
      if (!sign_distinct(p, r, tol)) {
        fresh = false;
        break;
      }
    }
    if (fresh) reps.push_back(p);
  }
  return reps;
}

RecoveryReport recover_dictionary(const Eigen::MatrixXd& y, double theta, double mu,
                                  const RecoverOptions& opts) {
  const int n = static_cast<int>(y.rows());
  if (y.cols() < n) throw ParameterError("recovery requires p >= n samples");
  if (!opts.force_theta && !(theta > 0.0 && theta < 0.5)) {
    throw ParameterError("theta outside (0, 1/2); pass force_theta to override");
  }

  const precond::PreconditionedData pre = precond::precondition(y, theta);

  int restarts_used = 0;
  const std::vector<SolverResult> results =
      multistart(pre.ybar, mu, opts.trm, opts.max_restarts, n, opts.dedup_tol,
                 &restarts_used);

  Eigen::MatrixXd directions(n, n);
  for (int i = 0; i < n; ++i) directions.col(i) = results[i].q_star;

  RecoveryReport report;
  report.restarts_used = restarts_used;
  report.distinct_directions_found = static_cast<int>(results.size());
  report.x_hat = directions.transpose() * pre.ybar;

  const Eigen::MatrixXd gram = report.x_hat * report.x_hat.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (!(eig.eigenvalues()(0) >
        static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
            eig.eigenvalues()(n - 1))) {
    throw RecoveryFailure("recovered coefficients are numerically singular");
  }
  report.a_hat = gram.ldlt().solve(report.x_hat * y.transpose()).transpose();
  report.residual = (y - report.a_hat * report.x_hat).norm() / y.norm();
  return report;
}

}  // namespace sdr::solver
