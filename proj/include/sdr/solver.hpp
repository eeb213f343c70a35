#ifndef SDR_SOLVER_HPP
#define SDR_SOLVER_HPP

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdr/errors.hpp"
#include "sdr/surrogate.hpp"

namespace sdr::solver {

struct TrmOptions {
  double delta0 = 0.1;      // initial trust radius
  double delta_max = 1.0;
  double eta_accept = 0.1;  // acceptance ratio threshold, in (0, 1/4)
  double grad_tol = 1e-8;
  double neg_curv_tol = 1e-6;
  int max_iters = 500;
  std::uint64_t seed = 0;   // used by multistart for initial points

  void validate() const;
};

enum class StepKind { kNewtonLike, kBoundary, kRejected };

struct TraceEntry {
  double f = 0.0;
  double grad_norm = 0.0;
  double delta = 0.0;
  StepKind step_kind = StepKind::kRejected;
};

struct SolverResult {
  Eigen::VectorXd q_star;
  double f_star = 0.0;
  double grad_norm = 0.0;
  double hess_min_eig = 0.0;
  int iters = 0;
  bool converged = false;
  std::vector<TraceEntry> trace;
};

struct RecoveryReport {
  Eigen::MatrixXd a_hat;
  Eigen::MatrixXd x_hat;
  int restarts_used = 0;
  int distinct_directions_found = 0;
  double residual = 0.0;  // ||Y - Ahat Xhat||_F / ||Y||_F
};

struct RecoverOptions {
  TrmOptions trm;
  int max_restarts = 100;
  double dedup_tol = 0.1;
  bool force_theta = false;  // accept theta outside (0, 1/2)
};

/// The objective became non-finite; the trace up to the failure is attached.
class TrmNumericalFailure : public NumericalFailure {
public:
  TrmNumericalFailure(const std::string& msg, SolverResult partial)
      : NumericalFailure(msg), partial_(std::move(partial)) {}
  const SolverResult& partial() const { return partial_; }

private:
  SolverResult partial_;
};

/// Multistart ran out of restarts; carries the directions found so far.
class PartialResultError : public std::runtime_error {
public:
  PartialResultError(const std::string& msg, std::vector<SolverResult> found)
      : std::runtime_error(msg), found_(std::move(found)) {}
  const std::vector<SolverResult>& found() const { return found_; }

private:
  std::vector<SolverResult> found_;
};

class RecoveryFailure : public std::runtime_error {
public:
  explicit RecoveryFailure(const std::string& msg) : std::runtime_error(msg) {}
};

/// Metric projection retraction (q + delta) / ||q + delta||.
surrogate::SpherePoint retract(const surrogate::SpherePoint& q,
                               const Eigen::VectorXd& delta);

/// Householder completion of q to an orthonormal frame; returns the n x (n-1)
/// basis of the tangent space at q. Deterministic in q.
Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& q);

struct SubproblemSolution {
  Eigen::VectorXd step;
  double predicted_decrease = 0.0;
  bool on_boundary = false;
  double hess_min_eig = 0.0;
};

/// Exact solution of min g.s + 1/2 s^T h s over ||s|| <= delta via
/// eigendecomposition (More-Sorensen, hard case included).
SubproblemSolution tr_subproblem(const Eigen::VectorXd& g, const Eigen::MatrixXd& h,
                                 double delta);

/// Riemannian trust-region minimization of f(.; yhat) on the sphere.
SolverResult trm_solve(const Eigen::MatrixXd& yhat, double mu,
                       const surrogate::SpherePoint& q0, const TrmOptions& opts);

/// Runs trm_solve from random starts until target_count sign-distinct
/// converged minimizers are collected or max_restarts is exhausted (then a
/// PartialResultError carrying the finds is thrown). restarts_used, when
/// given, receives the number of starts consumed.
std::vector<SolverResult> multistart(const Eigen::MatrixXd& yhat, double mu,
                                     const TrmOptions& opts, int max_restarts,
                                     int target_count, double dedup_tol = 0.1,
                                     int* restarts_used = nullptr);

/// Greedy clustering of unit vectors up to sign: q, q' match iff
/// min(||q - q'||, ||q + q'||) <= tol. Returns the first member per cluster.
std::vector<Eigen::VectorXd> dedup_signed(const std::vector<Eigen::VectorXd>& points,
                                          double tol);

/// Full pipeline: precondition, collect n sign-distinct sphere minimizers,
/// read off coefficients, and fit the dictionary by least squares.
RecoveryReport recover_dictionary(const Eigen::MatrixXd& y, double theta, double mu,
                                  const RecoverOptions& opts);

}  // namespace sdr::solver

#endif  // SDR_SOLVER_HPP
