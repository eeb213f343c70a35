#ifndef SDR_SURROGATE_HPP
#define SDR_SURROGATE_HPP

#include <Eigen/Core>
#include <cmath>

namespace sdr::surrogate {

/// Radius of the chart ball Gamma in R^{n-1}: sqrt((4n-1)/(4n)).
double gamma_radius(int n);

/// Unit vector on S^{n-1}; the constructor enforces ||q|| = 1 within 1e-12.
class SpherePoint {
public:
  explicit SpherePoint(Eigen::VectorXd q);
  static SpherePoint normalized(const Eigen::VectorXd& v);

  const Eigen::VectorXd& vec() const { return q_; }
  int dim() const { return static_cast<int>(q_.size()); }

private:
  Eigen::VectorXd q_;
};

/// Chart coordinate w in the open ball Gamma subset of R^{n-1}; enforces
/// ||w|| < gamma_radius(n), which keeps q_n(w) = sqrt(1-||w||^2) > 1/(2 sqrt n).
class ReparamPoint {
public:
  explicit ReparamPoint(Eigen::VectorXd w);

  const Eigen::VectorXd& vec() const { return w_; }
  int ambient_dim() const { return static_cast<int>(w_.size()) + 1; }

private:
  Eigen::VectorXd w_;
};

/// Smoothed l1 surrogate mu*log cosh(z/mu), evaluated through the
/// overflow-safe identity |z| + mu*log((1 + exp(-2|z|/mu))/2).
double h_mu(double z, double mu);
/// First derivative tanh(z/mu), in (-1, 1).
double h_mu_d1(double z, double mu);
/// Second derivative (1 - tanh^2(z/mu))/mu, in (0, 1/mu]; computed as
/// 4 e^{-2|z|/mu} / (mu (1 + e^{-2|z|/mu})^2) which is cancellation-free.
double h_mu_d2(double z, double mu);

/// f(q; Yhat) = (1/p) sum_k h_mu(q . yhat_k).
double objective(const SpherePoint& q, const Eigen::MatrixXd& yhat, double mu);

Eigen::VectorXd euclidean_grad(const SpherePoint& q, const Eigen::MatrixXd& yhat,
                               double mu);
Eigen::VectorXd euclidean_hess_vec(const SpherePoint& q, const Eigen::MatrixXd& yhat,
                                   double mu, const Eigen::VectorXd& v);
/// Dense ambient Hessian; fine at desk-scale n, use hess_vec beyond n ~ 500.
Eigen::MatrixXd euclidean_hess(const SpherePoint& q, const Eigen::MatrixXd& yhat,
                               double mu);

/// Projected gradient (I - qq*) grad f(q); orthogonal to q.
Eigen::VectorXd riemannian_grad(const SpherePoint& q, const Eigen::MatrixXd& yhat,
                                double mu);
/// (I - qq*)(hess f . v) - (q . grad f) v for tangent v (v.q within 1e-10).
Eigen::VectorXd riemannian_hess_vec(const SpherePoint& q, const Eigen::MatrixXd& yhat,
                                    double mu, const Eigen::VectorXd& v);

/// q(w) = (w, sqrt(1 - ||w||^2)); inverse of reparam_w on Gamma.
SpherePoint reparam_q(const ReparamPoint& w);
/// Defined for q_n > 1/(2 sqrt n); returns the first n-1 coordinates.
ReparamPoint reparam_w(const SpherePoint& q);

/// Objective, gradient, and Hessian of g(w; X) = f(q(w); X) in chart
/// coordinates, averaged over the p columns of x.
double g_value(const ReparamPoint& w, const Eigen::MatrixXd& x, double mu);
Eigen::VectorXd g_grad(const ReparamPoint& w, const Eigen::MatrixXd& x, double mu);
Eigen::MatrixXd g_hess(const ReparamPoint& w, const Eigen::MatrixXd& x, double mu);

namespace detail {

// Elementwise kernel: one exp serves value, first and second derivative.
inline void h_eval(double z, double mu, double& h, double& d1, double& d2) {
  const double az = std::abs(z);
  const double e = 2.0 * az / mu;
  const double s = std::exp(-e);
  const double em = -std::expm1(-e);  // 1 - s, no cancellation
  h = az + mu * (std::log1p(s) - 0.6931471805599453094172321214581766);
  const double t = em / (2.0 - em);
  d1 = z < 0.0 ? -t : t;
  d2 = 4.0 * s / (mu * (2.0 - em) * (2.0 - em));
}

// Raw-matrix versions used by the solver and geometry hot loops; q and w are
// assumed valid (unit norm / inside Gamma).
double objective_raw(const Eigen::VectorXd& q, const Eigen::MatrixXd& yhat, double mu);
void eval_all(const Eigen::VectorXd& q, const Eigen::MatrixXd& yhat, double mu,
              double* value, Eigen::VectorXd* grad, Eigen::MatrixXd* hess);
void g_eval_all(const Eigen::VectorXd& w, const Eigen::MatrixXd& x, double mu,
                double* value, Eigen::VectorXd* grad, Eigen::MatrixXd* hess);

}  // namespace detail

}  // namespace sdr::surrogate

#endif  // SDR_SURROGATE_HPP
