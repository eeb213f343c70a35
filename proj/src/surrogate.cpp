#include "sdr/surrogate.hpp"

#include <cmath>
#include <string>

#include "sdr/errors.hpp"

namespace sdr::surrogate {

namespace {

void check_mu(double mu) {
  if (!(mu > 0.0)) {
    throw ParameterError("smoothing level mu must be positive, got " + std::to_string(mu));
  }
}

void check_dims(const SpherePoint& q, const Eigen::MatrixXd& yhat) {
  if (yhat.rows() != q.dim()) {
    throw ParameterError("data row count does not match sphere dimension");
  }
}

constexpr double kTangencyTol = 1e-10;

}  // namespace

double gamma_radius(int n) {
  if (n < 2) throw ParameterError("chart requires ambient dimension >= 2");
  return std::sqrt((4.0 * n - 1.0) / (4.0 * n));
}

SpherePoint::SpherePoint(Eigen::VectorXd q) : q_(std::move(q)) {
  if (q_.size() < 1) throw ParameterError("sphere point must be nonempty");
  if (std::abs(q_.norm() - 1.0) > 1e-12) {
    throw ParameterError("sphere point must have unit norm within 1e-12");
  }
}

SpherePoint SpherePoint::normalized(const Eigen::VectorXd& v) {
  const double norm = v.norm();
  if (!(norm > 0.0)) throw ParameterError("cannot normalize the zero vector");
  return SpherePoint(v / norm);
}

ReparamPoint::ReparamPoint(Eigen::VectorXd w) : w_(std::move(w)) {
  if (w_.size() < 1) throw ParameterError("chart point must be nonempty");
  const int n = static_cast<int>(w_.size()) + 1;
  if (!(w_.norm() < gamma_radius(n))) {
    throw OutOfChartError("w lies outside the chart ball Gamma");
  }
}

double h_mu(double z, double mu) {
  check_mu(mu);
  double h, d1, d2;
  detail::h_eval(z, mu, h, d1, d2);
  return h;
}

double h_mu_d1(double z, double mu) {
  check_mu(mu);
  double h, d1, d2;
  detail::h_eval(z, mu, h, d1, d2);
  return d1;
}

double h_mu_d2(double z, double mu) {
  check_mu(mu);
  double h, d1, d2;
  detail::h_eval(z, mu, h, d1, d2);
  return d2;
}

double objective(const SpherePoint& q, const Eigen::MatrixXd& yhat, double mu) {
  check_mu(mu);
  check_dims(q, yhat);
  return detail::objective_raw(q.vec(), yhat, mu);
}

Eigen::VectorXd euclidean_grad(const SpherePoint& q, const Eigen::MatrixXd& yhat,
                               double mu) {
  check_mu(mu);
  check_dims(q, yhat);
  const Eigen::VectorXd z = yhat.transpose() * q.vec();
  Eigen::VectorXd t(z.size());
  double h, d1, d2;
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    detail::h_eval(z(k), mu, h, d1, d2);
    t(k) = d1;
  }
  return (yhat * t) / static_cast<double>(yhat.cols());
}

Eigen::VectorXd euclidean_hess_vec(const SpherePoint& q, const Eigen::MatrixXd& yhat,
                                   double mu, const Eigen::VectorXd& v) {
  check_mu(mu);
  check_dims(q, yhat);
  if (v.size() != q.dim()) throw ParameterError("direction dimension mismatch");
  const Eigen::VectorXd z = yhat.transpose() * q.vec();
  const Eigen::VectorXd yv = yhat.transpose() * v;
  Eigen::VectorXd wk(z.size());
  double h, d1, d2;
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    detail::h_eval(z(k), mu, h, d1, d2);
    wk(k) = d2 * yv(k);
  }
  return (yhat * wk) / static_cast<double>(yhat.cols());
}

Eigen::MatrixXd euclidean_hess(const SpherePoint& q, const Eigen::MatrixXd& yhat,
                               double mu) {
  check_mu(mu);
  check_dims(q, yhat);
  double value;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  detail::eval_all(q.vec(), yhat, mu, &value, &grad, &hess);
  return hess;
}

Eigen::VectorXd riemannian_grad(const SpherePoint& q, const Eigen::MatrixXd& yhat,
                                double mu) {
  const Eigen::VectorXd g = euclidean_grad(q, yhat, mu);
  return g - (q.vec().dot(g)) * q.vec();
}

Eigen::VectorXd riemannian_hess_vec(const SpherePoint& q, const Eigen::MatrixXd& yhat,
                                    double mu, const Eigen::VectorXd& v) {
  if (v.size() != q.dim()) throw ParameterError("direction dimension mismatch");
  if (std::abs(v.dot(q.vec())) > kTangencyTol * std::max(1.0, v.norm())) {
    throw ContractViolation("direction is not tangent to the sphere at q");
  }
  const Eigen::VectorXd g = euclidean_grad(q, yhat, mu);
  const Eigen::VectorXd hv = euclidean_hess_vec(q, yhat, mu, v);
  return hv - (q.vec().dot(hv)) * q.vec() - (q.vec().dot(g)) * v;
}

SpherePoint reparam_q(const ReparamPoint& w) {
  const int n = w.ambient_dim();
  Eigen::VectorXd q(n);
  q.head(n - 1) = w.vec();
  q(n - 1) = std::sqrt(1.0 - w.vec().squaredNorm());
  return SpherePoint(std::move(q));
}

ReparamPoint reparam_w(const SpherePoint& q) {
  const int n = q.dim();
  if (n < 2) throw ParameterError("chart requires ambient dimension >= 2");
  if (!(q.vec()(n - 1) > 1.0 / (2.0 * std::sqrt(static_cast<double>(n))))) {
    throw OutOfChartError("q_n <= 1/(2 sqrt n): point is outside the chart");
  }
  return ReparamPoint(q.vec().head(n - 1));
}

double g_value(const ReparamPoint& w, const Eigen::MatrixXd& x, double mu) {
  check_mu(mu);
  if (x.rows() != w.ambient_dim()) {
    throw ParameterError("data row count does not match chart dimension");
  }
  double value;
  detail::g_eval_all(w.vec(), x, mu, &value, nullptr, nullptr);
  return value;
}

Eigen::VectorXd g_grad(const ReparamPoint& w, const Eigen::MatrixXd& x, double mu) {
  check_mu(mu);
  if (x.rows() != w.ambient_dim()) {
    throw ParameterError("data row count does not match chart dimension");
  }
  double value;
  Eigen::VectorXd grad;
  detail::g_eval_all(w.vec(), x, mu, &value, &grad, nullptr);
  return grad;
}

Eigen::MatrixXd g_hess(const ReparamPoint& w, const Eigen::MatrixXd& x, double mu) {
  check_mu(mu);
  if (x.rows() != w.ambient_dim()) {
    throw ParameterError("data row count does not match chart dimension");
  }
  double value;
  Eigen::MatrixXd hess;
  detail::g_eval_all(w.vec(), x, mu, &value, nullptr, &hess);
  return hess;
}

namespace detail {

double objective_raw(const Eigen::VectorXd& q, const Eigen::MatrixXd& yhat, double mu) {
  const Eigen::VectorXd z = yhat.transpose() * q;
  double acc = 0.0;
  double h, d1, d2;
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    h_eval(z(k), mu, h, d1, d2);
    acc += h;
  }
  return acc / static_cast<double>(yhat.cols());
}

void eval_all(const Eigen::VectorXd& q, const Eigen::MatrixXd& yhat, double mu,
              double* value, Eigen::VectorXd* grad, Eigen::MatrixXd* hess) {
  const Eigen::Index n = yhat.rows();
  const Eigen::Index p = yhat.cols();
  const Eigen::VectorXd z = yhat.transpose() * q;
  Eigen::VectorXd t(p), su(p);
  double acc = 0.0;
  double h, d1, d2;
  for (Eigen::Index k = 0; k < p; ++k) {
    h_eval(z(k), mu, h, d1, d2);
    acc += h;
    t(k) = d1;
    su(k) = std::sqrt(d2);
  }
  if (value) *value = acc / static_cast<double>(p);
  if (grad) *grad = (yhat * t) / static_cast<double>(p);
  if (hess) {
    const Eigen::MatrixXd weighted = yhat.array().rowwise() * su.transpose().array();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    out.selfadjointView<Eigen::Lower>().rankUpdate(weighted, 1.0 / static_cast<double>(p));
    out.triangularView<Eigen::StrictlyUpper>() = out.transpose();
    *hess = std::move(out);
  }
}

void g_eval_all(const Eigen::VectorXd& w, const Eigen::MatrixXd& x, double mu,
                double* value, Eigen::VectorXd* grad, Eigen::MatrixXd* hess) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  const Eigen::Index m = n - 1;
  const double qn = std::sqrt(1.0 - w.squaredNorm());

  Eigen::VectorXd q(n);
  q.head(m) = w;
  q(n - 1) = qn;
  const Eigen::VectorXd z = x.transpose() * q;
  const auto xn = x.row(n - 1);

  Eigen::VectorXd t(p), u(p);
  double acc = 0.0;
  double h, d1, d2;
  for (Eigen::Index k = 0; k < p; ++k) {
    h_eval(z(k), mu, h, d1, d2);
    acc += h;
    t(k) = d1;
    u(k) = d2;
  }
  if (value) *value = acc / static_cast<double>(p);

  const double xnt = xn.dot(t);
  if (grad) {
    *grad = (x.topRows(m) * t - (xnt / qn) * w) / static_cast<double>(p);
  }
  if (hess) {
    // zeta_k = xbar_k - (x_nk/qn) w, weighted by sqrt of the second derivative
    Eigen::MatrixXd zeta = x.topRows(m) - (w / qn) * xn;
    zeta.array().rowwise() *= u.transpose().array().sqrt();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    out.selfadjointView<Eigen::Lower>().rankUpdate(zeta, 1.0 / static_cast<double>(p));
    out.triangularView<Eigen::StrictlyUpper>() = out.transpose();
    const double c = xnt / static_cast<double>(p);
    out += (-c / qn) * Eigen::MatrixXd::Identity(m, m);
    out += (-c / (qn * qn * qn)) * (w * w.transpose());
    *hess = std::move(out);
  }
}

}  // namespace detail

}  // namespace sdr::surrogate
