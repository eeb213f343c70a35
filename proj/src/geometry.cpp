#include "sdr/geometry.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "sdr/errors.hpp"
#include "sdr/rng.hpp"

namespace sdr::geometry {

namespace {

constexpr double kR1Floor = 1e-6;

Eigen::VectorXd random_direction(int dim, Philox& rng) {
  Eigen::VectorXd v(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v(i) = rng.normal();
    norm = v.norm();
  } while (!(norm > 0.0));
  return v / norm;
}

// Per-sample radial-curvature and Hessian pieces shared by probe-style code.
struct SampleTerms {
  double t = 0.0;    // tanh(z/mu)
  double d2 = 0.0;   // second derivative of the surrogate at z
  double zw = 0.0;   // zeta . w
  double xn = 0.0;   // last coordinate of the sample
};

SampleTerms column_terms(const Eigen::VectorXd& w, double qn, double mu,
                         const Eigen::VectorXd& x) {
  const auto m = w.size();
  SampleTerms s;
  s.xn = x(m);
  const double z = w.dot(x.head(m)) + qn * s.xn;
  double h;
  surrogate::detail::h_eval(z, mu, h, s.t, s.d2);
  s.zw = w.dot(x.head(m)) - (s.xn / qn) * w.squaredNorm();
  return s;
}

}  // namespace

std::string region_name(Region r) {
  switch (r) {
    case Region::kR1: return "R1";
    case Region::kR2: return "R2";
    case Region::kR3: return "R3";
    case Region::kOutside: return "outside";
  }
  return "unknown";
}

RegionSpec::RegionSpec(double mu_in, int n_in) : mu(mu_in), n(n_in) {
  if (n < 2) throw ParameterError("region spec requires n >= 2");
  if (!(mu > 0.0)) throw ParameterError("mu must be positive");
  r1_outer = mu / (4.0 * std::sqrt(2.0));
  r2_outer = 1.0 / (20.0 * std::sqrt(5.0));
  r3_outer = surrogate::gamma_radius(n);
  if (!(r1_outer < r2_outer)) {
    throw ParameterError("mu too large: the strong-convexity band must end before "
                         "the gradient band");
  }
}

Region classify_region(const surrogate::ReparamPoint& w, const RegionSpec& spec) {
  if (w.ambient_dim() != spec.n) throw ParameterError("chart dimension mismatch");
  const double r = w.vec().norm();
  if (r <= spec.r1_outer) return Region::kR1;
  if (r <= spec.r2_outer) return Region::kR2;
  if (r < spec.r3_outer) return Region::kR3;
  return Region::kOutside;
}

std::vector<surrogate::ReparamPoint> sample_region(Region region, int count,
                                                   const RegionSpec& spec,
                                                   std::uint64_t seed) {
  if (count < 0) throw ParameterError("sample count must be >= 0");
  double lo = 0.0, hi = 0.0;
  switch (region) {
    case Region::kR1:
      lo = kR1Floor;
      hi = spec.r1_outer;
      break;
    case Region::kR2:
      lo = spec.r1_outer;
      hi = spec.r2_outer;
      break;
    case Region::kR3:
      lo = spec.r2_outer;
      hi = spec.r3_outer;
      break;
    case Region::kOutside:
      throw ParameterError("cannot sample outside the chart ball");
  }
  std::vector<surrogate::ReparamPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    Philox rng(mix64(seed, static_cast<std::uint64_t>(s)));
    const Eigen::VectorXd dir = random_direction(spec.n - 1, rng);
    double radius = rng.uniform(lo, hi);
    radius = std::min(radius, std::nextafter(spec.r3_outer, 0.0));
    out.emplace_back(radius * dir);
  }
  return out;
}

LandscapeProbe probe(const surrogate::ReparamPoint& w, const Eigen::MatrixXd& x,
                     double mu, const RegionSpec& spec) {
  if (x.rows() != w.ambient_dim() || x.rows() != spec.n) {
    throw ParameterError("data rows must match the chart dimension");
  }
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  double value;
  surrogate::detail::g_eval_all(w.vec(), x, mu, &value, &grad, &hess);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hess);

  LandscapeProbe out;
  out.w = w.vec();
  out.hess_min_eig = eig.eigenvalues()(0);
  out.region = classify_region(w, spec);
  const double r = w.vec().norm();
  if (r > 0.0) {
    out.grad_radial = w.vec().dot(grad) / r;
    out.curv_radial = w.vec().dot(hess * w.vec()) / (r * r);
  } else {
    // Radial quantities are undefined at the origin; report the gradient norm
    // and the smallest curvature instead.
    out.grad_radial = grad.norm();
    out.curv_radial = out.hess_min_eig;
  }
  return out;
}

LandscapeReport verify_landscape(const Eigen::MatrixXd& x, double mu, double theta,
                                 int samples_per_region, std::uint64_t seed,
                                 double margin) {
  const int n = static_cast<int>(x.rows());
  const RegionSpec spec(mu, n);
  if (samples_per_region < 0) throw ParameterError("samples_per_region must be >= 0");

  LandscapeReport report;
  report.mu = mu;
  report.theta = theta;
  report.margin = margin;
  report.seed = seed;

  const Region regions[3] = {Region::kR1, Region::kR2, Region::kR3};
  RegionTally* tallies[3] = {&report.r1, &report.r2, &report.r3};
  for (int ri = 0; ri < 3; ++ri) {
    RegionTally& tally = *tallies[ri];
    tally.worst_margin = std::numeric_limits<double>::infinity();
    const auto samples =
        sample_region(regions[ri], samples_per_region, spec, mix64(seed, 100 + ri));
    for (const auto& w : samples) {
      const LandscapeProbe pr = probe(w, x, mu, spec);
      ++tally.samples;
      bool pass = false;
      double m = 0.0;
      switch (regions[ri]) {
        case Region::kR1:
          m = pr.hess_min_eig;
          pass = m > margin;
          break;
        case Region::kR2:
          m = pr.grad_radial;
          pass = m > margin;
          break;
        case Region::kR3:
          m = -pr.curv_radial;
          pass = m > margin;
          break;
        default:
          break;
      }
      tally.passes += pass ? 1 : 0;
      tally.worst_margin = std::min(tally.worst_margin, m);
    }
  }

  // Damped Newton from the chart origin; R1 strong convexity makes plain
  // Newton with halving appropriate.
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n - 1);
  double value;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  int iters = 0;
  for (; iters < 100; ++iters) {
    surrogate::detail::g_eval_all(w, x, mu, &value, &grad, &hess);
    if (grad.norm() <= 1e-10) break;
    const Eigen::VectorXd dirn = -hess.ldlt().solve(grad);
    double t = 1.0;
    Eigen::VectorXd cand;
    for (int half = 0; half < 60; ++half) {
      cand = w + t * dirn;
      if (cand.norm() < spec.r3_outer) {
        double cand_value;
        surrogate::detail::g_eval_all(cand, x, mu, &cand_value, nullptr, nullptr);
        if (cand_value <= value) break;
      }
      t *= 0.5;
    }
    w = cand;
  }
  report.w_star = w;
  report.w_star_norm = w.norm();
  report.newton_iters = iters;
  return report;
}

ExpectationEstimate expectation_mc(const surrogate::ReparamPoint& w, double theta,
                                   double mu, long long num_mc, std::uint64_t seed) {
  if (num_mc < 1) throw ParameterError("num_mc must be >= 1");
  if (!(theta >= 0.0 && theta <= 1.0)) throw ParameterError("theta must lie in [0, 1]");
  if (!(mu > 0.0)) throw ParameterError("mu must be positive");

  const int n = w.ambient_dim();
  const int m = n - 1;
  const Eigen::VectorXd& wv = w.vec();
  const double r = wv.norm();
  const double qn = std::sqrt(1.0 - wv.squaredNorm());
  const auto bg = model::CoefficientModel::bg(theta);

  Eigen::MatrixXd mean_hess = Eigen::MatrixXd::Zero(m, m);
  double g_sum = 0.0, g_sq = 0.0, c_sum = 0.0, c_sq = 0.0;
  Eigen::VectorXd mean_grad = Eigen::VectorXd::Zero(m);

  Eigen::VectorXd x(n), zeta(m);
  for (long long s = 0; s < num_mc; ++s) {
    Philox rng(seed, static_cast<std::uint64_t>(s));
    model::sample_column(bg, nullptr, rng, x);
    const SampleTerms tm = column_terms(wv, qn, mu, x);
    zeta = x.head(m) - (tm.xn / qn) * wv;

    const double gs = r > 0.0 ? tm.t * tm.zw / r : (tm.t * zeta).norm();
    const double cs =
        r > 0.0 ? tm.d2 * tm.zw * tm.zw / (r * r) -
                      tm.xn * tm.t * (1.0 / qn + r * r / (qn * qn * qn))
                : 0.0;
    g_sum += gs;
    g_sq += gs * gs;
    c_sum += cs;
    c_sq += cs * cs;
    mean_grad += tm.t * zeta;
    mean_hess.selfadjointView<Eigen::Lower>().rankUpdate(zeta, tm.d2);
    mean_hess.diagonal().array() -= tm.xn * tm.t / qn;
    mean_hess.selfadjointView<Eigen::Lower>().rankUpdate(wv, -tm.xn * tm.t /
                                                                  (qn * qn * qn));
  }
  const double nn = static_cast<double>(num_mc);
  mean_hess.triangularView<Eigen::StrictlyUpper>() = mean_hess.transpose();
  mean_hess /= nn;

  ExpectationEstimate est;
  est.num_mc = num_mc;
  est.grad_radial_mean = g_sum / nn;
  est.curv_radial_mean = c_sum / nn;
  const double gvar = std::max(0.0, (g_sq - nn * est.grad_radial_mean * est.grad_radial_mean) /
                                        std::max(1.0, nn - 1.0));
  const double cvar = std::max(0.0, (c_sq - nn * est.curv_radial_mean * est.curv_radial_mean) /
                                        std::max(1.0, nn - 1.0));
  est.grad_radial_se = std::sqrt(gvar / nn);
  est.curv_radial_se = std::sqrt(cvar / nn);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(mean_hess);
  est.hess_min_eig_of_mean = eig.eigenvalues()(0);
  Eigen::VectorXd v = eig.eigenvectors().col(0);
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0.0) v = -v;

  // Second pass over the same streams: the quadratic form v^T H_s v has mean
  // equal to the reported eigenvalue, so its spread gives the standard error.
  double q_sum = 0.0, q_sq = 0.0;
  const double wvdot = wv.dot(v);
  for (long long s = 0; s < num_mc; ++s) {
    Philox rng(seed, static_cast<std::uint64_t>(s));
    model::sample_column(bg, nullptr, rng, x);
    const SampleTerms tm = column_terms(wv, qn, mu, x);
    const double zv = x.head(m).dot(v) - (tm.xn / qn) * wvdot;
    const double qf = tm.d2 * zv * zv -
                      tm.xn * tm.t * (1.0 / qn + wvdot * wvdot / (qn * qn * qn));
    q_sum += qf;
    q_sq += qf * qf;
  }
  const double qmean = q_sum / nn;
  const double qvar = std::max(0.0, (q_sq - nn * qmean * qmean) / std::max(1.0, nn - 1.0));
  est.hess_min_eig_se = std::sqrt(qvar / nn);
  return est;
}

void export_surface(const SurfaceConfig& config, const std::string& out_path) {
  if (config.resolution < 2) throw ParameterError("grid resolution must be >= 2");
  constexpr int n = 3;
  const double r3 = surrogate::gamma_radius(n);

  std::ofstream out(out_path);
  if (!out) throw ParameterError("cannot open output file: " + out_path);
  out << "w1,w2,g\n";

  Eigen::MatrixXd finite_x;
  Eigen::MatrixXd sigma;
  const bool mixed = config.coeff.kind == model::CoefficientKind::kCorrelatedGaussian ||
                     config.coeff.kind == model::CoefficientKind::kCorrelatedUniform;
  if (config.source == SurfaceSource::kFiniteSample) {
    if (config.p < 1) throw ParameterError("finite-sample surface requires p >= 1");
    finite_x = model::sample_correlated(n, config.p, config.coeff, config.seed);
  } else {
    if (config.num_mc < 1) throw ParameterError("MC surface requires num_mc >= 1");
    if (mixed) sigma = model::mixing_sigma(n, config.coeff.sigma_offdiag, config.seed);
  }

  char buf[96];
  Eigen::VectorXd x(n), wv(2);
  long long node = 0;
  for (int i = 0; i < config.resolution; ++i) {
    const double w1 = -r3 + 2.0 * r3 * i / (config.resolution - 1);
    for (int j = 0; j < config.resolution; ++j) {
      const double w2 = -r3 + 2.0 * r3 * j / (config.resolution - 1);
      const double rr = std::hypot(w1, w2);
      if (rr > r3 * (1.0 + 1e-12)) continue;
      wv << w1, w2;
      double value = 0.0;
      if (config.source == SurfaceSource::kFiniteSample) {
        surrogate::detail::g_eval_all(wv, finite_x, config.mu, &value, nullptr, nullptr);
      } else {
        const double qn = std::sqrt(std::max(0.0, 1.0 - wv.squaredNorm()));
        Philox rng(mix64(config.seed, 0x5E1Dull + static_cast<std::uint64_t>(node)));
        double acc = 0.0;
        for (int s = 0; s < config.num_mc; ++s) {
          model::sample_column(config.coeff, mixed ? &sigma : nullptr, rng, x);
          const double z = w1 * x(0) + w2 * x(1) + qn * x(2);
          double h, d1, d2;
          surrogate::detail::h_eval(z, config.mu, h, d1, d2);
          acc += h;
        }
        value = acc / config.num_mc;
      }
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", w1, w2, value);
      out << buf;
      ++node;
    }
  }
  if (!out) throw NumericalFailure("failed writing surface CSV");
}

}  // namespace sdr::geometry
