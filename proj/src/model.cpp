#include "sdr/model.hpp"

#include <Eigen/Dense>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <string>

#include "sdr/errors.hpp"
#include "sdr/rng.hpp"

namespace sdr::model {

namespace {

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw ParameterError("theta must lie in [0, 1], got " + std::to_string(theta));
  }
}

void check_sizes(int n, int p) {
  if (n < 1 || p < 1) {
    throw ParameterError("matrix dimensions must be positive");
  }
}

// Tag for the mixing-factor substream, disjoint from any column index.
constexpr std::uint64_t kSigmaTag = 0x5349474d41ull;

Eigen::MatrixXd haar_orthogonal(int n, Philox& rng) {
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      g(i, j) = rng.normal();
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace

CoefficientModel CoefficientModel::bg(double theta) {
  check_theta(theta);
  return {CoefficientKind::kBg, theta, 0.0};
}

CoefficientModel CoefficientModel::correlated_gaussian(double theta, double sigma_offdiag) {
  check_theta(theta);
  if (sigma_offdiag < 0.0) throw ParameterError("sigma_offdiag must be >= 0");
  return {CoefficientKind::kCorrelatedGaussian, theta, sigma_offdiag};
}

CoefficientModel CoefficientModel::correlated_uniform(double theta, double sigma_offdiag) {
  check_theta(theta);
  if (sigma_offdiag < 0.0) throw ParameterError("sigma_offdiag must be >= 0");
  return {CoefficientKind::kCorrelatedUniform, theta, sigma_offdiag};
}

CoefficientModel CoefficientModel::independent_uniform(double theta) {
  check_theta(theta);
  return {CoefficientKind::kIndependentUniform, theta, 0.0};
}

Eigen::MatrixXd sample_bg(int n, int p, double theta, std::uint64_t seed) {
  check_sizes(n, p);
  check_theta(theta);
  Eigen::MatrixXd x(n, p);
  for (int j = 0; j < p; ++j) {
    Philox rng(seed, static_cast<std::uint64_t>(j));
    for (int i = 0; i < n; ++i) {
      const bool on = rng.bernoulli(theta);
      const double g = rng.normal();
      x(i, j) = on ? g : 0.0;
    }
  }
  return x;
}

Eigen::MatrixXd mixing_sigma(int n, double sigma_offdiag, std::uint64_t seed) {
  if (n < 1) throw ParameterError("matrix order must be positive");
  if (sigma_offdiag < 0.0) throw ParameterError("sigma_offdiag must be >= 0");
  Philox rng(mix64(seed, kSigmaTag));
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = sigma_offdiag * rng.normal();
      sigma(i, j) = v;
      sigma(j, i) = v;
    }
  }
  if (!sigma.isApprox(sigma.transpose())) {
    throw ContractViolation("internal Sigma construction is not symmetric");
  }
  return sigma;
}

void sample_column(const CoefficientModel& model, const Eigen::MatrixXd* sigma,
                   Philox& rng, Eigen::VectorXd& out) {
  const auto n = out.size();
  const bool gaussian = model.kind == CoefficientKind::kBg ||
                        model.kind == CoefficientKind::kCorrelatedGaussian;
  const bool mixed = model.kind == CoefficientKind::kCorrelatedGaussian ||
                     model.kind == CoefficientKind::kCorrelatedUniform;
  if (mixed && (sigma == nullptr || sigma->rows() != n || sigma->cols() != n)) {
    throw ParameterError("correlated models require a matching mixing factor");
  }
  // Per-entry draw order (mask uniform, then value) is shared with sample_bg,
  // so sigma_offdiag = 0 with the Gaussian variant reproduces it bit for bit.
  Eigen::VectorXd u(n);
  Eigen::Array<bool, Eigen::Dynamic, 1> mask(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    mask(i) = rng.bernoulli(model.theta);
    u(i) = gaussian ? rng.normal() : rng.uniform01() - 0.5;
  }
  if (mixed) u = *sigma * u;
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i) = mask(i) ? u(i) : 0.0;
  }
}

Eigen::MatrixXd sample_correlated(int n, int p, const CoefficientModel& model,
                                  std::uint64_t seed) {
  check_sizes(n, p);
  check_theta(model.theta);

  if (model.kind == CoefficientKind::kBg) {
    return sample_bg(n, p, model.theta, seed);
  }
  const bool mixed = model.kind != CoefficientKind::kIndependentUniform;
  Eigen::MatrixXd sigma;
  if (mixed) sigma = mixing_sigma(n, model.sigma_offdiag, seed);

  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd col(n);
  for (int j = 0; j < p; ++j) {
    Philox rng(seed, static_cast<std::uint64_t>(j));
    sample_column(model, mixed ? &sigma : nullptr, rng, col);
    x.col(j) = col;
  }
  return x;
}

Eigen::MatrixXd sample_dictionary(int n, DictionaryKind kind, std::uint64_t seed,
                                  double kappa) {
  if (n < 1) throw ParameterError("dictionary order must be positive");
  switch (kind) {
    case DictionaryKind::kIdentity:
      return Eigen::MatrixXd::Identity(n, n);
    case DictionaryKind::kOrthogonal: {
      Philox rng(seed);
      return haar_orthogonal(n, rng);
    }
    case DictionaryKind::kConditioned: {
      if (kappa < 1.0) {
        throw ParameterError("condition number must be >= 1, got " + std::to_string(kappa));
      }
      Philox rng_u(mix64(seed, 1));
      Philox rng_v(mix64(seed, 2));
      const Eigen::MatrixXd u = haar_orthogonal(n, rng_u);
      const Eigen::MatrixXd v = haar_orthogonal(n, rng_v);
      Eigen::VectorXd s(n);
      for (int i = 0; i < n; ++i) {
        const double frac = n > 1 ? static_cast<double>(n - 1 - i) / (n - 1) : 0.0;
        s(i) = std::exp(std::log(kappa) * frac);
      }
      return u * s.asDiagonal() * v.transpose();
    }
  }
  throw ParameterError("unknown dictionary kind");
}

void Instance::validate() const {
  const auto n = a0.rows();
  const auto p = x0.cols();
  if (a0.cols() != n || x0.rows() != n || y.rows() != n || y.cols() != p) {
    throw ParameterError("instance dimensions are inconsistent");
  }
  check_theta(theta);

  const Eigen::MatrixXd prod = a0 * x0;
  const double scale = std::max(1.0, prod.cwiseAbs().maxCoeff());
  if ((y - prod).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ContractViolation("instance observations do not equal a0 * x0");
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a0);
  const double smin = svd.singularValues()(n - 1);
  const double smax = svd.singularValues()(0);
  if (!(smin > static_cast<double>(n) * std::numeric_limits<double>::epsilon() * smax)) {
    throw SingularInputError("dictionary is numerically singular");
  }

  const double frac =
      static_cast<double>((x0.array() != 0.0).count()) / static_cast<double>(n * p);
  const double sd = std::sqrt(theta * (1.0 - theta) / static_cast<double>(n * p));
  if (std::abs(frac - theta) > 5.0 * sd) {
    throw ContractViolation("empirical nonzero fraction " + std::to_string(frac) +
                            " is inconsistent with theta " + std::to_string(theta));
  }
}

Instance synthesize(const Eigen::MatrixXd& a0, const Eigen::MatrixXd& x0, double theta,
                    std::uint64_t seed) {
  if (a0.rows() != a0.cols() || a0.cols() != x0.rows()) {
    throw ParameterError("dimension mismatch between dictionary and coefficients");
  }
  Instance inst;
  inst.a0 = a0;
  inst.x0 = x0;
  inst.y = a0 * x0;
  inst.theta = theta >= 0.0
                   ? theta
                   : static_cast<double>((x0.array() != 0.0).count()) /
                         static_cast<double>(x0.size());
  inst.seed = seed;
  inst.validate();
  return inst;
}

}  // namespace sdr::model
