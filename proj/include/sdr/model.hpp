#ifndef SDR_MODEL_HPP
#define SDR_MODEL_HPP

#include <Eigen/Core>
#include <cstdint>

#include "sdr/rng.hpp"

namespace sdr::model {

enum class CoefficientKind {
  kBg,                  // Ber(theta) * N(0,1), entrywise i.i.d.
  kCorrelatedGaussian,  // columns Sigma * u, u ~ N(0, I), masked by Ber(theta)
  kCorrelatedUniform,   // columns Sigma * u, u ~ U[-0.5, 0.5]^n, masked
  kIndependentUniform,  // U[-0.5, 0.5] entries, masked
};

/// Off-diagonal law of the mixing factor Sigma: the entries are drawn
/// N(0, sqrt(2)/20) with the variance convention, so the default standard
/// deviation is sqrt(sqrt(2)/20).
inline constexpr double kDefaultSigmaOffdiag = 0.26591479484724942;

struct CoefficientModel {
  CoefficientKind kind = CoefficientKind::kBg;
  double theta = 0.5;
  double sigma_offdiag = kDefaultSigmaOffdiag;

  static CoefficientModel bg(double theta);
  static CoefficientModel correlated_gaussian(double theta,
                                              double sigma_offdiag = kDefaultSigmaOffdiag);
  static CoefficientModel correlated_uniform(double theta,
                                             double sigma_offdiag = kDefaultSigmaOffdiag);
  static CoefficientModel independent_uniform(double theta);
};

enum class DictionaryKind { kIdentity, kOrthogonal, kConditioned };

/// A synthetic recovery problem: observations y = a0 * x0.
struct Instance {
  Eigen::MatrixXd a0;  // n x n dictionary
  Eigen::MatrixXd x0;  // n x p coefficients
  Eigen::MatrixXd y;   // n x p observations
  double theta = 0.0;
  std::uint64_t seed = 0;

  /// Checks y == a0*x0, invertibility of a0, and that the empirical nonzero
  /// fraction of x0 sits within 5 binomial standard deviations of theta.
  void validate() const;
};

/// Bernoulli(theta)-masked standard Gaussian matrix, one Philox substream per
/// column so column-parallel generation would reproduce the sequential output.
Eigen::MatrixXd sample_bg(int n, int p, double theta, std::uint64_t seed);

Eigen::MatrixXd sample_correlated(int n, int p, const CoefficientModel& model,
                                  std::uint64_t seed);

/// identity -> I; orthogonal -> Haar (QR of a Gaussian matrix, R-diagonal
/// signs corrected); conditioned -> U diag(s) V^T with Haar U, V and singular
/// values log-spaced from kappa down to 1.
Eigen::MatrixXd sample_dictionary(int n, DictionaryKind kind, std::uint64_t seed,
                                  double kappa = 1.0);

/// The symmetric mixing factor used by the correlated models: 1's on the
/// diagonal, upper-triangle entries i.i.d. N(0, sigma_offdiag^2), mirrored.
/// Drawn from a dedicated substream of seed, so it matches the factor
/// sample_correlated applies for the same seed.
Eigen::MatrixXd mixing_sigma(int n, double sigma_offdiag, std::uint64_t seed);

/// Draws one coefficient column from rng (per entry: mask uniform, then value
/// draw). sigma may be null for the unmixed models.
void sample_column(const CoefficientModel& model, const Eigen::MatrixXd* sigma,
                   Philox& rng, Eigen::VectorXd& out);

/// Builds an Instance with y = a0*x0. theta < 0 means "use the empirical
/// nonzero fraction of x0". Inputs are copied, never mutated.
Instance synthesize(const Eigen::MatrixXd& a0, const Eigen::MatrixXd& x0,
                    double theta = -1.0, std::uint64_t seed = 0);

}  // namespace sdr::model

#endif  // SDR_MODEL_HPP
