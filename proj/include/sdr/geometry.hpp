#ifndef SDR_GEOMETRY_HPP
#define SDR_GEOMETRY_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "sdr/model.hpp"
#include "sdr/surrogate.hpp"

namespace sdr::geometry {

enum class Region { kR1, kR2, kR3, kOutside };

std::string region_name(Region r);

/// Radial bands partitioning the chart ball: strong convexity, large radial
/// gradient, and negative radial curvature.
struct RegionSpec {
  double mu = 0.0;
  int n = 0;
  double r1_outer = 0.0;  // mu/(4 sqrt 2)
  double r2_outer = 0.0;  // 1/(20 sqrt 5)
  double r3_outer = 0.0;  // sqrt((4n-1)/(4n))

  RegionSpec(double mu, int n);
};

struct LandscapeProbe {
  Eigen::VectorXd w;
  double grad_radial = 0.0;   // w.grad g / ||w||; ||grad g|| when w = 0
  double curv_radial = 0.0;   // w.hess g.w / ||w||^2; min eigenvalue when w = 0
  double hess_min_eig = 0.0;
  Region region = Region::kOutside;
};

struct RegionTally {
  long long samples = 0;
  long long passes = 0;
  double worst_margin = 0.0;  // closest approach to the failing side
};

struct LandscapeReport {
  RegionTally r1, r2, r3;   // pass = hess PD / radial grad > 0 / radial curv < 0
  Eigen::VectorXd w_star;   // damped-Newton minimizer estimate from w = 0
  double w_star_norm = 0.0;
  int newton_iters = 0;
  double mu = 0.0;
  double theta = 0.0;
  double margin = 0.0;
  std::uint64_t seed = 0;
};

/// Monte-Carlo estimates of the three probed quantities in expectation over
/// BG(theta) columns, with standard errors of the means.
struct ExpectationEstimate {
  double grad_radial_mean = 0.0;
  double grad_radial_se = 0.0;
  double curv_radial_mean = 0.0;
  double curv_radial_se = 0.0;
  double hess_min_eig_of_mean = 0.0;
  double hess_min_eig_se = 0.0;
  long long num_mc = 0;
};

enum class SurfaceSource { kFiniteSample, kMcExpectation };

struct SurfaceConfig {
  int resolution = 101;  // grid points per axis over [-r3, r3]
  SurfaceSource source = SurfaceSource::kFiniteSample;
  model::CoefficientModel coeff = model::CoefficientModel::bg(0.1);
  int p = 100000;        // columns for the finite-sample source
  int num_mc = 10000;    // draws per node for the expectation source
  double mu = 0.05;
  std::uint64_t seed = 0;
};

/// Band membership by ||w||; boundaries belong to the inner region (closed
/// inner, open outer).
Region classify_region(const surrogate::ReparamPoint& w, const RegionSpec& spec);

/// count points with uniform random direction and radius uniform on the
/// region's radial interval (R1 radii floored at 1e-6). Per-sample
/// substreams keep parallel generation identical to sequential.
std::vector<surrogate::ReparamPoint> sample_region(Region region, int count,
                                                   const RegionSpec& spec,
                                                   std::uint64_t seed);

LandscapeProbe probe(const surrogate::ReparamPoint& w, const Eigen::MatrixXd& x,
                     double mu, const RegionSpec& spec);

/// Samples each band, tallies the sign conditions, and polishes the unique
/// minimizer near w = 0 by damped Newton (stop at ||grad|| <= 1e-10 or 100
/// iterations).
LandscapeReport verify_landscape(const Eigen::MatrixXd& x, double mu, double theta,
                                 int samples_per_region, std::uint64_t seed,
                                 double margin = 0.0);

ExpectationEstimate expectation_mc(const surrogate::ReparamPoint& w, double theta,
                                   double mu, long long num_mc, std::uint64_t seed);

/// n = 3 visualization export: grid over the disk ||w|| <= r3 in the
/// equatorial section, rows `w1,w2,g` with 17 significant digits.
void export_surface(const SurfaceConfig& config, const std::string& out_path);

}  // namespace sdr::geometry

#endif  // SDR_GEOMETRY_HPP
