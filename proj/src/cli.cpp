#include "sdr/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sdr/adm.hpp"
#include "sdr/errors.hpp"
#include "sdr/geometry.hpp"
#include "sdr/io/matrix_csv.hpp"
#include "sdr/io/pgm.hpp"
#include "sdr/metrics.hpp"
#include "sdr/model.hpp"
#include "sdr/precond.hpp"
#include "sdr/rng.hpp"
#include "sdr/serialize.hpp"
#include "sdr/solver.hpp"
#include "sdr/surrogate.hpp"

namespace sdr::io {

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file: " + path);
  json j;
  in >> j;
  if (!j.is_object()) throw ParameterError("config must be a JSON object");
  return j;
}

template <typename T>
void cfg(const json& j, const char* key, T& var) {
  if (j.contains(key)) var = j.at(key).get<T>();
}

void write_json_file(const std::string& path, json j, bool deterministic) {
  if (!deterministic) {
    j["timestamp"] = static_cast<long long>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
  }
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw NumericalFailure("write failed: " + path);
}

model::DictionaryKind parse_dict_kind(const std::string& name) {
  if (name == "identity") return model::DictionaryKind::kIdentity;
  if (name == "orthogonal") return model::DictionaryKind::kOrthogonal;
  if (name == "conditioned") return model::DictionaryKind::kConditioned;
  throw ParameterError("unknown dictionary kind: " + name);
}

model::CoefficientModel parse_coeff_model(const std::string& name, double theta,
                                          double sigma_offdiag) {
  if (name == "bg") return model::CoefficientModel::bg(theta);
  if (name == "correlated_gaussian") {
    return model::CoefficientModel::correlated_gaussian(theta, sigma_offdiag);
  }
  if (name == "correlated_uniform") {
    return model::CoefficientModel::correlated_uniform(theta, sigma_offdiag);
  }
  if (name == "independent_uniform") {
    return model::CoefficientModel::independent_uniform(theta);
  }
  throw ParameterError("unknown coefficient model: " + name);
}

Eigen::VectorXd parse_vector_arg(const std::string& text) {
  Eigen::VectorXd v;
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    vals.push_back(std::stod(tok));
  }
  v.resize(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
  return v;
}

Eigen::MatrixXd load_matrix_any(const std::string& path, const std::string& json_key) {
  if (path.size() > 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open for reading: " + path);
    json j;
    in >> j;
    if (!j.contains(json_key)) {
      throw ParameterError(path + " has no \"" + json_key + "\" field");
    }
    return matrix_from_json(j.at(json_key));
  }
  return read_matrix_csv(path);
}

struct TrmFlags {
  double delta0 = 0.1;
  double delta_max = 1.0;
  double eta = 0.1;
  double grad_tol = 1e-8;
  double neg_curv_tol = 1e-6;
  int max_iters = 500;

  void attach(CLI::App* app) {
    app->add_option("--delta0", delta0, "initial trust radius");
    app->add_option("--delta-max", delta_max, "trust radius cap");
    app->add_option("--eta", eta, "acceptance ratio threshold");
    app->add_option("--grad-tol", grad_tol, "gradient norm tolerance");
    app->add_option("--neg-curv-tol", neg_curv_tol, "negative curvature tolerance");
    app->add_option("--max-iters", max_iters, "iteration cap");
  }

  void apply_config(const json& j) {
    cfg(j, "delta0", delta0);
    cfg(j, "delta-max", delta_max);
    cfg(j, "eta", eta);
    cfg(j, "grad-tol", grad_tol);
    cfg(j, "neg-curv-tol", neg_curv_tol);
    cfg(j, "max-iters", max_iters);
  }

  solver::TrmOptions options(std::uint64_t seed) const {
    solver::TrmOptions opts;
    opts.delta0 = delta0;
    opts.delta_max = delta_max;
    opts.eta_accept = eta;
    opts.grad_tol = grad_tol;
    opts.neg_curv_tol = neg_curv_tol;
    opts.max_iters = max_iters;
    opts.seed = seed;
    return opts;
  }
};

Eigen::MatrixXd load_patch_data(const std::string& pgm_path, int patch, bool center,
                                bool unit_norm) {
  const GrayImage img = read_pgm(pgm_path);
  Eigen::MatrixXd y = extract_patches(img, patch, &std::cerr);
  if (center) y.rowwise() -= y.colwise().mean();
  if (unit_norm) {
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
      const double norm = y.col(j).norm();
      if (norm > 0.0) y.col(j) /= norm;
    }
  }
  return y;
}

int run(CLI::App& app, int argc, const char* const* argv) {
  // generate ------------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "sample a synthetic instance");
  struct {
    int n = 0, p = 0;
    double theta = 0.0, kappa = 3.0, sigma_offdiag = model::kDefaultSigmaOffdiag;
    std::uint64_t seed = 0;
    std::string out, dict = "orthogonal", coeff = "bg", config;
    bool gzip = false, deterministic = false;
  } g;
  gen->add_option("--n", g.n, "dimension")->required();
  gen->add_option("--p", g.p, "sample count")->required();
  gen->add_option("--theta", g.theta, "Bernoulli rate")->required();
  gen->add_option("--seed", g.seed, "RNG seed")->required();
  gen->add_option("--out", g.out, "output directory")->required();
  gen->add_option("--dict", g.dict, "identity|orthogonal|conditioned");
  gen->add_option("--kappa", g.kappa, "condition number for conditioned dictionaries");
  gen->add_option("--model", g.coeff,
                  "bg|correlated_gaussian|correlated_uniform|independent_uniform");
  gen->add_option("--sigma-offdiag", g.sigma_offdiag, "mixing factor off-diagonal std");
  gen->add_flag("--gzip", g.gzip, "write .csv.gz matrices");
  gen->add_flag("--deterministic", g.deterministic, "omit timestamps");
  gen->add_option("--config", g.config, "JSON config overriding flags");
  gen->callback([&g]() {
    const json j = load_config(g.config);
    cfg(j, "n", g.n); cfg(j, "p", g.p); cfg(j, "theta", g.theta);
    cfg(j, "seed", g.seed); cfg(j, "dict", g.dict); cfg(j, "kappa", g.kappa);
    cfg(j, "model", g.coeff); cfg(j, "sigma-offdiag", g.sigma_offdiag);
    cfg(j, "gzip", g.gzip);

    const Eigen::MatrixXd a0 =
        model::sample_dictionary(g.n, parse_dict_kind(g.dict), mix64(g.seed, 1), g.kappa);
    const auto coeff = parse_coeff_model(g.coeff, g.theta, g.sigma_offdiag);
    const Eigen::MatrixXd x0 = model::sample_correlated(g.n, g.p, coeff, mix64(g.seed, 2));
    const model::Instance inst = model::synthesize(a0, x0, g.theta, g.seed);

    std::filesystem::create_directories(g.out);
    const std::string ext = g.gzip ? ".csv.gz" : ".csv";
    write_matrix_csv(inst.a0, g.out + "/A0" + ext);
    write_matrix_csv(inst.x0, g.out + "/X0" + ext);
    write_matrix_csv(inst.y, g.out + "/Y" + ext);
    json meta;
    meta["n"] = g.n;
    meta["p"] = g.p;
    meta["theta"] = g.theta;
    meta["seed"] = g.seed;
    meta["dictionary"] = g.dict;
    if (g.dict == "conditioned") meta["kappa"] = g.kappa;
    meta["model"] = g.coeff;
    if (g.coeff == "correlated_gaussian" || g.coeff == "correlated_uniform") {
      meta["sigma-offdiag"] = g.sigma_offdiag;
    }
    write_json_file(g.out + "/meta.json", meta, g.deterministic);
  });

  // precondition ---------------------------------------------------------
  auto* pre = app.add_subcommand("precondition", "whiten observations");
  struct {
    std::string y, out, report, config;
    double theta = 0.0;
    bool deterministic = false;
  } pc;
  pre->add_option("--y", pc.y, "observations CSV")->required();
  pre->add_option("--theta", pc.theta, "Bernoulli rate")->required();
  pre->add_option("--out", pc.out, "output CSV for Ybar")->required();
  pre->add_option("--report", pc.report, "optional JSON report");
  pre->add_flag("--deterministic", pc.deterministic, "omit timestamps");
  pre->add_option("--config", pc.config, "JSON config overriding flags");
  pre->callback([&pc]() {
    const json j = load_config(pc.config);
    cfg(j, "theta", pc.theta);
    const Eigen::MatrixXd y = read_matrix_csv(pc.y);
    const precond::PreconditionedData data = precond::precondition(y, pc.theta);
    write_matrix_csv(data.ybar, pc.out);
    if (!pc.report.empty()) {
      json rep;
      rep["clamp_count"] = data.clamp_count;
      rep["theta_used"] = data.theta_used;
      write_json_file(pc.report, rep, pc.deterministic);
    }
  });

  // solve ------------------------------------------------------------------
  auto* sol = app.add_subcommand("solve", "single trust-region run");
  struct {
    std::string y, q0, out, config;
    double mu = 1e-2;
    std::uint64_t seed = 0;
    bool trace = false, deterministic = false;
    TrmFlags trm;
  } sv;
  sol->add_option("--y", sv.y, "data matrix CSV")->required();
  sol->add_option("--mu", sv.mu, "smoothing level");
  auto* sv_seed = sol->add_option("--seed", sv.seed, "RNG seed for the start point");
  sol->add_option("--q0", sv.q0, "CSV with the start point (overrides --seed)");
  sol->add_option("--out", sv.out, "output JSON")->required();
  sol->add_flag("--trace", sv.trace, "include the iteration trace");
  sol->add_flag("--deterministic", sv.deterministic, "omit timestamps");
  sol->add_option("--config", sv.config, "JSON config overriding flags");
  sv.trm.attach(sol);
  sol->callback([&sv, sv_seed]() {
    const json j = load_config(sv.config);
    cfg(j, "mu", sv.mu);
    cfg(j, "seed", sv.seed);
    sv.trm.apply_config(j);
    if (sv.q0.empty() && sv_seed->count() == 0 && !j.contains("seed")) {
      throw ParameterError("--seed is required when no --q0 is given");
    }
    const Eigen::MatrixXd y = read_matrix_csv(sv.y);
    const int n = static_cast<int>(y.rows());
    Eigen::VectorXd q0vec;
    if (!sv.q0.empty()) {
      const Eigen::MatrixXd m = read_matrix_csv(sv.q0);
      q0vec = Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
    } else {
      Philox rng(mix64(sv.seed, 0x51));
      q0vec.resize(n);
      for (int i = 0; i < n; ++i) q0vec(i) = rng.normal();
    }
    const auto q0 = surrogate::SpherePoint::normalized(q0vec);
    const solver::SolverResult res =
        solver::trm_solve(y, sv.mu, q0, sv.trm.options(sv.seed));
    json out = solver_result_to_json(res, sv.trace);
    out["mu"] = sv.mu;
    write_json_file(sv.out, out, sv.deterministic);
  });

  // recover ------------------------------------------------------------
  auto* rec = app.add_subcommand("recover", "full dictionary-recovery pipeline");
  struct {
    std::string y, out, save_xhat, config;
    double theta = 0.0, mu = 1e-2, dedup_tol = 0.1;
    std::uint64_t seed = 0;
    int restarts = 100;
    bool force_theta = false, deterministic = false;
    TrmFlags trm;
  } rc;
  rec->add_option("--y", rc.y, "observations CSV")->required();
  rec->add_option("--theta", rc.theta, "Bernoulli rate")->required();
  rec->add_option("--mu", rc.mu, "smoothing level");
  rec->add_option("--seed", rc.seed, "RNG seed")->required();
  rec->add_option("--out", rc.out, "output JSON")->required();
  rec->add_option("--restarts", rc.restarts, "multistart budget");
  rec->add_option("--dedup-tol", rc.dedup_tol, "sign-distinct direction tolerance");
  rec->add_flag("--force-theta", rc.force_theta, "accept theta outside (0, 1/2)");
  rec->add_option("--save-xhat", rc.save_xhat, "also write recovered coefficients CSV");
  rec->add_flag("--deterministic", rc.deterministic, "omit timestamps");
  rec->add_option("--config", rc.config, "JSON config overriding flags");
  rc.trm.attach(rec);
  rec->callback([&rc]() {
    const json j = load_config(rc.config);
    cfg(j, "theta", rc.theta);
    cfg(j, "mu", rc.mu);
    cfg(j, "seed", rc.seed);
    cfg(j, "restarts", rc.restarts);
    cfg(j, "dedup-tol", rc.dedup_tol);
    cfg(j, "force-theta", rc.force_theta);
    rc.trm.apply_config(j);

    const Eigen::MatrixXd y = read_matrix_csv(rc.y);
    solver::RecoverOptions opts;
    opts.trm = rc.trm.options(rc.seed);
    opts.max_restarts = rc.restarts;
    opts.dedup_tol = rc.dedup_tol;
    opts.force_theta = rc.force_theta;
    try {
      const solver::RecoveryReport rep =
          solver::recover_dictionary(y, rc.theta, rc.mu, opts);
      json out = recovery_report_to_json(rep);
      out["n"] = y.rows();
      out["theta"] = rc.theta;
      out["mu"] = rc.mu;
      out["seed"] = rc.seed;
      write_json_file(rc.out, out, rc.deterministic);
      if (!rc.save_xhat.empty()) write_matrix_csv(rep.x_hat, rc.save_xhat);
    } catch (const solver::PartialResultError& e) {
      json out;
      out["error"] = e.what();
      out["distinct_directions_found"] = e.found().size();
      json dirs = json::array();
      for (const auto& r : e.found()) dirs.push_back(vector_to_json(r.q_star));
      out["directions"] = std::move(dirs);
      write_json_file(rc.out, out, rc.deterministic);
      throw;
    }
  });

  // landscape ------------------------------------------------------------
  auto* land = app.add_subcommand("landscape", "landscape verification and surfaces");
  struct {
    std::string mode = "verify", x, out, coeff = "bg", w, source = "finite", config;
    int n = 0, p = 100000, samples = 500, res = 101, num_mc = 10000;
    long long mc_draws = 1000000;
    double theta = 0.0, mu = 0.05, margin = 0.0, w_norm = -1.0;
    double sigma_offdiag = model::kDefaultSigmaOffdiag;
    std::uint64_t seed = 0;
    bool deterministic = false;
  } ls;
  land->add_option("--mode", ls.mode, "verify|mc|surface")->required();
  land->add_option("--x", ls.x, "coefficient matrix CSV (verify mode)");
  land->add_option("--n", ls.n, "dimension");
  land->add_option("--p", ls.p, "columns when generating data");
  land->add_option("--theta", ls.theta, "Bernoulli rate");
  land->add_option("--mu", ls.mu, "smoothing level");
  land->add_option("--samples", ls.samples, "probes per region (verify)");
  land->add_option("--margin", ls.margin, "sign-condition margin (verify)");
  land->add_option("--w", ls.w, "explicit w as comma list (mc)");
  land->add_option("--w-norm", ls.w_norm, "radius of w along the ones direction (mc)");
  land->add_option("--num-mc", ls.mc_draws, "Monte-Carlo draws (mc)");
  land->add_option("--res", ls.res, "grid resolution per axis (surface)");
  land->add_option("--source", ls.source, "finite|mc (surface)");
  land->add_option("--model", ls.coeff, "coefficient model (surface)");
  land->add_option("--sigma-offdiag", ls.sigma_offdiag, "mixing factor off-diagonal std");
  land->add_option("--node-mc", ls.num_mc, "draws per node for mc surfaces");
  land->add_option("--seed", ls.seed, "RNG seed")->required();
  land->add_option("--out", ls.out, "output file")->required();
  land->add_flag("--deterministic", ls.deterministic, "omit timestamps");
  land->add_option("--config", ls.config, "JSON config overriding flags");
  land->callback([&ls]() {
    const json j = load_config(ls.config);
    cfg(j, "mode", ls.mode); cfg(j, "n", ls.n); cfg(j, "p", ls.p);
    cfg(j, "theta", ls.theta); cfg(j, "mu", ls.mu); cfg(j, "samples", ls.samples);
    cfg(j, "margin", ls.margin); cfg(j, "w-norm", ls.w_norm);
    cfg(j, "num-mc", ls.mc_draws); cfg(j, "res", ls.res); cfg(j, "source", ls.source);
    cfg(j, "model", ls.coeff); cfg(j, "sigma-offdiag", ls.sigma_offdiag);
    cfg(j, "node-mc", ls.num_mc); cfg(j, "seed", ls.seed);

    if (ls.mode == "verify") {
      Eigen::MatrixXd x;
      if (!ls.x.empty()) {
        x = read_matrix_csv(ls.x);
      } else {
        if (ls.n < 2 || !(ls.theta > 0.0)) {
          throw ParameterError("verify mode needs --x or --n/--p/--theta");
        }
        x = model::sample_bg(ls.n, ls.p, ls.theta, mix64(ls.seed, 2));
      }
      const geometry::LandscapeReport rep = geometry::verify_landscape(
          x, ls.mu, ls.theta, ls.samples, ls.seed, ls.margin);
      write_json_file(ls.out, landscape_report_to_json(rep), ls.deterministic);
    } else if (ls.mode == "mc") {
      Eigen::VectorXd wvec;
      if (!ls.w.empty()) {
        wvec = parse_vector_arg(ls.w);
      } else {
        if (ls.n < 2 || ls.w_norm < 0.0) {
          throw ParameterError("mc mode needs --w or --n with --w-norm");
        }
        wvec = Eigen::VectorXd::Constant(ls.n - 1,
                                         ls.w_norm / std::sqrt(double(ls.n - 1)));
      }
      const geometry::ExpectationEstimate est = geometry::expectation_mc(
          surrogate::ReparamPoint(wvec), ls.theta, ls.mu, ls.mc_draws, ls.seed);
      write_json_file(ls.out, expectation_to_json(est), ls.deterministic);
    } else if (ls.mode == "surface") {
      geometry::SurfaceConfig config;
      config.resolution = ls.res;
      config.source = ls.source == "mc" ? geometry::SurfaceSource::kMcExpectation
                                        : geometry::SurfaceSource::kFiniteSample;
      config.coeff = parse_coeff_model(ls.coeff, ls.theta, ls.sigma_offdiag);
      config.p = ls.p;
      config.num_mc = ls.num_mc;
      config.mu = ls.mu;
      config.seed = ls.seed;
      geometry::export_surface(config, ls.out);
    } else {
      throw ParameterError("unknown landscape mode: " + ls.mode);
    }
  });

  // adm ------------------------------------------------------------------
  auto* ad = app.add_subcommand("adm", "alternating-direction baseline");
  struct {
    std::string mode = "learn", y, pgm, init_a, out, config;
    double lambda = 2.0, tol = 1e-8;
    int max_iters = 10000, restarts = 20, patch = 8;
    std::uint64_t seed = 0;
    bool center = false, unit_norm = false, trace = false, deterministic = false;
  } am;
  ad->add_option("--mode", am.mode, "learn|dispersion");
  ad->add_option("--y", am.y, "data matrix CSV");
  ad->add_option("--pgm", am.pgm, "PGM image; patches become columns");
  ad->add_option("--patch", am.patch, "patch edge for --pgm");
  ad->add_flag("--center", am.center, "subtract each patch's mean");
  ad->add_flag("--unit-norm", am.unit_norm, "normalize each patch to unit norm");
  ad->add_option("--lambda", am.lambda, "shrinkage parameter");
  ad->add_option("--max-iters", am.max_iters, "iteration cap");
  ad->add_option("--tol", am.tol, "stop when ||A_k - A_{k-1}||_F <= tol");
  ad->add_option("--restarts", am.restarts, "dispersion restarts");
  ad->add_option("--init-a", am.init_a, "CSV with an orthogonal initialization (learn)");
  ad->add_option("--seed", am.seed, "RNG seed")->required();
  ad->add_option("--out", am.out, "output JSON")->required();
  ad->add_flag("--trace", am.trace, "include the objective trace");
  ad->add_flag("--deterministic", am.deterministic, "omit timestamps");
  ad->add_option("--config", am.config, "JSON config overriding flags");
  ad->callback([&am]() {
    const json j = load_config(am.config);
    cfg(j, "mode", am.mode); cfg(j, "lambda", am.lambda);
    cfg(j, "max-iters", am.max_iters); cfg(j, "tol", am.tol);
    cfg(j, "restarts", am.restarts); cfg(j, "seed", am.seed);
    cfg(j, "patch", am.patch);

    Eigen::MatrixXd y;
    if (!am.pgm.empty()) {
      y = load_patch_data(am.pgm, am.patch, am.center, am.unit_norm);
    } else if (!am.y.empty()) {
      y = read_matrix_csv(am.y);
    } else {
      throw ParameterError("adm needs --y or --pgm input");
    }

    if (am.mode == "learn") {
      adm::AdmResult res;
      if (!am.init_a.empty()) {
        res = adm::adm_learn(y, am.lambda, read_matrix_csv(am.init_a), am.max_iters,
                             am.tol);
      } else {
        res = adm::adm_learn(y, am.lambda, am.seed, am.max_iters, am.tol);
      }
      write_json_file(am.out, adm_result_to_json(res, am.trace), am.deterministic);
    } else if (am.mode == "dispersion") {
      const adm::DispersionResult res = adm::dispersion_experiment(
          y, am.lambda, am.restarts, am.max_iters, am.seed, am.tol);
      write_json_file(am.out, dispersion_to_json(res), am.deterministic);
    } else {
      throw ParameterError("unknown adm mode: " + am.mode);
    }
  });

  // align ------------------------------------------------------------------
  auto* al = app.add_subcommand("align", "signed-permutation alignment");
  struct {
    std::string ahat, a0, out, config;
    bool raw_scale = false, deterministic = false;
  } ag;
  al->add_option("--ahat", ag.ahat, "estimate (JSON report or CSV)")->required();
  al->add_option("--a0", ag.a0, "ground truth CSV")->required();
  al->add_flag("--raw-scale", ag.raw_scale, "skip column normalization");
  al->add_option("--out", ag.out, "optional JSON output");
  al->add_flag("--deterministic", ag.deterministic, "omit timestamps");
  al->add_option("--config", ag.config, "JSON config overriding flags");
  al->callback([&ag]() {
    const json j = load_config(ag.config);
    cfg(j, "raw-scale", ag.raw_scale);
    const Eigen::MatrixXd ahat = load_matrix_any(ag.ahat, "a_hat");
    const Eigen::MatrixXd a0 = read_matrix_csv(ag.a0);
    const metrics::Alignment res = metrics::signed_perm_align(ahat, a0, !ag.raw_scale);
    std::cout << "aligned_error " << res.error_fro << "\n";
    if (!ag.out.empty()) {
      write_json_file(ag.out, alignment_to_json(res), ag.deterministic);
    }
  });

  app.require_subcommand(1);
  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"complete dictionary recovery over the sphere"};
  try {
    return run(app, argc, argv);
  } catch (const solver::PartialResultError& e) {
    std::cerr << "partial result: " << e.what() << "\n";
    return 3;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cli_main(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("sdr");
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace sdr::io
