#include "sdr/serialize.hpp"

#include "sdr/errors.hpp"

namespace sdr::io {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw ParameterError("expected a nested array encoding a matrix");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols) {
      throw ParameterError("ragged matrix rows in JSON");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

namespace {

const char* step_kind_name(solver::StepKind k) {
  switch (k) {
    case solver::StepKind::kNewtonLike: return "newton-like";
    case solver::StepKind::kBoundary: return "boundary";
    case solver::StepKind::kRejected: return "rejected";
  }
  return "unknown";
}

}  // namespace

json solver_result_to_json(const solver::SolverResult& res, bool include_trace) {
  json j;
  j["q_star"] = vector_to_json(res.q_star);
  j["f_star"] = res.f_star;
  j["grad_norm"] = res.grad_norm;
  j["hess_min_eig"] = res.hess_min_eig;
  j["iters"] = res.iters;
  j["converged"] = res.converged;
  if (include_trace) {
    json trace = json::array();
    for (const auto& e : res.trace) {
      trace.push_back({{"f", e.f},
                       {"grad_norm", e.grad_norm},
                       {"delta", e.delta},
                       {"step", step_kind_name(e.step_kind)}});
    }
    j["trace"] = std::move(trace);
  }
  return j;
}

json recovery_report_to_json(const solver::RecoveryReport& rep, bool include_xhat) {
  json j;
  j["a_hat"] = matrix_to_json(rep.a_hat);
  if (include_xhat) j["x_hat"] = matrix_to_json(rep.x_hat);
  j["restarts_used"] = rep.restarts_used;
  j["distinct_directions_found"] = rep.distinct_directions_found;
  j["residual"] = rep.residual;
  return j;
}

namespace {

json tally_to_json(const geometry::RegionTally& t) {
  return {{"samples", t.samples}, {"passes", t.passes}, {"worst_margin", t.worst_margin}};
}

}  // namespace

json landscape_report_to_json(const geometry::LandscapeReport& rep) {
  json j;
  j["r1"] = tally_to_json(rep.r1);
  j["r2"] = tally_to_json(rep.r2);
  j["r3"] = tally_to_json(rep.r3);
  j["w_star"] = vector_to_json(rep.w_star);
  j["w_star_norm"] = rep.w_star_norm;
  j["newton_iters"] = rep.newton_iters;
  j["mu"] = rep.mu;
  j["theta"] = rep.theta;
  j["margin"] = rep.margin;
  j["seed"] = rep.seed;
  return j;
}

json expectation_to_json(const geometry::ExpectationEstimate& est) {
  json j;
  j["grad_radial_mean"] = est.grad_radial_mean;
  j["grad_radial_se"] = est.grad_radial_se;
  j["curv_radial_mean"] = est.curv_radial_mean;
  j["curv_radial_se"] = est.curv_radial_se;
  j["hess_min_eig_of_mean"] = est.hess_min_eig_of_mean;
  j["hess_min_eig_se"] = est.hess_min_eig_se;
  j["num_mc"] = est.num_mc;
  return j;
}

json adm_result_to_json(const adm::AdmResult& res, bool include_trace) {
  json j;
  j["a"] = matrix_to_json(res.a);
  j["l1_score"] = res.l1_score;
  j["iters"] = res.iters;
  j["converged"] = res.converged;
  j["trivial_solution"] = res.trivial_solution;
  if (include_trace) j["objective_trace"] = res.objective_trace;
  return j;
}

json dispersion_to_json(const adm::DispersionResult& res) {
  json j;
  j["l1_scores"] = res.l1_scores;
  j["relative_spread"] = res.relative_spread;
  return j;
}

json alignment_to_json(const metrics::Alignment& al) {
  json j;
  j["perm"] = al.perm;
  j["signs"] = vector_to_json(al.signs);
  j["error_fro"] = al.error_fro;
  j["per_atom_dist"] = vector_to_json(al.per_atom_dist);
  return j;
}

}  // namespace sdr::io
