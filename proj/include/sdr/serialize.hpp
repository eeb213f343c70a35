#ifndef SDR_SERIALIZE_HPP
#define SDR_SERIALIZE_HPP

#include <json.hpp>

#include "sdr/adm.hpp"
#include "sdr/geometry.hpp"
#include "sdr/metrics.hpp"
#include "sdr/solver.hpp"

namespace sdr::io {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Eigen::VectorXd& v);

nlohmann::json solver_result_to_json(const solver::SolverResult& res, bool include_trace);
nlohmann::json recovery_report_to_json(const solver::RecoveryReport& rep,
                                       bool include_xhat = false);
nlohmann::json landscape_report_to_json(const geometry::LandscapeReport& rep);
nlohmann::json expectation_to_json(const geometry::ExpectationEstimate& est);
nlohmann::json adm_result_to_json(const adm::AdmResult& res, bool include_trace);
nlohmann::json dispersion_to_json(const adm::DispersionResult& res);
nlohmann::json alignment_to_json(const metrics::Alignment& al);

}  // namespace sdr::io

#endif  // SDR_SERIALIZE_HPP
