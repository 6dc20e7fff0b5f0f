// Copyright 2026 the exclusion toolkit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "exclusion/json_io.hpp"

#include <json.hpp>

#include <cmath>

namespace exclusion {

namespace {

double number_from_json(const Json& j, const char* what) {
  if (!j.is_number()) throw ValidationError(std::string("json: expected a number for ") + what);
  return j.get<double>();
}

}  // namespace

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw ValidationError("json: complex scalars are two-element arrays [re, im]");
  }
  return {number_from_json(j[0], "re"), number_from_json(j[1], "im")};
}

Json vec_to_json(const CVec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

CVec vec_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("json: vectors are non-empty arrays");
  CVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return v;
}

Json mat_to_json(const CMat& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

CMat mat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("json: matrices are non-empty row arrays");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  CMat m;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) throw ValidationError("json: matrix rows are arrays");
    if (i == 0) {
      cols = j[i].size();
      if (cols == 0) throw ValidationError("json: matrix rows must be non-empty");
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    }
    if (j[i].size() != cols) throw ValidationError("json: ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(j[i][k]);
    }
  }
  return m;
}

Json instance_to_json(const ExclusionInstance& instance) {
  Json out;
  out["schema"] = kSchemaTag;
  out["dim"] = instance.dim();
  Json states = Json::array();
  if (instance.has_pure_states()) {
    for (const auto& s : instance.pure_states()) states.push_back(vec_to_json(s.vec()));
  } else {
    for (const auto& rho : instance.densities()) states.push_back(mat_to_json(rho));
  }
  out["states"] = std::move(states);
  out["weights"] = instance.weights();
  return out;
}

ExclusionInstance instance_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("instance: expected an object with a \"states\" array");
  if (j.contains("schema") && j["schema"] != kSchemaTag) {
    throw ValidationError("instance: unsupported schema tag (expected \"exclusion/1\")");
  }
  if (!j.contains("states") || !j["states"].is_array() || j["states"].empty()) {
    throw ValidationError("instance: \"states\" must be a non-empty array of state vectors");
  }
  std::vector<double> weights;
  if (j.contains("weights") && !j["weights"].is_null()) {
    if (!j["weights"].is_array()) throw ValidationError("instance: \"weights\" must be an array");
    for (const auto& w : j["weights"]) weights.push_back(number_from_json(w, "weight"));
  }

  const Json& states_json = j["states"];
  const bool matrix_states = states_json[0].is_array() && !states_json[0].empty() &&
                             states_json[0][0].is_array() && states_json[0][0].size() != 2;
  // A state entry is either a vector of [re, im] pairs or a density matrix
  // (rows of [re, im] pairs). 2x2 matrices are disambiguated by "dim".
  int declared_dim = j.contains("dim") ? j["dim"].get<int>() : -1;

  auto looks_like_matrix = [&](const Json& s) {
    if (!s.is_array() || s.empty() || !s[0].is_array()) return false;
    if (!s[0].empty() && s[0][0].is_array()) return true;
    return false;
  };

  if (matrix_states || looks_like_matrix(states_json[0])) {
    std::vector<HermitianOperator> densities;
    for (const auto& s : states_json) densities.emplace_back(mat_from_json(s));
    ExclusionInstance instance(std::move(densities), std::move(weights));
    if (declared_dim > 0 && instance.dim() != declared_dim) {
      throw ValidationError("instance: \"dim\" does not match the states");
    }
    return instance;
  }

  std::vector<PureState> states;
  for (const auto& s : states_json) {
    const CVec v = vec_from_json(s);
    // parsed states may carry decimal round-off; accept up to 1e-6 and
    // renormalize, but keep already-exact vectors bit-identical
    const double norm_error = std::abs(v.norm() - 1.0);
    if (norm_error > 1e-6) {
      throw ValidationError("instance: state vectors must have unit norm (within 1e-6)");
    }
    states.push_back(norm_error <= 1e-12 ? PureState(v) : PureState::normalized(v));
  }
  ExclusionInstance instance(std::move(states), std::move(weights));
  if (declared_dim > 0 && instance.dim() != declared_dim) {
    throw ValidationError("instance: \"dim\" does not match the states");
  }
  return instance;
}

Json povm_to_json(const Povm& povm) {
  Json out;
  out["schema"] = kSchemaTag;
  out["dim"] = povm.dim();
  Json elements = Json::array();
  for (const auto& e : povm.elements) elements.push_back(mat_to_json(e.mat()));
  out["elements"] = std::move(elements);
  return out;
}

Povm povm_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array() ||
      j["elements"].empty()) {
    throw ValidationError("povm: expected an object with a non-empty \"elements\" array");
  }
  std::vector<HermitianOperator> elements;
  for (const auto& e : j["elements"]) elements.emplace_back(mat_from_json(e));
  return Povm(std::move(elements));
}

Json cfs_report_to_json(const CfsReport& report) {
  Json out;
  out["schema"] = kSchemaTag;
  out["j1"] = report.j1;
  out["j2"] = report.j2;
  out["j3"] = report.j3;
  out["lhs"] = report.lhs;
  out["excludable"] = report.excludable;
  out["margin"] = report.margin;
  return out;
}

Json validation_report_to_json(const ValidationReport& report) {
  Json out;
  out["completeness_residual"] = report.completeness_residual;
  out["min_eigenvalues"] = report.min_eigenvalues;
  out["ranks"] = report.ranks;
  out["valid"] = report.valid;
  return out;
}

Json sdp_solution_to_json(const SdpSolution& solution) {
  Json out;
  out["schema"] = kSchemaTag;
  out["primal_value"] = solution.primal_value;
  out["dual_value"] = solution.dual_value;
  out["gap"] = solution.gap;
  out["iterations"] = solution.iterations;
  out["status"] = to_string(solution.status);
  out["povm"] = povm_to_json(solution.povm);
  out["dual_certificate"] = mat_to_json(solution.dual_certificate.mat());
  return out;
}

Json min_over_assignments_to_json(const MinOverAssignmentsResult& result) {
  Json out;
  out["schema"] = kSchemaTag;
  Json assignments = Json::array();
  for (const auto& a : result.assignments) assignments.push_back(a.indices);
  out["assignments"] = std::move(assignments);
  out["objectives"] = result.objectives;
  out["min_value"] = result.value;
  out["best_assignment"] = result.assignment.indices;
  out["best_frame"] = mat_to_json(result.best.frame);
  out["converged"] = result.all_converged;
  return out;
}

Json square_identity_to_json(const SquareIdentityReport& report) {
  Json out;
  out["lhs"] = report.lhs;
  out["rhs"] = report.rhs;
  out["square"] = report.square;
  out["square_closed_form"] = report.square_closed_form;
  out["x_used"] = report.x_used;
  return out;
}

namespace {

Json tolerances_to_json(const Tolerances& tol) {
  Json out;
  out["eps_zero"] = tol.eps_zero;
  out["gap_tol"] = tol.gap_tol;
  out["restarts"] = tol.restarts;
  return out;
}

Json states_to_json(const std::vector<CVec>& states) {
  Json out = Json::array();
  for (const auto& s : states) out.push_back(vec_to_json(s));
  return out;
}

}  // namespace

Json equivalence_trial_to_json(const EquivalenceTrial& trial) {
  Json out;
  out["trial"] = trial.index;
  out["instance"] = Json{{"schema", kSchemaTag},
                         {"dim", trial.states.empty() ? 0 : static_cast<int>(trial.states[0].size())},
                         {"states", states_to_json(trial.states)}};
  out["cfs"] = Json{{"lhs", trial.cfs_lhs}, {"excludable", trial.cfs_verdict}};
  out["sdp"] = Json{{"primal_value", trial.sdp_value},
                    {"dual_value", trial.sdp_dual_value},
                    {"gap", trial.sdp_gap},
                    {"iterations", trial.sdp_iterations},
                    {"status", to_string(trial.sdp_status)},
                    {"excludable", trial.sdp_verdict}};
  out["qcqp"] = Json{{"min_value", trial.qcqp_min},
                     {"converged", trial.qcqp_converged},
                     {"best_assignment", trial.qcqp_assignment},
                     {"objectives", trial.qcqp_objectives},
                     {"excludable", trial.qcqp_verdict}};
  out["boundary"] = trial.boundary;
  out["agree"] = trial.agree;
  if (!trial.error.empty()) out["error"] = trial.error;
  return out;
}

Json equivalence_report_to_json(const EquivalenceReport& report) {
  Json out;
  out["schema"] = kSchemaTag;
  out["experiment"] = "equiv3x3";
  out["trials"] = report.trials;
  out["agree"] = report.agree;
  out["boundary_band"] = report.boundary_band;
  out["seed"] = report.seed;
  out["tolerances"] = tolerances_to_json(report.tolerances);
  Json disagreements = Json::array();
  for (const auto& trial : report.disagreements) disagreements.push_back(equivalence_trial_to_json(trial));
  out["disagreements"] = std::move(disagreements);
  Json boundary = Json::array();
  for (const auto& trial : report.boundary_cases) boundary.push_back(equivalence_trial_to_json(trial));
  out["boundary_cases"] = std::move(boundary);
  Json audit = Json::array();
  for (const auto& trial : report.unconverged_audit) audit.push_back(equivalence_trial_to_json(trial));
  out["unconverged_audit"] = std::move(audit);
  return out;
}

Json gap_trial_to_json(const GapTrial& trial) {
  Json out;
  out["trial"] = trial.index;
  out["instance"] = Json{{"schema", kSchemaTag},
                         {"dim", trial.states.empty() ? 0 : static_cast<int>(trial.states[0].size())},
                         {"states", states_to_json(trial.states)}};
  out["sdp_value"] = trial.sdp_value;
  out["povm_excludable"] = trial.povm_excludable;
  out["qcqp_min"] = trial.qcqp_min;
  out["proj_excludable"] = trial.proj_excludable;
  out["qcqp_objectives"] = trial.qcqp_objectives;
  if (!trial.error.empty()) out["error"] = trial.error;
  return out;
}

Json gap2d_report_to_json(const Gap2dReport& report) {
  Json out;
  out["schema"] = kSchemaTag;
  out["experiment"] = "gap2d";
  out["trials"] = report.trials;
  out["gap_count"] = report.gap_count;
  out["pair_trials"] = report.pair_trials;
  out["pair_disagreements"] = report.pair_disagreements;
  out["seed"] = report.seed;
  out["tolerances"] = tolerances_to_json(report.tolerances);
  Json gaps = Json::array();
  for (const auto& trial : report.gap_instances) gaps.push_back(gap_trial_to_json(trial));
  out["gap_instances"] = std::move(gaps);
  Json pairs = Json::array();
  for (const auto& trial : report.pair_disagreement_instances) pairs.push_back(gap_trial_to_json(trial));
  out["pair_disagreement_instances"] = std::move(pairs);
  return out;
}

Json family_scan_report_to_json(const FamilyScanReport& report) {
  Json out;
  out["schema"] = kSchemaTag;
  out["experiment"] = "familyscan";
  out["grid"] = Json{{"nx", report.grid.nx},
                     {"nr", report.grid.nr},
                     {"nb", report.grid.nb},
                     {"nc", report.grid.nc},
                     {"r_min", report.grid.r_min},
                     {"r_max", report.grid.r_max},
                     {"endpoint_offset", report.grid.endpoint_offset},
                     {"stride", report.grid.stride},
                     {"theta_samples", report.grid.theta_samples}};
  out["points_evaluated"] = report.points_evaluated;
  out["max_f"] = report.max_f;
  out["argmax"] = Json{{"x", report.argmax_x},
                       {"r", report.argmax_r},
                       {"b1", report.argmax_b1},
                       {"c1", report.argmax_c1}};
  out["margin_histogram"] =
      Json{{"edges", report.histogram_edges}, {"counts", report.histogram_counts}};
  out["max_theta_deviation"] = report.max_theta_deviation;
  return out;
}

Json parse_json_text(const std::string& text, const std::string& what) {
  Json parsed = Json::parse(text, nullptr, false);
  if (parsed.is_discarded()) {
    throw ValidationError(what + ": malformed JSON (see the documented exclusion/1 schema)");
  }
  return parsed;
}

}  // namespace exclusion
