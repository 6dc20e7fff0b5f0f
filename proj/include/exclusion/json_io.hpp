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

/**
 * @file
 * JSON serialization used by the CLI and the experiment reports. Complex
 * scalars serialize as two-element arrays [re, im], vectors as arrays of
 * those, and matrices as row-major arrays of rows. Documents carry a
 * "schema": "exclusion/1" tag.
 */

#pragma once

#include <json.hpp>

#include "exclusion/experiments.hpp"

namespace exclusion {

using Json = nlohmann::json;

inline constexpr const char* kSchemaTag = "exclusion/1";

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

Json vec_to_json(const CVec& v);
CVec vec_from_json(const Json& j);

Json mat_to_json(const CMat& m);
CMat mat_from_json(const Json& j);

/// {"schema": "exclusion/1", "dim": d, "states": [...], "weights": [...]?}
Json instance_to_json(const ExclusionInstance& instance);
ExclusionInstance instance_from_json(const Json& j);

/// {"schema": "exclusion/1", "dim": d, "elements": [...]}
Json povm_to_json(const Povm& povm);
Povm povm_from_json(const Json& j);

Json cfs_report_to_json(const CfsReport& report);
Json validation_report_to_json(const ValidationReport& report);
Json sdp_solution_to_json(const SdpSolution& solution);
Json min_over_assignments_to_json(const MinOverAssignmentsResult& result);
Json square_identity_to_json(const SquareIdentityReport& report);

Json equivalence_report_to_json(const EquivalenceReport& report);
Json gap2d_report_to_json(const Gap2dReport& report);
Json family_scan_report_to_json(const FamilyScanReport& report);

/// Per-instance JSON-lines records for the persisted audit files.
Json equivalence_trial_to_json(const EquivalenceTrial& trial);
Json gap_trial_to_json(const GapTrial& trial);

/// Parses a JSON document, mapping parse failures to ValidationError with a
/// schema-pointing message.
Json parse_json_text(const std::string& text, const std::string& what);

}  // namespace exclusion
