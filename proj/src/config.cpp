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

#include "exclusion/config.hpp"

#include <json.hpp>

#include "exclusion/json_io.hpp"

namespace exclusion {

void CliConfig::validate() const {
  if (!(eps_zero > 0.0)) throw ValidationError("config: eps_zero must be > 0");
  if (!(gap_tol > 0.0)) throw ValidationError("config: gap_tol must be > 0");
  if (restarts < 1) throw ValidationError("config: restarts must be >= 1");
}

RunConfig CliConfig::run_config() const {
  validate();
  RunConfig rc;
  rc.tolerances.eps_zero = eps_zero;
  rc.tolerances.gap_tol = gap_tol;
  rc.tolerances.restarts = restarts;
  rc.sdp.gap_tol = gap_tol;
  rc.qcqp.restarts = restarts;
  rc.qcqp.seed = seed;
  return rc;
}

CliConfig load_cli_config(const std::string& json_text) {
  const Json j = parse_json_text(json_text, "config");
  if (!j.is_object()) throw ValidationError("config: expected a JSON object");
  CliConfig config;
  if (j.contains("eps_zero")) config.eps_zero = j["eps_zero"].get<double>();
  if (j.contains("gap_tol")) config.gap_tol = j["gap_tol"].get<double>();
  if (j.contains("restarts")) config.restarts = j["restarts"].get<int>();
  if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  config.validate();
  return config;
}

}  // namespace exclusion
