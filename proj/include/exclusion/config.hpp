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

#pragma once

#include <cstdint>
#include <string>

#include "exclusion/experiments.hpp"

namespace exclusion {

/// Tool-wide tunables, loadable from a JSON config file.
struct CliConfig {
  double eps_zero = kEpsZero;
  double gap_tol = 1e-8;
  int restarts = 32;
  std::uint64_t seed = 12345;

  void validate() const;
  RunConfig run_config() const;
};

/// Parses {"eps_zero": ..., "gap_tol": ..., "restarts": ..., "seed": ...};
/// absent keys keep their defaults.
CliConfig load_cli_config(const std::string& json_text);

}  // namespace exclusion
