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
 * Batch experiments over randomized and gridded instances, with enough data
 * persisted per abnormal case to replay it through the CLI. Reports are
 * byte-for-byte reproducible from (seed, config): trials draw from
 * per-index derived seeds, run concurrently, and reduce in trial order.
 */

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "exclusion/cfs.hpp"
#include "exclusion/family.hpp"
#include "exclusion/qcqp.hpp"
#include "exclusion/sdp.hpp"

namespace exclusion {

struct Tolerances {
  double eps_zero = kEpsZero;
  double gap_tol = 1e-8;
  int restarts = 32;
};

struct RunConfig {
  Tolerances tolerances;
  SolverConfig sdp;
  QcqpConfig qcqp;
  int threads = 0;  // 0 = hardware concurrency
};

/// One three-way trial: the closed-form criterion, the SDP verdict, and the
/// projection-QCQP verdict on the same instance.
struct EquivalenceTrial {
  int index = 0;
  std::vector<CVec> states;
  double cfs_lhs = 0.0;
  bool cfs_verdict = false;
  double sdp_value = 0.0;
  double sdp_dual_value = 0.0;
  double sdp_gap = 0.0;
  int sdp_iterations = 0;
  SolveStatus sdp_status = SolveStatus::max_iter;
  bool sdp_verdict = false;
  double qcqp_min = 0.0;
  bool qcqp_converged = false;
  std::vector<int> qcqp_assignment;
  std::vector<double> qcqp_objectives;
  bool qcqp_verdict = false;
  bool boundary = false;
  bool agree = false;
  std::string error;  // non-empty when a solver failed outright
};

struct EquivalenceReport {
  int trials = 0;
  int agree = 0;
  int boundary_band = 0;
  std::vector<EquivalenceTrial> disagreements;
  std::vector<EquivalenceTrial> boundary_cases;
  /// Trials whose verdicts agreed but where some QCQP restart ended
  /// unconverged; persisted for inspection, not scored.
  std::vector<EquivalenceTrial> unconverged_audit;
  std::uint64_t seed = 0;
  Tolerances tolerances;
};

/// Haar triples in 3D; counts three-way agreement between the criterion,
/// the SDP, and the QCQP minimum. Instances with
/// |cfs_lhs - 1| < 10*sqrt(eps_zero) land in the boundary band instead of
/// being scored: there the exclusion value, which vanishes quadratically in
/// (lhs - 1), can be certified positive yet fall below the eps_zero verdict
/// threshold.
EquivalenceReport run_equivalence_3x3(int trials, std::uint64_t seed, const RunConfig& rc = {});

/// The three trine states (2D, pairwise overlap 1/2).
std::vector<PureState> trine_states();

struct GapTrial {
  int index = 0;
  std::vector<CVec> states;
  double sdp_value = 0.0;
  bool povm_excludable = false;
  double qcqp_min = 0.0;
  bool proj_excludable = false;
  std::vector<double> qcqp_objectives;
  std::string error;
};

struct Gap2dReport {
  int trials = 0;
  int gap_count = 0;  // POVM-excludable but not projection-excludable
  std::vector<GapTrial> gap_instances;
  int pair_trials = 0;
  int pair_disagreements = 0;
  std::vector<GapTrial> pair_disagreement_instances;
  std::uint64_t seed = 0;
  Tolerances tolerances;
};

/// 2D separation experiment. Trial 0 is the trine (the canonical gap
/// witness); the rest are Haar triples. Also runs 2-state control pairs,
/// where the POVM and projection verdicts must always agree.
Gap2dReport run_2d_gap(int trials, std::uint64_t seed, const RunConfig& rc = {});

struct GridSpec {
  int nx = 50;
  int nr = 50;
  int nb = 50;  // b1 as a fraction of its open bound
  int nc = 50;  // c1 as a fraction of its open bound
  double r_min = 1e-2;
  double r_max = 1e2;
  double endpoint_offset = 1e-3;  // grids stay this far inside open intervals
  long stride = 6;                // evaluate every stride-th flattened point
  int theta_samples = 3;          // phase values for the theta-independence check
};

struct FamilyScanReport {
  long points_evaluated = 0;
  double max_f = 0.0;
  double argmax_x = 0.0;
  double argmax_r = 0.0;
  double argmax_b1 = 0.0;
  double argmax_c1 = 0.0;
  std::vector<double> histogram_edges;  // of margin = 1 - f
  std::vector<long> histogram_counts;   // histogram_edges.size() + 1 buckets
  double max_theta_deviation = 0.0;     // constructor overlap vs closed form
  GridSpec grid;
};

/// One evaluated scan point, for the optional full table.
struct ScanRow {
  double x = 0.0;
  double r = 0.0;
  double b1 = 0.0;
  double c1 = 0.0;
  double f = 0.0;
};

/// Grid scan of f over (x, r, b1, c1); the theorem asserts max <= 1.
/// When rows is non-null every evaluated point is appended in grid order.
FamilyScanReport run_family_theorem_scan(const GridSpec& grid = {}, int threads = 0,
                                         std::vector<ScanRow>* rows = nullptr);

}  // namespace exclusion
