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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "exclusion/experiments.hpp"
#include "exclusion/json_io.hpp"

using namespace exclusion;

TEST_CASE("equivalence experiment: counts add up and there are no disagreements") {
  const EquivalenceReport report = run_equivalence_3x3(200, 424242);
  CHECK(report.trials == 200);
  CHECK(report.agree + report.boundary_band +
            static_cast<int>(report.disagreements.size()) == report.trials);
  CHECK(report.disagreements.empty());
  CHECK(report.seed == 424242);
}

TEST_CASE("equivalence experiment: disagreement records carry the full instance") {
  // Force a tiny iteration budget so SDP solves fail; the failures must be
  // persisted as auditable disagreements rather than dropped.
  RunConfig rc;
  rc.sdp.max_iterations = 2;
  const EquivalenceReport report = run_equivalence_3x3(5, 7, rc);
  CHECK(report.agree + report.boundary_band +
            static_cast<int>(report.disagreements.size()) == 5);
  CHECK(!report.disagreements.empty());
  for (const auto& trial : report.disagreements) {
    CHECK(trial.states.size() == 3);
    CHECK(!trial.error.empty());
    const Json line = equivalence_trial_to_json(trial);
    CHECK(line.contains("instance"));
    CHECK(line["instance"]["states"].size() == 3);
    CHECK(line.contains("sdp"));
    CHECK(line.contains("qcqp"));
    CHECK(line.contains("cfs"));
  }
}

TEST_CASE("equivalence experiment: identical seeds give byte-identical reports") {
  const EquivalenceReport a = run_equivalence_3x3(60, 99);
  const EquivalenceReport b = run_equivalence_3x3(60, 99);
  CHECK(equivalence_report_to_json(a).dump(2) == equivalence_report_to_json(b).dump(2));

  RunConfig serial;
  serial.threads = 1;
  const EquivalenceReport c = run_equivalence_3x3(60, 99, serial);
  CHECK(equivalence_report_to_json(a).dump(2) == equivalence_report_to_json(c).dump(2));

  const EquivalenceReport other_seed = run_equivalence_3x3(60, 100);
  CHECK(equivalence_report_to_json(a).dump(2) != equivalence_report_to_json(other_seed).dump(2));
}

TEST_CASE("trine states: the canonical 2D gap witness") {
  const auto trine = trine_states();
  REQUIRE(trine.size() == 3);
  for (int i = 0; i < 3; ++i) {
    for (int k = i + 1; k < 3; ++k) {
      CHECK(std::abs(trine[i].vec().dot(trine[k].vec())) == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
}

TEST_CASE("2D gap experiment: trine separates POVMs from projections; pairs never do") {
  const Gap2dReport report = run_2d_gap(40, 31337);
  CHECK(report.trials == 40);
  CHECK(report.gap_count >= 1);
  REQUIRE(!report.gap_instances.empty());

  // trial 0 is the trine
  const GapTrial& trine_trial = report.gap_instances.front();
  CHECK(trine_trial.index == 0);
  CHECK(trine_trial.povm_excludable);
  CHECK_FALSE(trine_trial.proj_excludable);
  CHECK(trine_trial.sdp_value <= 1e-8);
  CHECK(trine_trial.qcqp_min > 0.1);
  for (double obj : trine_trial.qcqp_objectives) CHECK(obj > 0.1);

  CHECK(report.pair_trials == 40);
  CHECK(report.pair_disagreements == 0);
}

TEST_CASE("2D gap experiment: deterministic reports") {
  const Gap2dReport a = run_2d_gap(15, 5);
  const Gap2dReport b = run_2d_gap(15, 5);
  CHECK(gap2d_report_to_json(a).dump(2) == gap2d_report_to_json(b).dump(2));
}

TEST_CASE("family scan: small grid stays below 1 and finds the equality locus") {
  GridSpec grid;
  grid.nx = 8;
  grid.nr = 8;
  grid.nb = 8;
  grid.nc = 8;
  grid.stride = 1;
  const FamilyScanReport report = run_family_theorem_scan(grid);
  CHECK(report.points_evaluated == 8L * 8 * 8 * 8);
  CHECK(report.max_f <= 1.0 + 1e-9);
  CHECK(report.max_f > 0.9);  // the grid reaches near the locus
  CHECK(report.max_theta_deviation <= 1e-9);
  long total = 0;
  for (long c : report.histogram_counts) total += c;
  CHECK(total == report.points_evaluated);
  CHECK(report.histogram_counts.front() == 0);  // no margin < 0 anywhere

  // argmax parameters reproduce the reported maximum
  const double f = f_lhs({report.argmax_x, report.argmax_r, 0.0}, report.argmax_b1,
                         report.argmax_c1);
  CHECK(f == doctest::Approx(report.max_f).epsilon(1e-12));
}

TEST_CASE("family scan: stride subsamples the grid deterministically") {
  GridSpec grid;
  grid.nx = 6;
  grid.nr = 6;
  grid.nb = 6;
  grid.nc = 6;
  grid.stride = 5;
  const FamilyScanReport a = run_family_theorem_scan(grid);
  const FamilyScanReport b = run_family_theorem_scan(grid);
  CHECK(a.points_evaluated == (6L * 6 * 6 * 6 + 4) / 5);
  CHECK(family_scan_report_to_json(a).dump(2) == family_scan_report_to_json(b).dump(2));
}

TEST_CASE("family scan: equality locus sampled directly gives f = 1") {
  Rng rng(864);
  for (int trial = 0; trial < 50; ++trial) {
    const double r = std::exp(std::log(1e-1) + std::log(1e2) * rng.uniform());
    const double b1 = 0.05 + 0.6 * rng.uniform();
    // solve r(1/c1^2 - 1) = (1/r)(1/b1^2 - 1) for c1
    const double big_b = 1.0 / (b1 * b1) - 1.0;
    const double c1 = 1.0 / std::sqrt(1.0 + big_b / (r * r));
    // pick x strictly inside the feasible interval
    const double x_low = std::max(r / big_b, 1.0 / (r * (1.0 / (c1 * c1) - 1.0)));
    if (x_low >= 0.98) continue;
    const double x = 0.5 * (x_low + 1.0);
    const FamilyParams p{x, r, 0.0};
    if (b1 >= b1_bound(p) || c1 >= c1_bound(p)) continue;
    CHECK(f_lhs(p, b1, c1) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("family scan: degenerate-adjacent corners stay finite") {
  // 2-point axes place evaluations at the 1e-3 endpoint offsets, next to
  // every excluded boundary; nothing may blow up or go NaN there.
  GridSpec grid;
  grid.nx = 2;
  grid.nr = 2;
  grid.nb = 2;
  grid.nc = 2;
  grid.stride = 1;
  grid.r_min = 1e-2;
  grid.r_max = 1e2;
  const FamilyScanReport report = run_family_theorem_scan(grid);
  CHECK(report.points_evaluated == 16);
  CHECK(std::isfinite(report.max_f));
  CHECK(report.max_f <= 1.0 + 1e-9);
  long total = 0;
  for (long c : report.histogram_counts) total += c;
  CHECK(total == 16);
}

TEST_CASE("experiment validation errors") {
  CHECK_THROWS_AS(run_equivalence_3x3(0, 1), ValidationError);
  CHECK_THROWS_AS(run_2d_gap(0, 1), ValidationError);
  GridSpec bad;
  bad.stride = 0;
  CHECK_THROWS_AS(run_family_theorem_scan(bad), ValidationError);
}
