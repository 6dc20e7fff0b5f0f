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

#include "exclusion/experiments.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace exclusion {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

// Runs fn(i) for i in [0, count) on a small pool; results must be written
// to per-index slots so the reduction stays order-deterministic.
template <typename Fn>
void parallel_for(long count, int threads, Fn&& fn) {
  int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = static_cast<int>(std::min<long>(n_threads, count));
  if (n_threads <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const long i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

EquivalenceTrial run_one_equivalence_trial(int index, std::uint64_t seed, const RunConfig& rc) {
  EquivalenceTrial trial;
  trial.index = index;
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(index)));
  const PureState a = haar_random_state(3, rng);
  const PureState b = haar_random_state(3, rng);
  const PureState c = haar_random_state(3, rng);
  trial.states = {a.vec(), b.vec(), c.vec()};

  const double eps = rc.tolerances.eps_zero;
  try {
    const CfsReport cfs = cfs_excludable(a, b, c, eps);
    trial.cfs_lhs = cfs.lhs;
    trial.cfs_verdict = cfs.excludable;
    // Tolerance-limited zone of the zero thresholds. The exclusion value
    // vanishes quadratically in (lhs - 1) as the criterion becomes tight
    // (measured curvature 0.03..0.9), so values certified positive can sit
    // below eps whenever |lhs - 1| <~ sqrt(eps / 0.03); such trials are
    // bookkept as boundary cases, never scored as disagreements.
    trial.boundary = std::abs(cfs.lhs - 1.0) < 10.0 * std::sqrt(eps);

    SolverConfig sdp_cfg = rc.sdp;
    sdp_cfg.gap_tol = rc.tolerances.gap_tol;
    const SdpSolution sdp = solve_exclusion_sdp(ExclusionInstance({a, b, c}), sdp_cfg);
    trial.sdp_value = sdp.primal_value;
    trial.sdp_dual_value = sdp.dual_value;
    trial.sdp_gap = sdp.gap;
    trial.sdp_iterations = sdp.iterations;
    trial.sdp_status = sdp.status;
    trial.sdp_verdict =
        sdp.status == SolveStatus::optimal && sdp.primal_value <= eps && sdp.dual_value <= eps;
    if (sdp.status != SolveStatus::optimal) trial.error = "sdp status " + std::string(to_string(sdp.status));

    QcqpConfig qcqp_cfg = rc.qcqp;
    qcqp_cfg.restarts = rc.tolerances.restarts;
    qcqp_cfg.seed = derive_seed(seed ^ 0x71c3d5a2b9e8f604ULL, static_cast<std::uint64_t>(index));
    const MinOverAssignmentsResult mo = min_over_assignments({a, b, c}, qcqp_cfg);
    trial.qcqp_min = mo.value;
    trial.qcqp_converged = mo.all_converged;
    trial.qcqp_assignment = mo.assignment.indices;
    trial.qcqp_objectives = mo.objectives;
    trial.qcqp_verdict = mo.value <= eps;
  } catch (const std::exception& e) {
    trial.error = e.what();
  }

  // Scored on the three verdicts; a failed SDP solve poisons the trial, but
  // an unconverged QCQP restart does not (its minimum is still an upper
  // bound from a feasible frame, and the record is kept for audit).
  trial.agree = trial.error.empty() && trial.cfs_verdict == trial.sdp_verdict &&
                trial.cfs_verdict == trial.qcqp_verdict;
  return trial;
}

}  // namespace

EquivalenceReport run_equivalence_3x3(int trials, std::uint64_t seed, const RunConfig& rc) {
  if (trials < 1) throw ValidationError("experiment: trials must be >= 1");
  std::vector<EquivalenceTrial> all(trials);
  parallel_for(trials, rc.threads,
               [&](long i) { all[i] = run_one_equivalence_trial(static_cast<int>(i), seed, rc); });

  EquivalenceReport report;
  report.trials = trials;
  report.seed = seed;
  report.tolerances = rc.tolerances;
  for (auto& trial : all) {
    if (trial.boundary) {
      ++report.boundary_band;
      report.boundary_cases.push_back(std::move(trial));
    } else if (trial.agree) {
      ++report.agree;
      if (!trial.qcqp_converged) report.unconverged_audit.push_back(std::move(trial));
    } else {
      report.disagreements.push_back(std::move(trial));
    }
  }
  return report;
}

std::vector<PureState> trine_states() {
  std::vector<PureState> states;
  for (int k = 0; k < 3; ++k) {
    const double angle = 2.0 * kPi * k / 3.0;
    CVec v(2);
    v[0] = std::cos(angle);
    v[1] = std::sin(angle);
    states.push_back(PureState(std::move(v)));
  }
  return states;
}

Gap2dReport run_2d_gap(int trials, std::uint64_t seed, const RunConfig& rc) {
  if (trials < 1) throw ValidationError("experiment: trials must be >= 1");
  const double eps = rc.tolerances.eps_zero;

  struct Slot {
    GapTrial triple;
    GapTrial pair;
    bool pair_agrees = true;
  };
  std::vector<Slot> slots(trials);

  parallel_for(trials, rc.threads, [&](long i) {
    Slot& slot = slots[i];
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));

    std::vector<PureState> triple;
    if (i == 0) {
      triple = trine_states();
    } else {
      triple = {haar_random_state(2, rng), haar_random_state(2, rng), haar_random_state(2, rng)};
    }
    slot.triple.index = static_cast<int>(i);
    for (const auto& s : triple) slot.triple.states.push_back(s.vec());
    try {
      SolverConfig sdp_cfg = rc.sdp;
      sdp_cfg.gap_tol = rc.tolerances.gap_tol;
      const SdpSolution sdp = solve_exclusion_sdp(ExclusionInstance(triple), sdp_cfg);
      slot.triple.sdp_value = sdp.primal_value;
      slot.triple.povm_excludable = sdp.status == SolveStatus::optimal &&
                                    sdp.primal_value <= eps && sdp.dual_value <= eps;
      if (sdp.status != SolveStatus::optimal) {
        slot.triple.error = "sdp status " + std::string(to_string(sdp.status));
      }
      QcqpConfig qcqp_cfg = rc.qcqp;
      qcqp_cfg.restarts = rc.tolerances.restarts;
      qcqp_cfg.seed = derive_seed(seed ^ 0x2f8a1c6db4e97035ULL, static_cast<std::uint64_t>(i));
      const MinOverAssignmentsResult mo = min_over_assignments(triple, qcqp_cfg);
      slot.triple.qcqp_min = mo.value;
      slot.triple.qcqp_objectives = mo.objectives;
      slot.triple.proj_excludable = mo.value <= eps;
    } catch (const std::exception& e) {
      slot.triple.error = e.what();
    }

    // k = 2 control: POVM and projection verdicts agree for two pure states.
    std::vector<PureState> pair = {haar_random_state(2, rng), haar_random_state(2, rng)};
    slot.pair.index = static_cast<int>(i);
    for (const auto& s : pair) slot.pair.states.push_back(s.vec());
    try {
      SolverConfig sdp_cfg = rc.sdp;
      sdp_cfg.gap_tol = rc.tolerances.gap_tol;
      const SdpSolution sdp = solve_exclusion_sdp(ExclusionInstance(pair), sdp_cfg);
      slot.pair.sdp_value = sdp.primal_value;
      slot.pair.povm_excludable = sdp.status == SolveStatus::optimal &&
                                  sdp.primal_value <= eps && sdp.dual_value <= eps;
      QcqpConfig qcqp_cfg = rc.qcqp;
      qcqp_cfg.restarts = rc.tolerances.restarts;
      qcqp_cfg.seed = derive_seed(seed ^ 0x5be0cd19137e2179ULL, static_cast<std::uint64_t>(i));
      const MinOverAssignmentsResult mo = min_over_assignments(pair, qcqp_cfg);
      slot.pair.qcqp_min = mo.value;
      slot.pair.qcqp_objectives = mo.objectives;
      slot.pair.proj_excludable = mo.value <= eps;
      slot.pair_agrees = slot.pair.povm_excludable == slot.pair.proj_excludable;
    } catch (const std::exception& e) {
      slot.pair.error = e.what();
      slot.pair_agrees = false;
    }
  });

  Gap2dReport report;
  report.trials = trials;
  report.pair_trials = trials;
  report.seed = seed;
  report.tolerances = rc.tolerances;
  for (auto& slot : slots) {
    const bool gap = slot.triple.error.empty() && slot.triple.povm_excludable &&
                     !slot.triple.proj_excludable;
    if (gap) {
      ++report.gap_count;
      report.gap_instances.push_back(std::move(slot.triple));
    }
    if (!slot.pair_agrees) {
      ++report.pair_disagreements;
      report.pair_disagreement_instances.push_back(std::move(slot.pair));
    }
  }
  return report;
}

FamilyScanReport run_family_theorem_scan(const GridSpec& grid, int threads,
                                         std::vector<ScanRow>* rows) {
  if (grid.nx < 1 || grid.nr < 1 || grid.nb < 1 || grid.nc < 1 || grid.stride < 1 ||
      grid.theta_samples < 1) {
    throw ValidationError("family scan: grid counts and stride must be >= 1");
  }
  if (!(grid.r_min > 0.0) || !(grid.r_max >= grid.r_min)) {
    throw ValidationError("family scan: need 0 < r_min <= r_max");
  }
  if (!(grid.endpoint_offset > 0.0) || !(grid.endpoint_offset < 0.5)) {
    throw ValidationError("family scan: endpoint offset must lie in (0, 0.5)");
  }

  const auto axis = [](int n, double lo, double hi, int i) {
    return n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / static_cast<double>(n - 1);
  };
  const double off = grid.endpoint_offset;
  const double log_r_min = std::log(grid.r_min);
  const double log_r_max = std::log(grid.r_max);

  const long total = static_cast<long>(grid.nx) * grid.nr * grid.nb * grid.nc;
  const long evaluated = (total + grid.stride - 1) / grid.stride;

  struct BlockResult {
    double max_f = -std::numeric_limits<double>::infinity();
    long argmax_index = -1;
    std::vector<long> hist;
    double max_theta_dev = 0.0;
    long count = 0;
    std::vector<ScanRow> rows;  // only when a table is requested
  };

  // Margin histogram edges: fine near the theorem boundary, coarse elsewhere.
  const std::vector<double> edges = {0.0,  1e-8, 1e-6, 1e-4, 1e-2, 0.05,
                                     0.10, 0.20, 0.40, 0.60, 0.80, 1.00};
  const long theta_check_every = std::max<long>(1, evaluated / 1000);

  const int n_blocks = grid.nx;
  std::vector<BlockResult> blocks(n_blocks);
  for (auto& b : blocks) b.hist.assign(edges.size() + 1, 0);

  parallel_for(n_blocks, threads, [&](long bi) {
    BlockResult& block = blocks[bi];
    const double x = axis(grid.nx, off, 1.0 - off, static_cast<int>(bi));
    const long base = bi * static_cast<long>(grid.nr) * grid.nb * grid.nc;
    for (int ir = 0; ir < grid.nr; ++ir) {
      const double r = std::exp(axis(grid.nr, log_r_min, log_r_max, ir));
      const FamilyParams params{x, r, 0.0};
      const double bb = b1_bound(params);
      const double cb = c1_bound(params);
      for (int ib = 0; ib < grid.nb; ++ib) {
        const double fb = axis(grid.nb, off, 1.0 - off, ib);
        for (int ic = 0; ic < grid.nc; ++ic) {
          const long flat = base + (static_cast<long>(ir) * grid.nb + ib) * grid.nc + ic;
          if (flat % grid.stride != 0) continue;
          const double fc = axis(grid.nc, off, 1.0 - off, ic);
          const double b1 = fb * bb;
          const double c1 = fc * cb;
          // Radicands reduce to 1 - frac^2 on the fraction grid.
          const double j3 = std::sqrt((1.0 - fb * fb) * (1.0 - fc * fc)) +
                            b1 * c1 * (1.0 / x - 1.0);
          const double f = j3 * j3 + b1 * b1 + c1 * c1 + 2.0 * j3 * b1 * c1;
          ++block.count;
          if (rows != nullptr) block.rows.push_back({x, r, b1, c1, f});
          if (f > block.max_f) {
            block.max_f = f;
            block.argmax_index = flat;
          }
          const double margin = 1.0 - f;
          std::size_t bucket = 0;
          while (bucket < edges.size() && margin >= edges[bucket]) ++bucket;
          ++block.hist[bucket];

          if ((flat / grid.stride) % theta_check_every == 0) {
            // Rebuild b and c through the constructors at several thetas and
            // compare the worst-case overlap with the closed form.
            for (int it = 0; it < grid.theta_samples; ++it) {
              const double theta = 2.0 * kPi * it / grid.theta_samples;
              const FamilyParams pt{x, r, theta};
              const PureState sb = excluded_state_b(pt, b1, 0.0);
              const PureState sc = excluded_state_c(pt, c1, kPi);
              const double overlap = std::abs(sb.vec().dot(sc.vec()));
              block.max_theta_dev =
                  std::max(block.max_theta_dev, std::abs(overlap - j3));
            }
          }
        }
      }
    }
  });

  FamilyScanReport report;
  report.grid = grid;
  report.histogram_edges = edges;
  report.histogram_counts.assign(edges.size() + 1, 0);
  long argmax_flat = -1;
  for (auto& block : blocks) {
    report.points_evaluated += block.count;
    for (std::size_t k = 0; k < block.hist.size(); ++k) report.histogram_counts[k] += block.hist[k];
    report.max_theta_deviation = std::max(report.max_theta_deviation, block.max_theta_dev);
    if (rows != nullptr) rows->insert(rows->end(), block.rows.begin(), block.rows.end());
    if (block.argmax_index >= 0 &&
        (argmax_flat < 0 || block.max_f > report.max_f ||
         (block.max_f == report.max_f && block.argmax_index < argmax_flat))) {
      report.max_f = block.max_f;
      argmax_flat = block.argmax_index;
    }
  }
  if (argmax_flat >= 0) {
    const long nc = grid.nc, nb = grid.nb, nr = grid.nr;
    const int ic = static_cast<int>(argmax_flat % nc);
    const int ib = static_cast<int>((argmax_flat / nc) % nb);
    const int ir = static_cast<int>((argmax_flat / (nc * nb)) % nr);
    const int ix = static_cast<int>(argmax_flat / (nc * nb * nr));
    report.argmax_x = axis(grid.nx, off, 1.0 - off, ix);
    report.argmax_r = std::exp(axis(grid.nr, log_r_min, log_r_max, ir));
    const FamilyParams params{report.argmax_x, report.argmax_r, 0.0};
    report.argmax_b1 = axis(grid.nb, off, 1.0 - off, ib) * b1_bound(params);
    report.argmax_c1 = axis(grid.nc, off, 1.0 - off, ic) * c1_bound(params);
  }
  return report;
}

}  // namespace exclusion
