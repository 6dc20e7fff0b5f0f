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
 * The state-exclusion semidefinite program
 *
 *     minimize    sum_i w_i <M_i, rho_i>
 *     subject to  sum_i M_i = I,   M_i >= 0
 *
 * solved by alternating-direction splitting on the stacked variables
 * (M_1, ..., M_n): an affine projection onto {sum M_i = I} alternates with
 * per-element PSD cone projections, with over-relaxed proximal handling of
 * the linear objective. The splitting multipliers yield a dual certificate
 * Y with Y <= w_i rho_i whose trace lower-bounds the primal value; the
 * certificate, not the iterate count, carries the correctness burden.
 */

#pragma once

#include <vector>

#include "exclusion/types.hpp"

namespace exclusion {

struct SolverConfig {
  double gap_tol = 1e-8;            // primal-dual gap required for status optimal
  int max_iterations = 50000;
  double step = 1.0;                // splitting penalty parameter
  double restart_step_factor = 0.5; // applied when progress stalls
  int stall_window = 500;           // iterations without progress before a restart
  double over_relaxation = 1.6;
  double residual_tol = 1e-10;      // stacked Frobenius residual target
};

enum class SolveStatus { optimal, max_iter, infeasible_numerics };

const char* to_string(SolveStatus status);

struct SdpSolution {
  Povm povm;
  double primal_value = 0.0;
  HermitianOperator dual_certificate;
  double dual_value = 0.0;
  double gap = 0.0;  // primal_value - dual_value
  int iterations = 0;
  SolveStatus status = SolveStatus::max_iter;
};

struct ValidationReport {
  double completeness_residual = 0.0;      // ||sum M_i - I||_F
  std::vector<double> min_eigenvalues;     // per element
  std::vector<int> ranks;                  // eigenvalues above rank_tol
  bool valid = false;
};

/// Solves the exclusion SDP. Requires n <= 10 states of dimension <= 10.
/// Iteration exhaustion is reported through status, never hidden.
SdpSolution solve_exclusion_sdp(const ExclusionInstance& instance,
                                const SolverConfig& config = {});

/// True iff the SDP value is zero within eps, confirmed by the dual
/// certificate. Throws NumericalError when the solve does not reach
/// status optimal.
bool is_povm_excludable(const ExclusionInstance& instance, const SolverConfig& config = {},
                        double eps = kEpsZero);

/// Completeness / positivity / rank report. Never throws on invalid POVMs.
ValidationReport validate_povm(const Povm& povm, double completeness_tol = 1e-9,
                               double psd_tol = 1e-9, double rank_tol = 1e-7);

/// Drives an optimal POVM toward an extreme point by transferring rank-1
/// directions common to the ranges of two elements of rank >= 2, keeping
/// completeness exactly and the objective within objective_tol. For a
/// 3-state 3D instance solved to value 0 the result has at most one element
/// of rank >= 2.
Povm reduce_to_extremal(const Povm& povm, const ExclusionInstance& instance,
                        double rank_tol = 1e-7, double objective_tol = 1e-9);

}  // namespace exclusion
