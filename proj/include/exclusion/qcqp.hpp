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
 * Perfect exclusion by projective measurements, decided through a family of
 * quadratically constrained quadratic programs: one program per
 * n-combination with repetition of the states, each minimizing
 * sum_i v_i^* (s_i s_i^*) v_i over orthonormal frames {v_i}. The overall
 * minimum is zero iff some projective measurement excludes the states.
 *
 * The local solver is projected gradient on the unitary-frame manifold with
 * QR retraction and Armijo backtracking, restarted from Haar-random frames.
 * Assignments where one state occupies at least dim-1 outcomes are solved
 * in closed form instead.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "exclusion/linalg.hpp"
#include "exclusion/types.hpp"

namespace exclusion {

/// A multiset of state indices, one per measurement outcome, kept in
/// canonical nondecreasing order.
struct FrameAssignment {
  std::vector<int> indices;

  bool operator==(const FrameAssignment& other) const { return indices == other.indices; }
};

struct QcqpConfig {
  int restarts = 32;
  int max_iterations = 10000;
  double grad_tol = 1e-8;       // projected-gradient norm for convergence
  std::uint64_t seed = 0;
  bool use_shortcut = true;     // closed forms for multiplicity >= dim-1
  bool early_stop_on_zero = true;
  double zero_stop = 1e-14;     // objective below this ends the restart loop
};

struct QcqpSolution {
  CMat frame;          // columns form the orthonormal frame
  double objective = 0.0;
  int restarts_used = 0;
  bool converged = false;
  double grad_norm = 0.0;
};

/// All n_outcomes-combinations with repetition of {0, ..., n_states-1},
/// in lexicographic order. Exactly C(n_states + n_outcomes - 1, n_outcomes)
/// of them.
std::vector<FrameAssignment> enumerate_assignments(int n_states, int n_outcomes);

/// Objective sum_i |s_{a_i}^* v_i|^2 for a given frame.
double frame_objective(const std::vector<PureState>& states, const FrameAssignment& assignment,
                       const CMat& frame);

/// Riemannian gradient of the objective on the unitary-frame manifold:
/// the Euclidean gradient 2 (s_i s_i^*) v_i per column, projected onto the
/// tangent space at the frame.
CMat frame_gradient(const std::vector<PureState>& states, const FrameAssignment& assignment,
                    const CMat& frame);

/// Projects an ambient direction onto the tangent space at a unitary frame.
CMat tangent_project(const CMat& frame, const CMat& ambient);

/// QR retraction (modified Gram-Schmidt with positive diagonal).
CMat retract(const CMat& frame, const CMat& step);

/// Minimizes one assignment's program. Frames are complete orthonormal
/// bases, so the state dimension must equal the outcome count.
QcqpSolution solve_assignment_qcqp(const std::vector<PureState>& states,
                                   const FrameAssignment& assignment,
                                   const QcqpConfig& config = {});

struct MinOverAssignmentsResult {
  double value = 0.0;
  QcqpSolution best;
  FrameAssignment assignment;
  std::vector<FrameAssignment> assignments;  // enumeration order
  std::vector<double> objectives;            // one per assignment
  bool all_converged = false;
};

/// Minimum over every enumerated assignment; value <= eps_zero declares
/// projective excludability.
MinOverAssignmentsResult min_over_assignments(const std::vector<PureState>& states,
                                              const QcqpConfig& config = {});

}  // namespace exclusion
