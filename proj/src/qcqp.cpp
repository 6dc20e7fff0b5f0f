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

#include "exclusion/qcqp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace exclusion {

namespace {

constexpr int kMaxQcqpOutcomes = 12;

void check_assignment(const std::vector<PureState>& states, const FrameAssignment& assignment) {
  if (states.empty()) throw ValidationError("qcqp: needs at least one state");
  const int d = states.front().dim();
  for (const auto& s : states) {
    if (s.dim() != d) throw ValidationError("qcqp: states must share one dimension");
  }
  if (static_cast<int>(assignment.indices.size()) != d) {
    throw ValidationError("qcqp: assignment size must equal the state dimension");
  }
  int prev = 0;
  for (int idx : assignment.indices) {
    if (idx < 0 || idx >= static_cast<int>(states.size())) {
      throw ValidationError("qcqp: assignment index out of range");
    }
    if (idx < prev) throw ValidationError("qcqp: assignment must be nondecreasing");
    prev = idx;
  }
}

// Orthonormal basis of the complement of a unit vector, via Householder QR.
CMat complement_basis(const CVec& v) {
  const int d = static_cast<int>(v.size());
  const CMat column = v;
  Eigen::HouseholderQR<CMat> qr(column);
  CMat q = qr.householderQ() * CMat::Identity(d, d);
  return q.rightCols(d - 1);
}

// Closed form for an assignment where state s occupies d-1 outcomes and
// state t the remaining one: by completeness the objective reduces to
// 1 + v^*(t t^* - s s^*)v over the unit vector v of the t-outcome, so the
// optimum is 1 - sqrt(1 - |<s|t>|^2).
QcqpSolution solve_dominant_pair(const CVec& s, const CVec& t, int t_outcome) {
  const int d = static_cast<int>(s.size());
  CMat diff = t * t.adjoint() - s * s.adjoint();
  Eigen::SelfAdjointEigenSolver<CMat> es(diff);
  const CVec v = es.eigenvectors().col(0);  // eigenvalue is -sqrt(1-|<s|t>|^2)

  QcqpSolution sol;
  sol.frame = CMat::Zero(d, d);
  sol.frame.col(t_outcome) = v;
  const CMat rest = complement_basis(v);
  int col = 0;
  for (int i = 0; i < d; ++i) {
    if (i == t_outcome) continue;
    sol.frame.col(i) = rest.col(col++);
  }
  sol.converged = true;
  return sol;
}

struct LocalResult {
  double objective = std::numeric_limits<double>::infinity();
  double grad_norm = std::numeric_limits<double>::infinity();
  bool converged = false;
};

// One cyclic sweep of exact two-column updates: for each column pair the
// restriction of the objective to their span is q^* K q over unit q with K
// a 2x2 Hermitian matrix, so the optimal rotation is an eigenvector. Exact
// arithmetic per pair makes the endgame immune to the fp noise floor that
// stalls line searches near a minimum.
void pair_rotation_sweep(const std::vector<CVec>& svecs, CMat& frame) {
  const int d = static_cast<int>(frame.cols());
  Eigen::Matrix2cd rot;
  rot << 0.0, -1.0, 1.0, 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const Complex si_vi = svecs[i].dot(frame.col(i));
      const Complex si_vj = svecs[i].dot(frame.col(j));
      const Complex sj_vi = svecs[j].dot(frame.col(i));
      const Complex sj_vj = svecs[j].dot(frame.col(j));
      Eigen::Matrix2cd bi, bj;
      bi << std::conj(si_vi) * si_vi, std::conj(si_vi) * si_vj,  //
          std::conj(si_vj) * si_vi, std::conj(si_vj) * si_vj;
      bj << std::conj(sj_vi) * sj_vi, std::conj(sj_vi) * sj_vj,  //
          std::conj(sj_vj) * sj_vi, std::conj(sj_vj) * sj_vj;
      // contribution of the orthogonal partner column q2 = rot * conj(q1)
      Eigen::Matrix2cd k = bi + (rot.adjoint() * bj * rot).transpose();
      k = 0.5 * (k + k.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(k);
      const Eigen::Vector2cd q1 = es.eigenvectors().col(0);
      Eigen::Vector2cd q2;
      q2 << -std::conj(q1(1)), std::conj(q1(0));
      const CVec vi_new = frame.col(i) * q1(0) + frame.col(j) * q1(1);
      const CVec vj_new = frame.col(i) * q2(0) + frame.col(j) * q2(1);
      frame.col(i) = vi_new;
      frame.col(j) = vj_new;
    }
  }
}

// Projected gradient with QR retraction and Armijo backtracking (accepted
// steps double), followed by exact pair-rotation polish sweeps that push the
// projected-gradient norm to the certification tolerance.
LocalResult local_minimize(const std::vector<CVec>& svecs, CMat& frame, const QcqpConfig& config) {
  const int d = static_cast<int>(frame.rows());
  CMat eucl(d, d), grad(d, d), trial(d, d), vtg(d, d);

  auto objective = [&](const CMat& v) {
    double obj = 0.0;
    for (int i = 0; i < d; ++i) obj += std::norm(svecs[i].dot(v.col(i)));
    return obj;
  };

  auto gradient = [&](const CMat& v) {
    for (int i = 0; i < d; ++i) eucl.col(i).noalias() = (2.0 * svecs[i].dot(v.col(i))) * svecs[i];
    vtg.noalias() = v.adjoint() * eucl;
    grad.noalias() = v * (0.5 * (vtg - vtg.adjoint()));
  };

  LocalResult result;
  double f = objective(frame);
  double step = 1.0;
  int iter = 0;
  const double switch_tol = std::max(1e-3, config.grad_tol);

  for (; iter < config.max_iterations; ++iter) {
    gradient(frame);
    const double gn = grad.norm();
    result.objective = f;
    result.grad_norm = gn;
    if (gn <= config.grad_tol) {
      result.converged = true;
      return result;
    }
    if (gn <= switch_tol) break;  // hand over to the polish phase
    bool accepted = false;
    while (step > 1e-16) {
      trial = retract(frame, -step * grad);
      const double f_trial = objective(trial);
      if (f_trial <= f - 1e-4 * step * gn * gn) {
        frame = trial;
        f = f_trial;
        step = std::min(step * 2.0, 1e3);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // line search at the fp noise floor
  }

  int stagnant = 0;
  double best_gn = std::numeric_limits<double>::infinity();
  for (; iter < config.max_iterations; ++iter) {
    pair_rotation_sweep(svecs, frame);
    if ((iter & 31) == 0) frame = retract(frame, CMat::Zero(d, d));
    const double f_new = objective(frame);
    gradient(frame);
    const double gn = grad.norm();
    result.objective = f_new;
    result.grad_norm = gn;
    if (gn <= config.grad_tol) {
      result.converged = true;
      return result;
    }
    // Stop only when neither the value nor the gradient norm moves.
    if (f_new >= f - 1e-18 && gn >= 0.995 * best_gn) {
      if (++stagnant >= 16) break;
    } else {
      stagnant = 0;
    }
    best_gn = std::min(best_gn, gn);
    f = f_new;
  }
  result.converged = result.grad_norm <= config.grad_tol;
  return result;
}

std::uint64_t assignment_stream(const FrameAssignment& assignment) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (int idx : assignment.indices) h = h * 0x100000001b3ULL + static_cast<std::uint64_t>(idx + 1);
  return h;
}

}  // namespace

std::vector<FrameAssignment> enumerate_assignments(int n_states, int n_outcomes) {
  if (n_states < 1 || n_outcomes < 1) {
    throw ValidationError("enumerate_assignments: counts must be >= 1");
  }
  if (n_outcomes > kMaxQcqpOutcomes || n_states > kMaxDim) {
    throw ValidationError("enumerate_assignments: size limits exceeded");
  }
  std::vector<FrameAssignment> out;
  std::vector<int> current(n_outcomes, 0);
  while (true) {
    out.push_back(FrameAssignment{current});
    int pos = n_outcomes - 1;
    while (pos >= 0 && current[pos] == n_states - 1) --pos;
    if (pos < 0) break;
    const int next = current[pos] + 1;
    for (int i = pos; i < n_outcomes; ++i) current[i] = next;
  }
  return out;
}

double frame_objective(const std::vector<PureState>& states, const FrameAssignment& assignment,
                       const CMat& frame) {
  check_assignment(states, assignment);
  const int d = states.front().dim();
  if (frame.rows() != d || frame.cols() != d) {
    throw ValidationError("qcqp: frame must be dim x dim");
  }
  double obj = 0.0;
  for (int i = 0; i < d; ++i) {
    obj += std::norm(states[assignment.indices[i]].vec().dot(frame.col(i)));
  }
  return obj;
}

CMat tangent_project(const CMat& frame, const CMat& ambient) {
  CMat vtg = frame.adjoint() * ambient;
  return frame * (0.5 * (vtg - vtg.adjoint()));
}

CMat frame_gradient(const std::vector<PureState>& states, const FrameAssignment& assignment,
                    const CMat& frame) {
  check_assignment(states, assignment);
  const int d = states.front().dim();
  if (frame.rows() != d || frame.cols() != d) {
    throw ValidationError("qcqp: frame must be dim x dim");
  }
  CMat eucl(d, d);
  for (int i = 0; i < d; ++i) {
    const CVec& s = states[assignment.indices[i]].vec();
    eucl.col(i) = 2.0 * s * s.dot(frame.col(i));
  }
  return tangent_project(frame, eucl);
}

CMat retract(const CMat& frame, const CMat& step) {
  const int d = static_cast<int>(frame.rows());
  CMat m = frame + step;
  // Modified Gram-Schmidt, run twice; R keeps a positive diagonal since no
  // column is ever sign-flipped.
  for (int j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        m.col(j) -= m.col(i) * m.col(i).dot(m.col(j));
      }
    }
    const double norm = m.col(j).norm();
    if (norm < 1e-14) throw NumericalError("retract: degenerate frame perturbation");
    m.col(j) /= norm;
  }
  return m;
}

QcqpSolution solve_assignment_qcqp(const std::vector<PureState>& states,
                                   const FrameAssignment& assignment, const QcqpConfig& config) {
  check_assignment(states, assignment);
  if (config.restarts < 1) throw ValidationError("qcqp: restarts must be >= 1");
  const int d = states.front().dim();

  if (config.use_shortcut) {
    // Multiplicity d: the objective is identically 1 by completeness.
    // Multiplicity d-1: closed-form optimum via the dominant-pair reduction.
    std::vector<int> count(states.size(), 0);
    for (int idx : assignment.indices) ++count[idx];
    int dominant = -1;
    for (std::size_t i = 0; i < count.size(); ++i) {
      if (count[i] >= d - 1) dominant = static_cast<int>(i);
    }
    if (dominant >= 0 && count[dominant] == d) {
      QcqpSolution sol;
      sol.frame = CMat::Identity(d, d);
      sol.converged = true;
      sol.objective = frame_objective(states, assignment, sol.frame);
      return sol;
    }
    if (dominant >= 0 && d >= 2 && count[dominant] == d - 1) {
      int t_outcome = 0;
      for (int i = 0; i < d; ++i) {
        if (assignment.indices[i] != dominant) t_outcome = i;
      }
      QcqpSolution sol = solve_dominant_pair(states[dominant].vec(),
                                             states[assignment.indices[t_outcome]].vec(),
                                             t_outcome);
      sol.objective = frame_objective(states, assignment, sol.frame);
      return sol;
    }
  }

  std::vector<CVec> svecs(d);
  for (int i = 0; i < d; ++i) svecs[i] = states[assignment.indices[i]].vec();

  Rng rng(derive_seed(config.seed, assignment_stream(assignment)));
  QcqpSolution best;
  best.objective = std::numeric_limits<double>::infinity();
  CMat frame(d, d);
  for (int restart = 0; restart < config.restarts; ++restart) {
    frame = haar_random_unitary(d, rng);
    const LocalResult local = local_minimize(svecs, frame, config);
    if (restart == 0 || local.objective < best.objective) {
      best.objective = local.objective;
      best.frame = frame;
      best.converged = local.converged;
      best.grad_norm = local.grad_norm;
    }
    best.restarts_used = restart + 1;
    if (config.early_stop_on_zero && best.converged && best.objective <= config.zero_stop) break;
  }
  return best;
}

MinOverAssignmentsResult min_over_assignments(const std::vector<PureState>& states,
                                              const QcqpConfig& config) {
  if (states.empty()) throw ValidationError("qcqp: needs at least one state");
  const int d = states.front().dim();
  MinOverAssignmentsResult result;
  result.assignments = enumerate_assignments(static_cast<int>(states.size()), d);
  result.objectives.reserve(result.assignments.size());
  result.all_converged = true;

  bool first = true;
  for (const auto& assignment : result.assignments) {
    QcqpSolution sol = solve_assignment_qcqp(states, assignment, config);
    result.objectives.push_back(sol.objective);
    result.all_converged = result.all_converged && sol.converged;
    if (first || sol.objective < result.value) {
      result.value = sol.objective;
      result.assignment = assignment;
      result.best = std::move(sol);
      first = false;
    }
  }
  return result;
}

}  // namespace exclusion
