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

#include "exclusion/sdp.hpp"

#include <cmath>
#include <limits>

#include "exclusion/linalg.hpp"

namespace exclusion {

namespace {

constexpr int kMaxStates = 10;
constexpr int kMaxSdpDim = 10;
constexpr double kDualFeasTol = 1e-8;
constexpr double kGapFloor = -1e-9;

// In-place PSD projection of a Hermitian matrix, shared eigensolver.
void psd_clip(Eigen::SelfAdjointEigenSolver<CMat>& es, CMat& m, CMat& scratch) {
  es.compute(m);
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  const int d = static_cast<int>(m.rows());
  scratch.setZero(d, d);
  for (int i = 0; i < d; ++i) {
    if (vals[i] > 0.0) scratch.noalias() += vals[i] * vecs.col(i) * vecs.col(i).adjoint();
  }
  m = 0.5 * (scratch + scratch.adjoint());
}

bool stack_finite(const std::vector<CMat>& blocks) {
  for (const auto& b : blocks) {
    if (!all_finite(b)) return false;
  }
  return true;
}

struct Certificate {
  CMat y;
  double value = 0.0;
  double feas_residual = 0.0;  // max_i lambda_max(Y - C_i) before shifting
};

// Builds Y from the splitting multipliers, shifted so Y <= C_i exactly.
// At a fixed point the scaled multiplier lambda_i = sigma*U_i satisfies
// C_i + lambda_i = -W for a block-constant W, and Y = -W is dual feasible.
Certificate extract_certificate(const std::vector<CMat>& c_ops, const std::vector<CMat>& u,
                                double sigma) {
  const int n = static_cast<int>(c_ops.size());
  const int d = static_cast<int>(c_ops.front().rows());
  CMat y = CMat::Zero(d, d);
  for (int i = 0; i < n; ++i) y += c_ops[i] + sigma * u[i];
  y /= static_cast<double>(n);
  y = 0.5 * (y + y.adjoint()).eval();

  double worst = -std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<CMat> es;
  for (int i = 0; i < n; ++i) {
    es.compute(y - c_ops[i], Eigen::EigenvaluesOnly);
    worst = std::max(worst, es.eigenvalues().maxCoeff());
  }
  Certificate cert;
  cert.feas_residual = worst;
  if (worst > 0.0) y -= worst * CMat::Identity(d, d);
  cert.y = std::move(y);
  cert.value = cert.y.trace().real();
  return cert;
}

// fp-noise clamp onto the mathematically guaranteed range
double clamp_unit_interval(double value) {
  if (value < 0.0 && value >= -1e-12) return 0.0;
  if (value > 1.0 && value <= 1.0 + 1e-12) return 1.0;
  return value;
}

SdpSolution analytic_single_state(const ExclusionInstance& instance) {
  const int d = instance.dim();
  const double w = instance.weights().front();
  // One outcome forced to the identity; the dual optimum is Y = w * rho.
  SdpSolution sol{Povm({HermitianOperator(CMat::Identity(d, d))}),
                  0.0,
                  HermitianOperator(w * instance.densities().front()),
                  0.0,
                  0.0,
                  0,
                  SolveStatus::optimal};
  sol.primal_value = clamp_unit_interval(w * instance.densities().front().trace().real());
  sol.dual_value = sol.primal_value;
  sol.gap = 0.0;
  return sol;
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::infeasible_numerics: return "infeasible_numerics";
  }
  return "unknown";
}

SdpSolution solve_exclusion_sdp(const ExclusionInstance& instance, const SolverConfig& config) {
  const int n = instance.n_states();
  const int d = instance.dim();
  if (n > kMaxStates) throw ValidationError("sdp: at most 10 states supported");
  if (d > kMaxSdpDim) throw ValidationError("sdp: dimension at most 10 supported");
  if (!(config.gap_tol > 0.0) || !(config.step > 0.0) || config.max_iterations < 1) {
    throw ValidationError("sdp: config values must be positive");
  }
  if (n == 1) return analytic_single_state(instance);

  std::vector<CMat> c_ops(n);
  for (int i = 0; i < n; ++i) c_ops[i] = instance.weights()[i] * instance.densities()[i];

  const CMat identity = CMat::Identity(d, d);
  const double alpha = config.over_relaxation;
  double sigma = config.step;

  std::vector<CMat> z(n, identity / static_cast<double>(n));
  std::vector<CMat> u(n, CMat::Zero(d, d));
  std::vector<CMat> x(n, CMat::Zero(d, d));
  std::vector<CMat> z_prev(n);
  CMat mean_shift(d, d), scratch(d, d);
  Eigen::SelfAdjointEigenSolver<CMat> es;

  SolveStatus status = SolveStatus::max_iter;
  int iterations = config.max_iterations;
  double best_progress = std::numeric_limits<double>::infinity();
  int stall = 0;

  const double res_scale = std::sqrt(static_cast<double>(n * d));

  for (int k = 0; k < config.max_iterations; ++k) {
    // Affine step: project Z - U - C/sigma onto {sum X_i = I}.
    mean_shift.setZero();
    for (int i = 0; i < n; ++i) {
      x[i] = z[i] - u[i] - c_ops[i] / sigma;
      mean_shift += x[i];
    }
    mean_shift = (mean_shift - identity) / static_cast<double>(n);
    for (int i = 0; i < n; ++i) x[i] -= mean_shift;

    // Cone step on the over-relaxed iterate, then multiplier update.
    double primal_res_sq = 0.0;
    double dual_res_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      z_prev[i] = z[i];
      z[i] = alpha * x[i] + (1.0 - alpha) * z_prev[i] + u[i];
      psd_clip(es, z[i], scratch);
      u[i] += alpha * x[i] + (1.0 - alpha) * z_prev[i] - z[i];
      primal_res_sq += (x[i] - z[i]).squaredNorm();
      dual_res_sq += (z[i] - z_prev[i]).squaredNorm();
    }
    const double primal_res = std::sqrt(primal_res_sq);
    const double dual_res = sigma * std::sqrt(dual_res_sq);
    const double res = std::max(primal_res, dual_res);
    const double res_tol = config.residual_tol * res_scale;

    if (!stack_finite(z) || !stack_finite(u)) {
      status = SolveStatus::infeasible_numerics;
      iterations = k + 1;
      break;
    }

    // The certificate and the iterate's own feasibility are the gate; the
    // residual only decides when checking is worthwhile.
    if (res <= res_tol || (res <= 1e-6 && (k % 250) == 249)) {
      double primal = 0.0;
      CMat completeness = -identity;
      for (int i = 0; i < n; ++i) {
        primal += (c_ops[i].adjoint() * z[i]).trace().real();
        completeness += z[i];
      }
      const Certificate cert = extract_certificate(c_ops, u, sigma);
      const double gap = primal - cert.value;
      if (gap <= config.gap_tol && gap >= kGapFloor && cert.feas_residual <= kDualFeasTol &&
          completeness.norm() <= 0.5e-9) {
        status = SolveStatus::optimal;
        iterations = k + 1;
        break;
      }
      // Certificate not good enough yet; below the residual target, keep
      // iterating without triggering the stall fallback.
      if (res <= res_tol) {
        stall = 0;
        continue;
      }
    }

    // Stall fallback: halve the step when the residual stops improving.
    if (res < 0.9 * best_progress) {
      best_progress = res;
      stall = 0;
    } else if (++stall >= config.stall_window) {
      const double sigma_new = std::max(sigma * config.restart_step_factor, 1e-3);
      if (sigma_new != sigma) {
        // Multipliers are stored scaled by sigma; keep lambda = sigma*U fixed.
        const double ratio = sigma / sigma_new;
        for (int i = 0; i < n; ++i) u[i] *= ratio;
        sigma = sigma_new;
      }
      stall = 0;
      best_progress = std::numeric_limits<double>::infinity();
    }
  }

  double primal = 0.0;
  for (int i = 0; i < n; ++i) primal += (c_ops[i].adjoint() * z[i]).trace().real();
  primal = clamp_unit_interval(primal);
  const Certificate cert = extract_certificate(c_ops, u, sigma);

  std::vector<HermitianOperator> elements;
  elements.reserve(n);
  for (int i = 0; i < n; ++i) elements.emplace_back(z[i]);

  SdpSolution sol{Povm(std::move(elements)),
                  primal,
                  HermitianOperator(cert.y),
                  cert.value,
                  primal - cert.value,
                  iterations,
                  status};

  if (sol.status == SolveStatus::optimal && sol.primal_value <= kEpsZero && n <= 4 && d <= 4) {
    sol.povm = reduce_to_extremal(sol.povm, instance);
  }
  return sol;
}

bool is_povm_excludable(const ExclusionInstance& instance, const SolverConfig& config,
                        double eps) {
  if (!(eps >= 0.0)) throw ValidationError("sdp: eps must be >= 0");
  const SdpSolution sol = solve_exclusion_sdp(instance, config);
  if (sol.status != SolveStatus::optimal) {
    throw NumericalError(std::string("sdp: solve ended with status ") + to_string(sol.status));
  }
  return sol.primal_value <= eps && sol.dual_value <= eps;
}

ValidationReport validate_povm(const Povm& povm, double completeness_tol, double psd_tol,
                               double rank_tol) {
  ValidationReport report;
  if (povm.elements.empty()) return report;
  const int d = povm.dim();
  CMat sum = CMat::Zero(d, d);
  bool psd_ok = true;
  for (const auto& element : povm.elements) {
    sum += element.mat();
    const EigDecomposition eig = hermitian_eig(element);
    const double min_eig = eig.eigenvalues.minCoeff();
    report.min_eigenvalues.push_back(min_eig);
    int rank = 0;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
      if (eig.eigenvalues[i] > rank_tol) ++rank;
    }
    report.ranks.push_back(rank);
    psd_ok = psd_ok && min_eig >= -psd_tol;
  }
  report.completeness_residual = (sum - CMat::Identity(d, d)).norm();
  report.valid = psd_ok && report.completeness_residual <= completeness_tol;
  return report;
}

Povm reduce_to_extremal(const Povm& povm, const ExclusionInstance& instance, double rank_tol,
                        double objective_tol) {
  if (povm.dim() != instance.dim() || povm.n_outcomes() != instance.n_states()) {
    throw ValidationError("reduce_to_extremal: POVM shape must match the instance");
  }
  const int n = povm.n_outcomes();
  const int d = povm.dim();
  std::vector<CMat> m(n);
  for (int i = 0; i < n; ++i) m[i] = povm.elements[i].mat();

  Eigen::SelfAdjointEigenSolver<CMat> es;
  for (int pass = 0; pass < 4 * n; ++pass) {
    // Spectral data per element: range projectors and pseudo-inverses.
    std::vector<int> ranks(n, 0);
    std::vector<CMat> range_proj(n), pinv(n);
    for (int i = 0; i < n; ++i) {
      es.compute(m[i]);
      range_proj[i] = CMat::Zero(d, d);
      pinv[i] = CMat::Zero(d, d);
      for (int j = 0; j < d; ++j) {
        const double lambda = es.eigenvalues()[j];
        if (lambda > rank_tol) {
          ++ranks[i];
          range_proj[i].noalias() +=
              es.eigenvectors().col(j) * es.eigenvectors().col(j).adjoint();
          pinv[i].noalias() +=
              (1.0 / lambda) * es.eigenvectors().col(j) * es.eigenvectors().col(j).adjoint();
        }
      }
    }

    bool transferred = false;
    for (int i = 0; i < n && !transferred; ++i) {
      if (ranks[i] < 2) continue;
      for (int j = i + 1; j < n && !transferred; ++j) {
        if (ranks[j] < 2) continue;
        // A direction common to both ranges, if any: top eigenvector of
        // P_i P_j P_i with eigenvalue 1.
        es.compute(0.5 * (range_proj[i] * range_proj[j] * range_proj[i] +
                          (range_proj[i] * range_proj[j] * range_proj[i]).adjoint()));
        if (es.eigenvalues().maxCoeff() < 1.0 - 1e-6) continue;
        const CVec u = es.eigenvectors().col(d - 1);

        // The transfer must not move the objective (it cannot at value 0,
        // where every u in a range is orthogonal to the excluded state).
        const double rate_i = (u.adjoint() * (instance.weights()[i] * instance.densities()[i]) * u)
                                  .value()
                                  .real();
        const double rate_j = (u.adjoint() * (instance.weights()[j] * instance.densities()[j]) * u)
                                  .value()
                                  .real();
        if (std::abs(rate_i - rate_j) > objective_tol) continue;

        const double denom = (u.adjoint() * pinv[j] * u).value().real();
        if (denom <= 0.0) continue;
        const double eps_max = 1.0 / denom;
        m[i] += eps_max * u * u.adjoint();
        m[j] -= eps_max * u * u.adjoint();
        m[i] = 0.5 * (m[i] + m[i].adjoint()).eval();
        m[j] = 0.5 * (m[j] + m[j].adjoint()).eval();
        transferred = true;
      }
    }
    if (!transferred) break;
  }

  std::vector<HermitianOperator> elements;
  elements.reserve(n);
  for (int i = 0; i < n; ++i) elements.emplace_back(m[i]);
  return Povm(std::move(elements));
}

}  // namespace exclusion
