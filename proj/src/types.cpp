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

#include "exclusion/types.hpp"

#include <cmath>
#include <numeric>

namespace exclusion {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kHermTol = 1e-12;
constexpr double kWeightSumTol = 1e-10;
constexpr double kTraceTol = 1e-8;
constexpr double kDensityPsdTol = 1e-9;

}  // namespace

bool all_finite(const CVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  }
  return true;
}

bool all_finite(const CMat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

PureState::PureState(CVec v) : vec_(std::move(v)) {
  if (vec_.size() == 0) throw ValidationError("pure state: empty vector");
  if (!all_finite(vec_)) throw ValidationError("pure state: non-finite entries");
  const double norm = vec_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw ValidationError("pure state: norm " + std::to_string(norm) + " is not 1 within 1e-12");
  }
}

PureState PureState::normalized(const CVec& v) {
  if (v.size() == 0) throw ValidationError("pure state: empty vector");
  if (!all_finite(v)) throw ValidationError("pure state: non-finite entries");
  const double norm = v.norm();
  if (norm < 1e-14) throw ValidationError("pure state: cannot normalize the zero vector");
  return PureState(CVec(v / norm));
}

HermitianOperator::HermitianOperator(CMat m) : mat_(std::move(m)) {
  if (mat_.rows() == 0 || mat_.rows() != mat_.cols()) {
    throw ValidationError("hermitian operator: matrix must be square and non-empty");
  }
  if (!all_finite(mat_)) throw ValidationError("hermitian operator: non-finite entries");
  const double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
  const double asym = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermTol * scale) {
    throw ValidationError("hermitian operator: entries deviate from conj-symmetry by " +
                          std::to_string(asym));
  }
  mat_ = 0.5 * (mat_ + mat_.adjoint()).eval();
}

Povm::Povm(std::vector<HermitianOperator> elems) : elements(std::move(elems)) {
  if (elements.empty()) throw ValidationError("povm: needs at least one element");
  const int d = elements.front().dim();
  for (const auto& e : elements) {
    if (e.dim() != d) throw ValidationError("povm: elements must share one dimension");
  }
}

int Povm::dim() const { return elements.empty() ? 0 : elements.front().dim(); }

ExclusionInstance::ExclusionInstance(std::vector<PureState> states, std::vector<double> weights)
    : pure_states_(std::move(states)) {
  if (pure_states_.empty()) throw ValidationError("instance: needs at least one state");
  dim_ = pure_states_.front().dim();
  for (const auto& s : pure_states_) {
    if (s.dim() != dim_) throw ValidationError("instance: states must share one dimension");
    densities_.push_back(s.density());
  }
  init_weights(std::move(weights));
}

ExclusionInstance::ExclusionInstance(std::vector<HermitianOperator> densities,
                                     std::vector<double> weights) {
  if (densities.empty()) throw ValidationError("instance: needs at least one state");
  dim_ = densities.front().dim();
  for (const auto& rho : densities) {
    if (rho.dim() != dim_) throw ValidationError("instance: states must share one dimension");
    if (std::abs(rho.trace_real() - 1.0) > kTraceTol) {
      throw ValidationError("instance: density operator trace must be 1");
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(rho.mat(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kDensityPsdTol) {
      throw ValidationError("instance: density operator must be positive semidefinite");
    }
    densities_.push_back(rho.mat());
  }
  init_weights(std::move(weights));
}

void ExclusionInstance::init_weights(std::vector<double> weights) {
  const std::size_t n = densities_.size();
  if (weights.empty()) {
    weights_.assign(n, 1.0 / static_cast<double>(n));
    return;
  }
  if (weights.size() != n) throw ValidationError("instance: one weight per state required");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("instance: weights must be > 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw ValidationError("instance: weights must sum to 1 within 1e-10");
  }
  weights_ = std::move(weights);
}

}  // namespace exclusion
