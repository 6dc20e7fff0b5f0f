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
 * Core domain types shared by every module: pure states, Hermitian
 * operators, POVMs, and exclusion problem instances.
 */

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace exclusion {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Global "is this value zero" tolerance for excludability verdicts.
inline constexpr double kEpsZero = 1e-7;

/// Largest matrix dimension the dense routines accept.
inline constexpr int kMaxDim = 16;

/// Raised when an input violates a documented precondition or invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation only defined for a specific dimension gets another.
class UnsupportedDimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Raised when a solver cannot certify its result (budget exhausted, NaNs, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool all_finite(const CVec& v);
bool all_finite(const CMat& m);

/// Unit-norm complex vector. The constructor enforces ||v|| = 1 within 1e-12.
class PureState {
 public:
  explicit PureState(CVec v);

  /// Rescales v to unit norm first; rejects the zero vector.
  static PureState normalized(const CVec& v);

  const CVec& vec() const { return vec_; }
  int dim() const { return static_cast<int>(vec_.size()); }

  /// Rank-1 density operator |v><v|.
  CMat density() const { return vec_ * vec_.adjoint(); }

 private:
  CVec vec_;
};

/// n x n complex Hermitian matrix. The constructor checks Hermiticity within
/// 1e-12 (relative to the largest entry) and stores the exact Hermitian part.
class HermitianOperator {
 public:
  explicit HermitianOperator(CMat m);

  const CMat& mat() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  double trace_real() const { return mat_.trace().real(); }

 private:
  CMat mat_;
};

/// Spectral decomposition of a Hermitian operator, eigenvalues ascending.
struct EigDecomposition {
  Eigen::VectorXd eigenvalues;
  CMat eigenvectors;  // orthonormal columns, one per eigenvalue
};

/// A measurement candidate: a list of same-dimension Hermitian operators.
/// Shape is enforced here; positivity and completeness are what
/// validate_povm reports on, so deliberately invalid POVMs are representable.
struct Povm {
  std::vector<HermitianOperator> elements;

  Povm() = default;
  explicit Povm(std::vector<HermitianOperator> elems);

  int dim() const;
  int n_outcomes() const { return static_cast<int>(elements.size()); }
};

/// One exclusion problem: the states (pure or general density operators)
/// and the prior weights. Weights default to uniform; the excludability
/// verdict does not depend on them.
class ExclusionInstance {
 public:
  explicit ExclusionInstance(std::vector<PureState> states, std::vector<double> weights = {});
  explicit ExclusionInstance(std::vector<HermitianOperator> densities,
                             std::vector<double> weights = {});

  int dim() const { return dim_; }
  int n_states() const { return static_cast<int>(densities_.size()); }
  const std::vector<CMat>& densities() const { return densities_; }
  const std::vector<double>& weights() const { return weights_; }

  bool has_pure_states() const { return !pure_states_.empty(); }
  const std::vector<PureState>& pure_states() const { return pure_states_; }

 private:
  void init_weights(std::vector<double> weights);

  std::vector<PureState> pure_states_;  // empty when built from densities
  std::vector<CMat> densities_;
  std::vector<double> weights_;
  int dim_ = 0;
};

}  // namespace exclusion
