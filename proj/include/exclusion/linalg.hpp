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
 * Small dense complex linear algebra: Hermitian eigendecomposition, PSD cone
 * projection, Haar-random sampling, and Gram-overlap magnitudes.
 *
 * Everything here is deterministic given (inputs, seed) and operates on
 * immutable values, so concurrent read-only use is safe.
 */

#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "exclusion/types.hpp"

namespace exclusion {

/// Deterministic random source. Uniform doubles are produced directly from
/// mt19937_64 output bits and normals via Box-Muller, so the stream does not
/// depend on standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe to feed to log().
  double uniform_pos() { return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53; }

  double normal();
  Complex normal_complex();

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Derives an independent stream seed from (seed, stream) via splitmix64.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Spectral decomposition for Hermitian matrices of dimension <= 16.
/// Eigenvalues come back sorted ascending with orthonormal eigenvectors;
/// reconstruction holds within 1e-10 * max(1, ||A||_F).
EigDecomposition hermitian_eig(const HermitianOperator& a);

/// Frobenius-nearest PSD matrix: eigenvalues clipped at zero.
HermitianOperator psd_project(const HermitianOperator& a);

/// Haar-distributed pure state: 2*dim standard normals, viewed as a complex
/// vector and normalized.
PureState haar_random_state(int dim, Rng& rng);
PureState haar_random_state(int dim, std::uint64_t seed);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phase
/// convention diag(R) > 0.
CMat haar_random_unitary(int dim, Rng& rng);

/// Pairwise overlap magnitudes (|<a|b>|, |<a|c>|, |<b|c>|).
/// Invariant under global phases on any argument.
std::array<double, 3> gram_magnitudes(const PureState& a, const PureState& b, const PureState& c);

/// Number of eigenvalues above tol.
int rank_of(const HermitianOperator& a, double tol = 1e-7);

double min_eigenvalue(const HermitianOperator& a);
double max_eigenvalue(const HermitianOperator& a);

}  // namespace exclusion
