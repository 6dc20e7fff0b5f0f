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

#include "exclusion/linalg.hpp"

#include <cmath>

namespace exclusion {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_pos();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  spare_ = radius * std::sin(kTwoPi * u2);
  have_spare_ = true;
  return radius * std::cos(kTwoPi * u2);
}

Complex Rng::normal_complex() {
  const double u1 = uniform_pos();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  return {radius * std::cos(kTwoPi * u2), radius * std::sin(kTwoPi * u2)};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

EigDecomposition hermitian_eig(const HermitianOperator& a) {
  if (a.dim() > kMaxDim) {
    throw ValidationError("hermitian_eig: dimension exceeds " + std::to_string(kMaxDim));
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(a.mat());
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_eig: eigensolver failed");
  return EigDecomposition{es.eigenvalues(), es.eigenvectors()};
}

HermitianOperator psd_project(const HermitianOperator& a) {
  const EigDecomposition eig = hermitian_eig(a);
  const int d = a.dim();
  CMat out = CMat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double lambda = eig.eigenvalues[i];
    if (lambda > 0.0) out.noalias() += lambda * eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
  }
  out = 0.5 * (out + out.adjoint()).eval();
  return HermitianOperator(std::move(out));
}

PureState haar_random_state(int dim, Rng& rng) {
  if (dim < 1) throw ValidationError("haar_random_state: dim must be >= 1");
  if (dim > kMaxDim) throw ValidationError("haar_random_state: dim exceeds 16");
  CVec v(dim);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v[i] = rng.normal_complex();
    norm2 = v.squaredNorm();
  } while (norm2 < 1e-280);
  return PureState(CVec(v / std::sqrt(norm2)));
}

PureState haar_random_state(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random_state(dim, rng);
}

CMat haar_random_unitary(int dim, Rng& rng) {
  if (dim < 1) throw ValidationError("haar_random_unitary: dim must be >= 1");
  CMat g(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) g(i, j) = rng.normal_complex();
  }
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ() * CMat::Identity(dim, dim);
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

std::array<double, 3> gram_magnitudes(const PureState& a, const PureState& b,
                                      const PureState& c) {
  if (a.dim() != b.dim() || a.dim() != c.dim()) {
    throw ValidationError("gram_magnitudes: states must share one dimension");
  }
  return {std::abs(a.vec().dot(b.vec())), std::abs(a.vec().dot(c.vec())),
          std::abs(b.vec().dot(c.vec()))};
}

int rank_of(const HermitianOperator& a, double tol) {
  const EigDecomposition eig = hermitian_eig(a);
  int rank = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues[i] > tol) ++rank;
  }
  return rank;
}

double min_eigenvalue(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(a.mat(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(a.mat(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace exclusion
