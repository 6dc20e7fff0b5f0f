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

#include "exclusion/cfs.hpp"

#include <cmath>

#include "exclusion/linalg.hpp"

namespace exclusion {

namespace {

constexpr double kOverlapSlack = 1e-9;

void check_overlap(double j, const char* name) {
  if (!std::isfinite(j) || j < 0.0 || j > 1.0 + kOverlapSlack) {
    throw ValidationError(std::string("cfs: overlap ") + name + " must lie in [0, 1]");
  }
}

}  // namespace

double cfs_lhs(double j1, double j2, double j3) {
  check_overlap(j1, "j1");
  check_overlap(j2, "j2");
  check_overlap(j3, "j3");
  return j1 * j1 + j2 * j2 + j3 * j3 + 2.0 * j1 * j2 * j3;
}

CfsReport cfs_report_from_overlaps(double j1, double j2, double j3, double eps) {
  if (!(eps >= 0.0)) throw ValidationError("cfs: eps must be >= 0");
  CfsReport report;
  report.j1 = j1;
  report.j2 = j2;
  report.j3 = j3;
  report.lhs = cfs_lhs(j1, j2, j3);
  report.margin = 1.0 - report.lhs;
  report.excludable = report.lhs <= 1.0 + eps;
  return report;
}

CfsReport cfs_excludable(const PureState& a, const PureState& b, const PureState& c, double eps) {
  if (a.dim() != 3 || b.dim() != 3 || c.dim() != 3) {
    throw UnsupportedDimensionError("cfs: criterion applies to 3 pure states in 3 dimensions");
  }
  const auto j = gram_magnitudes(a, b, c);
  return cfs_report_from_overlaps(j[0], j[1], j[2], eps);
}

std::array<PureState, 3> states_from_overlaps(double j1, double j2, double j3) {
  check_overlap(j1, "j1");
  check_overlap(j2, "j2");
  check_overlap(j3, "j3");
  CMat gram(3, 3);
  gram << 1.0, j1, j2,  //
      j1, 1.0, j3,      //
      j2, j3, 1.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(gram);
  if (es.eigenvalues().minCoeff() < -1e-9) {
    throw ValidationError("cfs: overlaps are not realizable (Gram matrix not PSD)");
  }
  Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
  // F = sqrt(Lambda) V^*; columns of F have Gram matrix exactly `gram`.
  CMat factors = clipped.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  return {PureState::normalized(factors.col(0)), PureState::normalized(factors.col(1)),
          PureState::normalized(factors.col(2))};
}

}  // namespace exclusion
