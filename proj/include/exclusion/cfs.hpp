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
 * Closed-form decision procedure for projective excludability of three pure
 * states in three dimensions: three states are excludable by a projective
 * measurement iff j1^2 + j2^2 + j3^2 + 2*j1*j2*j3 <= 1 on their pairwise
 * overlap magnitudes. The bound is non-strict: equality still excludes.
 */

#pragma once

#include <array>

#include "exclusion/types.hpp"

namespace exclusion {

struct CfsReport {
  double j1 = 0.0;
  double j2 = 0.0;
  double j3 = 0.0;
  double lhs = 0.0;        // j1^2 + j2^2 + j3^2 + 2*j1*j2*j3
  bool excludable = false;  // lhs <= 1 + eps
  double margin = 0.0;      // 1 - lhs
};

/// The criterion polynomial. Each overlap must lie in [0, 1] (up to 1e-9).
/// Monotone nondecreasing in each argument on [0,1]^3.
double cfs_lhs(double j1, double j2, double j3);

/// Report for given overlap magnitudes.
CfsReport cfs_report_from_overlaps(double j1, double j2, double j3, double eps = kEpsZero);

/// Report for three 3-dimensional pure states. Any other dimension raises
/// UnsupportedDimensionError; the criterion is specific to 3 states in 3D.
CfsReport cfs_excludable(const PureState& a, const PureState& b, const PureState& c,
                         double eps = kEpsZero);

/// Realizes three unit vectors whose pairwise overlaps are the given
/// nonnegative reals, via a Hermitian square root of the Gram matrix.
/// Raises ValidationError when the Gram matrix is not PSD (overlaps not
/// realizable).
std::array<PureState, 3> states_from_overlaps(double j1, double j2, double j3);

}  // namespace exclusion
