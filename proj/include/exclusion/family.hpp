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
 * The canonical extremal three-outcome POVM family in three dimensions and
 * its perfectly excluded states.
 *
 * The family is
 *
 *   M1 = diag(0, 1-x, 1),   M2 = v v^*,   M3 = w w^*
 *
 * with |v1|^2 = r/(r+1), |v2|^2 = x/(r+1), |w1|^2 = 1/(r+1),
 * |w2|^2 = r x/(r+1), v1 and w1 real, phase(v2) = theta,
 * phase(w2) = pi + theta, for x in (0,1), r in (0,inf). Outcome 1 excludes
 * e1; the states b and c annihilated by M2 and M3 form one-parameter
 * families (b1, vartheta) and (c1, gamma). Maximizing the mutual overlap
 * over the free phases (at gamma = vartheta + pi) gives the worst case
 *
 *   j3 = sqrt(1 - b1^2 (1 + r/x)) sqrt(1 - c1^2 (1 + 1/(r x)))
 *        + b1 c1 (1/x - 1),
 *
 * and f = j3^2 + b1^2 + c1^2 + 2 j3 b1 c1 stays at most 1 on the whole
 * domain: every triple excluded by a family POVM is also excludable by a
 * projective measurement. verify_square_identity checks the algebraic heart
 * of that bound, an inequality whose squared difference collapses to
 * (r (1/c1^2 - 1) - (1/r)(1/b1^2 - 1))^2, independent of x.
 */

#pragma once

#include "exclusion/cfs.hpp"
#include "exclusion/types.hpp"

namespace exclusion {

struct FamilyParams {
  double x = 0.5;      // weight split, open interval (0, 1)
  double r = 1.0;      // outcome-2/3 balance, open interval (0, inf)
  double theta = 0.0;  // common phase, [0, 2*pi)
};

struct ExcludedPairParams {
  double b1 = 0.0;
  double c1 = 0.0;
  double vartheta = 0.0;  // phase of b3, [0, 2*pi)
  double gamma = 0.0;     // phase of c3, [0, 2*pi)
};

/// Rejects parameters outside the open domain; the boundary cases degenerate
/// to projective measurements and are not part of the family.
void validate_family_params(const FamilyParams& p);

/// Strict upper bounds for b1 and c1: sqrt(1/(1 + r/x)) and
/// sqrt(1/(1 + 1/(r x))).
double b1_bound(const FamilyParams& p);
double c1_bound(const FamilyParams& p);

/// The three-outcome POVM of the family; ranks are (2, 1, 1).
Povm build_family_povm(const FamilyParams& p);

/// Unit vector annihilated by M2: (b1, -b1 e^{i theta} sqrt(r/x),
/// e^{i vartheta} sqrt(1 - b1^2 (1 + r/x))). Requires 0 <= b1 < b1_bound.
PureState excluded_state_b(const FamilyParams& p, double b1, double vartheta);

/// Unit vector annihilated by M3: (c1, c1 e^{i theta} sqrt(1/(r x)),
/// e^{i gamma} sqrt(1 - c1^2 (1 + 1/(r x)))). Requires 0 <= c1 < c1_bound.
PureState excluded_state_c(const FamilyParams& p, double c1, double gamma);

/// Largest |<b|c>| over the free phases; attained at gamma = vartheta + pi.
double j3_worst_case(const FamilyParams& p, double b1, double c1);

/// f = j3^2 + b1^2 + c1^2 + 2 j3 b1 c1 at the worst-case phases. At most 1
/// on the whole parameter domain.
double f_lhs(const FamilyParams& p, double b1, double c1);

struct SquareIdentityReport {
  double lhs = 0.0;     // 2 sqrt(1/b1^2 - 1 - r/x) sqrt(1/c1^2 - 1 - 1/(r x))
  double rhs = 0.0;     // r/c1^2 + 1/(r b1^2) - 2/x - r - 1/r
  double square = 0.0;  // rhs^2 - lhs^2, computed in extended precision
  double square_closed_form = 0.0;  // (r (1/c1^2 - 1) - (1/r)(1/b1^2 - 1))^2
  double x_used = 0.0;
};

/// Evaluates both sides of the pre-squaring inequality at an explicit x and
/// the x-free closed-form square. rhs^2 - lhs^2 equals the closed form for
/// every feasible x. Requires b1, c1 in (0, 1), r > 0, and x inside the
/// feasible interval (both radicands nonnegative, x < 1).
SquareIdentityReport verify_square_identity_at(double r, double b1, double c1, double x);

/// Same, with x chosen as the midpoint of the feasible interval.
SquareIdentityReport verify_square_identity(double r, double b1, double c1);

/// Builds a = e1, b, c from the constructors and evaluates the projective
/// excludability criterion. Excludable for every valid parameter choice.
CfsReport family_cfs_check(const FamilyParams& p, const ExcludedPairParams& q,
                           double eps = kEpsZero);

}  // namespace exclusion
