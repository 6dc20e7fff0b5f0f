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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "exclusion/cfs.hpp"
#include "exclusion/linalg.hpp"
#include "exclusion/sdp.hpp"

using namespace exclusion;

TEST_CASE("cfs_lhs: anchor values") {
  CHECK(cfs_lhs(0.0, 0.0, 0.0) == 0.0);
  CHECK(cfs_lhs(1.0, 1.0, 1.0) == 5.0);
  // 3 * 0.25 + 2 * 0.125, exact in binary arithmetic
  CHECK(cfs_lhs(0.5, 0.5, 0.5) == 1.0);
}

TEST_CASE("cfs_lhs: monotone nondecreasing in each argument") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    double j[3] = {rng.uniform(), rng.uniform(), rng.uniform()};
    const double base = cfs_lhs(j[0], j[1], j[2]);
    const int axis = static_cast<int>(rng.next_u64() % 3);
    double bumped[3] = {j[0], j[1], j[2]};
    bumped[axis] = std::min(1.0, bumped[axis] + rng.uniform() * (1.0 - bumped[axis]));
    CHECK(cfs_lhs(bumped[0], bumped[1], bumped[2]) >= base - 1e-15);
  }
}

TEST_CASE("cfs_lhs: rejects overlaps outside [0, 1]") {
  CHECK_THROWS_AS(cfs_lhs(-0.1, 0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(cfs_lhs(0.0, 1.1, 0.0), ValidationError);
  CHECK_NOTHROW(cfs_lhs(0.0, 1.0 + 1e-10, 0.0));  // fp slack
}

TEST_CASE("cfs_excludable: orthonormal basis and identical triple") {
  CVec e1 = CVec::Zero(3), e2 = CVec::Zero(3), e3 = CVec::Zero(3);
  e1[0] = 1.0;
  e2[1] = 1.0;
  e3[2] = 1.0;
  const CfsReport ortho = cfs_excludable(PureState(e1), PureState(e2), PureState(e3));
  CHECK(ortho.lhs == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(ortho.excludable);
  CHECK(ortho.margin == doctest::Approx(1.0).epsilon(1e-14));

  const CfsReport same = cfs_excludable(PureState(e1), PureState(e1), PureState(e1));
  CHECK(same.lhs == doctest::Approx(5.0).epsilon(1e-14));
  CHECK_FALSE(same.excludable);
}

TEST_CASE("cfs boundary: overlaps (1/2,1/2,1/2) realized from the Gram matrix") {
  const auto states = states_from_overlaps(0.5, 0.5, 0.5);
  const auto j = gram_magnitudes(states[0], states[1], states[2]);
  for (int i = 0; i < 3; ++i) CHECK(j[i] == doctest::Approx(0.5).epsilon(1e-10));
  const CfsReport report = cfs_excludable(states[0], states[1], states[2]);
  CHECK(report.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(report.excludable);  // non-strict boundary semantics
}

TEST_CASE("cfs_excludable: rejects non-3D input") {
  Rng rng(4);
  const PureState a = haar_random_state(2, rng);
  const PureState b = haar_random_state(2, rng);
  const PureState c = haar_random_state(2, rng);
  CHECK_THROWS_AS(cfs_excludable(a, b, c), UnsupportedDimensionError);
}

TEST_CASE("cfs decision: invariant under common unitary and permutations") {
  Rng rng(88);
  for (int trial = 0; trial < 25; ++trial) {
    const PureState a = haar_random_state(3, rng);
    const PureState b = haar_random_state(3, rng);
    const PureState c = haar_random_state(3, rng);
    const CfsReport base = cfs_excludable(a, b, c);

    const CMat u = haar_random_unitary(3, rng);
    const CfsReport rotated = cfs_excludable(PureState::normalized(u * a.vec()),
                                             PureState::normalized(u * b.vec()),
                                             PureState::normalized(u * c.vec()));
    CHECK(rotated.lhs == doctest::Approx(base.lhs).epsilon(1e-10));
    CHECK(rotated.excludable == base.excludable);

    const CfsReport permuted = cfs_excludable(c, a, b);
    CHECK(permuted.lhs == doctest::Approx(base.lhs).epsilon(1e-12));
    CHECK(permuted.excludable == base.excludable);
  }
}

TEST_CASE("states_from_overlaps: reproduces requested overlaps, rejects non-PSD") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    // Overlaps drawn small enough to keep the Gram matrix PSD.
    const double j1 = 0.6 * rng.uniform();
    const double j2 = 0.6 * rng.uniform();
    const double j3 = 0.6 * rng.uniform();
    const auto states = states_from_overlaps(j1, j2, j3);
    const auto j = gram_magnitudes(states[0], states[1], states[2]);
    CHECK(j[0] == doctest::Approx(j1).epsilon(1e-9));
    CHECK(j[1] == doctest::Approx(j2).epsilon(1e-9));
    CHECK(j[2] == doctest::Approx(j3).epsilon(1e-9));
  }
  // Gram matrix [[1,1,1],[1,1,0],[1,0,1]] is indefinite.
  CHECK_THROWS_AS(states_from_overlaps(1.0, 1.0, 0.0), ValidationError);
}

TEST_CASE("flagship cross-check: CFS verdict agrees with the SDP on random triples") {
  Rng rng(20260811);
  int excludable_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const PureState a = haar_random_state(3, rng);
    const PureState b = haar_random_state(3, rng);
    const PureState c = haar_random_state(3, rng);
    const CfsReport cfs = cfs_excludable(a, b, c);
    // skip the tolerance-limited band where the SDP value, though certified
    // positive, can undercut the zero threshold
    if (std::abs(cfs.lhs - 1.0) < 10.0 * std::sqrt(kEpsZero)) continue;
    const bool sdp_verdict = is_povm_excludable(ExclusionInstance({a, b, c}));
    CHECK(cfs.excludable == sdp_verdict);
    excludable_seen += cfs.excludable ? 1 : 0;
  }
  CHECK(excludable_seen > 0);  // the sample exercises both verdicts
}
