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

#include "exclusion/family.hpp"

#include <cmath>

namespace exclusion {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_phase(double phase, const char* name) {
  if (!std::isfinite(phase) || phase < 0.0 || phase >= kTwoPi) {
    throw ValidationError(std::string("family: phase ") + name + " must lie in [0, 2*pi)");
  }
}

void check_b1(const FamilyParams& p, double b1) {
  if (!std::isfinite(b1) || b1 < 0.0 || b1 >= b1_bound(p)) {
    throw ValidationError("family: b1 must lie in [0, sqrt(1/(1 + r/x)))");
  }
}

void check_c1(const FamilyParams& p, double c1) {
  if (!std::isfinite(c1) || c1 < 0.0 || c1 >= c1_bound(p)) {
    throw ValidationError("family: c1 must lie in [0, sqrt(1/(1 + 1/(r*x))))");
  }
}

}  // namespace

void validate_family_params(const FamilyParams& p) {
  if (!std::isfinite(p.x) || !(p.x > 0.0) || !(p.x < 1.0)) {
    throw ValidationError("family: x must lie strictly inside (0, 1)");
  }
  if (!std::isfinite(p.r) || !(p.r > 0.0)) {
    throw ValidationError("family: r must lie strictly inside (0, inf)");
  }
  check_phase(p.theta, "theta");
}

double b1_bound(const FamilyParams& p) {
  validate_family_params(p);
  return std::sqrt(1.0 / (1.0 + p.r / p.x));
}

double c1_bound(const FamilyParams& p) {
  validate_family_params(p);
  return std::sqrt(1.0 / (1.0 + 1.0 / (p.r * p.x)));
}

Povm build_family_povm(const FamilyParams& p) {
  validate_family_params(p);
  const double denom = p.r + 1.0;
  const Complex phase = std::polar(1.0, p.theta);

  CMat m1 = CMat::Zero(3, 3);
  m1(1, 1) = 1.0 - p.x;
  m1(2, 2) = 1.0;

  CVec v = CVec::Zero(3);
  v[0] = std::sqrt(p.r / denom);
  v[1] = phase * std::sqrt(p.x / denom);

  CVec w = CVec::Zero(3);
  w[0] = std::sqrt(1.0 / denom);
  w[1] = -phase * std::sqrt(p.r * p.x / denom);  // phase pi + theta

  return Povm({HermitianOperator(std::move(m1)), HermitianOperator(v * v.adjoint()),
               HermitianOperator(w * w.adjoint())});
}

PureState excluded_state_b(const FamilyParams& p, double b1, double vartheta) {
  check_b1(p, b1);
  check_phase(vartheta, "vartheta");
  CVec b(3);
  b[0] = b1;
  b[1] = -b1 * std::polar(1.0, p.theta) * std::sqrt(p.r / p.x);
  b[2] = std::polar(std::sqrt(1.0 - b1 * b1 * (1.0 + p.r / p.x)), vartheta);
  return PureState::normalized(b);
}

PureState excluded_state_c(const FamilyParams& p, double c1, double gamma) {
  check_c1(p, c1);
  check_phase(gamma, "gamma");
  CVec c(3);
  c[0] = c1;
  c[1] = c1 * std::polar(1.0, p.theta) * std::sqrt(1.0 / (p.r * p.x));
  c[2] = std::polar(std::sqrt(1.0 - c1 * c1 * (1.0 + 1.0 / (p.r * p.x))), gamma);
  return PureState::normalized(c);
}

double j3_worst_case(const FamilyParams& p, double b1, double c1) {
  check_b1(p, b1);
  check_c1(p, c1);
  const double rad_b = std::sqrt(1.0 - b1 * b1 * (1.0 + p.r / p.x));
  const double rad_c = std::sqrt(1.0 - c1 * c1 * (1.0 + 1.0 / (p.r * p.x)));
  return rad_b * rad_c + b1 * c1 * (1.0 / p.x - 1.0);
}

double f_lhs(const FamilyParams& p, double b1, double c1) {
  const double j3 = j3_worst_case(p, b1, c1);
  return j3 * j3 + b1 * b1 + c1 * c1 + 2.0 * j3 * b1 * c1;
}

SquareIdentityReport verify_square_identity_at(double r, double b1, double c1, double x) {
  if (!std::isfinite(r) || !(r > 0.0)) throw ValidationError("square identity: r must be > 0");
  if (!std::isfinite(b1) || !(b1 > 0.0) || !(b1 < 1.0) || !std::isfinite(c1) || !(c1 > 0.0) ||
      !(c1 < 1.0)) {
    throw ValidationError("square identity: b1 and c1 must lie strictly inside (0, 1)");
  }
  if (!std::isfinite(x) || !(x > 0.0) || !(x < 1.0)) {
    throw ValidationError("square identity: x must lie strictly inside (0, 1)");
  }
  const long double lb = 1.0L / (static_cast<long double>(b1) * b1) - 1.0L;  // 1/b1^2 - 1
  const long double lc = 1.0L / (static_cast<long double>(c1) * c1) - 1.0L;  // 1/c1^2 - 1
  const long double lr = r;
  const long double lx = x;
  const long double rad_b = lb - lr / lx;
  const long double rad_c = lc - 1.0L / (lr * lx);
  if (rad_b < 0.0L || rad_c < 0.0L) {
    throw ValidationError("square identity: x outside the feasible interval for (r, b1, c1)");
  }
  const long double lhs = 2.0L * std::sqrt(rad_b) * std::sqrt(rad_c);
  const long double rhs = lr * (lc + 1.0L) + (lb + 1.0L) / lr - 2.0L / lx - lr - 1.0L / lr;
  const long double closed = lr * lc - lb / lr;

  SquareIdentityReport report;
  report.lhs = static_cast<double>(lhs);
  report.rhs = static_cast<double>(rhs);
  report.square = static_cast<double>(rhs * rhs - lhs * lhs);
  report.square_closed_form = static_cast<double>(closed * closed);
  report.x_used = x;
  return report;
}

SquareIdentityReport verify_square_identity(double r, double b1, double c1) {
  if (!std::isfinite(r) || !(r > 0.0)) throw ValidationError("square identity: r must be > 0");
  if (!std::isfinite(b1) || !(b1 > 0.0) || !(b1 < 1.0) || !std::isfinite(c1) || !(c1 > 0.0) ||
      !(c1 < 1.0)) {
    throw ValidationError("square identity: b1 and c1 must lie strictly inside (0, 1)");
  }
  const double big_b = 1.0 / (b1 * b1) - 1.0;
  const double big_c = 1.0 / (c1 * c1) - 1.0;
  const double x_low = std::max(r / big_b, 1.0 / (r * big_c));
  if (!(x_low < 1.0)) {
    throw ValidationError("square identity: no x in (0, 1) is feasible for (r, b1, c1)");
  }
  return verify_square_identity_at(r, b1, c1, 0.5 * (x_low + 1.0));
}

CfsReport family_cfs_check(const FamilyParams& p, const ExcludedPairParams& q, double eps) {
  CVec a = CVec::Zero(3);
  a[0] = 1.0;
  const PureState b = excluded_state_b(p, q.b1, q.vartheta);
  const PureState c = excluded_state_c(p, q.c1, q.gamma);
  return cfs_excludable(PureState(std::move(a)), b, c, eps);
}

}  // namespace exclusion
