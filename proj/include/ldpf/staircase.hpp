// Copyright 2026 The ldpf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Boundary functions of the asymmetric staircase construction.
//
// For a public point x0 with u0 = Xi(x0) the output interval is
// [g_c(x0), d_c(x0)] where
//
//   g_c(x0) = lo                   if u0 <= c,   Xi^{-1}(u0 - c/2) otherwise
//   d_c(x0) = hi                   if u0 >= 1-c, Xi^{-1}(u0 + c/2) otherwise
//
// and (lo, hi) is the support of the base measure (the whole line, or one of
// the two half-lines of a half-line pair). Conversely, a private point x with
// u = Xi(x) is covered exactly by the x0 whose quantile lies in
//
//   [max(0, min(1-c, u - c/2)),  min(1, max(c, u + c/2))],
//
// an interval of nu-mass exactly c. All mass bookkeeping is done in these
// quantile coordinates.

#ifndef LDPF_STAIRCASE_HPP_
#define LDPF_STAIRCASE_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "ldpf/errors.hpp"
#include "ldpf/models.hpp"

namespace ldpf {

struct QuantileInterval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double u) const noexcept { return lo <= u && u <= hi; }
};

// Which base measure a point is measured against.
enum class Side { kFull, kPositive, kNegative };

struct PrivatizationInterval {
  ExtendedReal lo;  // d_c^{-1}(x)
  ExtendedReal hi;  // g_c^{-1}(x)
  QuantileInterval quantiles;
  Side side;
};

class BoundaryFamily {
 public:
  static BoundaryFamily full_line(const BaseMeasure& base, double c) {
    if (base.support() != Support::kFullLine) {
      throw ConfigError("full-line boundary family needs a full-line base measure");
    }
    return BoundaryFamily(base, std::nullopt, c);
  }

  // nu+ on (split, inf) and nu- on (-inf, split].
  static BoundaryFamily half_line_pair(const BaseMeasure& positive, const BaseMeasure& negative,
                                       double c) {
    if (positive.support() != Support::kPositiveHalfLine ||
        negative.support() != Support::kNegativeHalfLine) {
      throw ConfigError("half-line pair needs a positive and a negative half-line base");
    }
    if (positive.support_lo() != negative.support_hi()) {
      throw ConfigError("half-line pair: the two supports must meet at one split point");
    }
    return BoundaryFamily(positive, negative, c);
  }

  static BoundaryFamily folded_normal_pair(double c, double split = 0.0, double scale = 1.0) {
    return half_line_pair(BaseMeasure::folded_normal(Support::kPositiveHalfLine, split, scale),
                          BaseMeasure::folded_normal(Support::kNegativeHalfLine, split, scale), c);
  }

  double c() const noexcept { return c_; }
  bool is_half_line_pair() const noexcept { return negative_.has_value(); }
  double split() const noexcept { return primary_.support_lo(); }

  // The full-line base, or nu+ for a half-line pair.
  const BaseMeasure& base() const noexcept { return primary_; }
  const BaseMeasure& negative_base() const { return negative_.value(); }

  Side side_of(double x) const noexcept {
    if (!is_half_line_pair()) return Side::kFull;
    return x > split() ? Side::kPositive : Side::kNegative;
  }

  const BaseMeasure& measure(Side side) const {
    return side == Side::kNegative ? negative_base() : primary_;
  }
  const BaseMeasure& measure_at(double x) const { return measure(side_of(x)); }

  // Density of the (unnormalized) proposal: nu, or nu+ + nu-.
  double proposal_density(double x) const { return measure_at(x).density(x); }

  // Total mass of the proposal: 1 for a full line, 2 for a half-line pair.
  double proposal_mass() const noexcept { return is_half_line_pair() ? 2.0 : 1.0; }

  // Breakpoints Xi^{-1}(c) and Xi^{-1}(1-c) on a given side.
  ExtendedReal x_star_g(Side side = Side::kFull) const { return measure(side).quantile_closed(c_); }
  ExtendedReal x_star_d(Side side = Side::kFull) const {
    return measure(side).quantile_closed(1.0 - c_);
  }

 private:
  BoundaryFamily(const BaseMeasure& primary, std::optional<BaseMeasure> negative, double c)
      : primary_(primary), negative_(std::move(negative)), c_(c) {
    if (!(c > 0.0 && c < 1.0)) {
      std::ostringstream msg;
      msg << "boundary family: c=" << c << " not in (0,1)";
      throw ConfigError(msg.str());
    }
  }

  BaseMeasure primary_;
  std::optional<BaseMeasure> negative_;
  double c_;
};

// Lower boundary from the quantile u0 = Xi(x0) of the public point.
inline ExtendedReal g_from_quantile(const BaseMeasure& side, double c, double u0) {
  if (u0 <= c) return side.support_lo();
  return side.quantile_closed(u0 - 0.5 * c);
}

inline ExtendedReal d_from_quantile(const BaseMeasure& side, double c, double u0) {
  if (u0 >= 1.0 - c) return side.support_hi();
  return side.quantile_closed(u0 + 0.5 * c);
}

inline ExtendedReal g_c(const BoundaryFamily& fam, double x0) {
  const BaseMeasure& side = fam.measure_at(x0);
  return g_from_quantile(side, fam.c(), side.cdf(x0));
}

inline ExtendedReal d_c(const BoundaryFamily& fam, double x0) {
  const BaseMeasure& side = fam.measure_at(x0);
  return d_from_quantile(side, fam.c(), side.cdf(x0));
}

// Quantile-space preimage {u0 : x in [g(x0), d(x0)]} for u = Xi(x).
inline QuantileInterval covering_quantiles(double c, double u) {
  return {std::max(0.0, std::min(1.0 - c, u - 0.5 * c)), std::min(1.0, std::max(c, u + 0.5 * c))};
}

// (d_c^{-1}(x), g_c^{-1}(x)) and the matching quantile interval of mass c.
inline PrivatizationInterval privatization_interval(const BoundaryFamily& fam, double x) {
  const Side side = fam.side_of(x);
  const BaseMeasure& nu = fam.measure(side);
  const QuantileInterval q = covering_quantiles(fam.c(), nu.cdf(x));
  return {nu.quantile_closed(q.lo), nu.quantile_closed(q.hi), q, side};
}

}  // namespace ldpf

#endif  // LDPF_STAIRCASE_HPP_
