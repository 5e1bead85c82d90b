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

// Finitely supported measures on the extremal set E.
//
// An element r of E takes the value e^alpha on its level set F_r^+ and 1
// elsewhere. Level sets are finite unions of intervals with explicit
// open/closed ends, so the swap operator T (complement of the level set) is
// exact and every normalization check reduces to finitely many cells.

#ifndef LDPF_MEASURES_HPP_
#define LDPF_MEASURES_HPP_

#include <algorithm>
#include <cmath>
#include <compare>
#include <ostream>
#include <string>
#include <vector>

#include "ldpf/errors.hpp"
#include "ldpf/models.hpp"

namespace ldpf {

struct Interval {
  ExtendedReal lo;
  ExtendedReal hi;
  bool lo_closed;
  bool hi_closed;

  static Interval open(ExtendedReal a, ExtendedReal b) { return {a, b, false, false}; }
  static Interval closed(ExtendedReal a, ExtendedReal b) { return {a, b, true, true}; }
  static Interval left_open(ExtendedReal a, ExtendedReal b) { return {a, b, false, true}; }
  static Interval right_open(ExtendedReal a, ExtendedReal b) { return {a, b, true, false}; }

  bool empty() const noexcept {
    if (lo < hi) return false;
    return !(lo == hi && lo_closed && hi_closed && std::isfinite(lo));
  }
  bool contains(double x) const noexcept {
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
  }

  auto operator<=>(const Interval&) const = default;
};

inline std::ostream& operator<<(std::ostream& out, const Interval& iv) {
  return out << (iv.lo_closed ? '[' : '(') << iv.lo << ", " << iv.hi << (iv.hi_closed ? ']' : ')');
}

// Sorted union of disjoint, non-touching intervals. Canonical form makes
// equality of sets equality of representations.
class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(std::initializer_list<Interval> intervals)
      : IntervalSet(std::vector<Interval>(intervals)) {}
  explicit IntervalSet(std::vector<Interval> intervals) {
    for (Interval& iv : intervals) {
      // Infinite ends are never attained.
      if (std::isinf(iv.lo)) iv.lo_closed = false;
      if (std::isinf(iv.hi)) iv.hi_closed = false;
    }
    std::erase_if(intervals, [](const Interval& iv) { return iv.empty(); });
    std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
      if (a.lo != b.lo) return a.lo < b.lo;
      return a.lo_closed && !b.lo_closed;
    });
    for (const Interval& iv : intervals) {
      if (!intervals_.empty()) {
        Interval& cur = intervals_.back();
        const bool overlaps =
            iv.lo < cur.hi || (iv.lo == cur.hi && (cur.hi_closed || iv.lo_closed));
        if (overlaps) {
          if (iv.hi > cur.hi) {
            cur.hi = iv.hi;
            cur.hi_closed = iv.hi_closed;
          } else if (iv.hi == cur.hi) {
            cur.hi_closed = cur.hi_closed || iv.hi_closed;
          }
          continue;
        }
      }
      intervals_.push_back(iv);
    }
  }

  static IntervalSet everything() { return {Interval::open(-kInf, kInf)}; }

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  bool empty() const noexcept { return intervals_.empty(); }

  bool contains(double x) const noexcept {
    return std::any_of(intervals_.begin(), intervals_.end(),
                       [x](const Interval& iv) { return iv.contains(x); });
  }

  IntervalSet complement() const {
    std::vector<Interval> gaps;
    ExtendedReal cursor = -kInf;
    bool cursor_closed = false;
    for (const Interval& iv : intervals_) {
      gaps.push_back({cursor, iv.lo, cursor_closed, !iv.lo_closed});
      cursor = iv.hi;
      cursor_closed = !iv.hi_closed;
    }
    gaps.push_back({cursor, kInf, cursor_closed, false});
    return IntervalSet(std::move(gaps));
  }

  // Finite interval endpoints, sorted and unique.
  std::vector<double> breakpoints() const {
    std::vector<double> out;
    for (const Interval& iv : intervals_) {
      if (std::isfinite(iv.lo)) out.push_back(iv.lo);
      if (std::isfinite(iv.hi)) out.push_back(iv.hi);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  auto operator<=>(const IntervalSet&) const = default;
  bool operator==(const IntervalSet&) const = default;

 private:
  std::vector<Interval> intervals_;
};

inline std::ostream& operator<<(std::ostream& out, const IntervalSet& set) {
  if (set.empty()) return out << "{}";
  for (std::size_t i = 0; i < set.intervals().size(); ++i) {
    if (i) out << " u ";
    out << set.intervals()[i];
  }
  return out;
}

// r = 1 + (e^alpha - 1) 1_{F_r^+}.
class StepFunction {
 public:
  StepFunction(IntervalSet fplus, double alpha) : fplus_(std::move(fplus)), alpha_(alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
      throw ConfigError("step function: alpha must be finite and >= 0");
    }
  }

  const IntervalSet& fplus() const noexcept { return fplus_; }
  IntervalSet fminus() const { return fplus_.complement(); }
  double alpha() const noexcept { return alpha_; }

  bool operator==(const StepFunction&) const = default;

 private:
  IntervalSet fplus_;
  double alpha_;
};

// e_x(r) = r(x).
inline double evaluate(const StepFunction& r, double x) {
  return r.fplus().contains(x) ? std::exp(r.alpha()) : 1.0;
}

// T(r) = e^alpha + 1 - r: swaps the level sets.
inline StepFunction apply_T(const StepFunction& r) {
  return StepFunction(r.fplus().complement(), r.alpha());
}

struct Atom {
  double weight;
  StepFunction r;
};

// Finitely many weighted step functions sharing one alpha. Weights are
// nonnegative except for the signed output of asymmetric_part.
class FiniteMeasureOnE {
 public:
  explicit FiniteMeasureOnE(double alpha) : alpha_(alpha) {}

  FiniteMeasureOnE(double alpha, std::vector<Atom> atoms) : alpha_(alpha) {
    for (Atom& a : atoms) add(a.weight, std::move(a.r));
  }

  static FiniteMeasureOnE dirac(const StepFunction& r, double weight = 1.0) {
    FiniteMeasureOnE mu(r.alpha());
    mu.add(weight, r);
    return mu;
  }

  // Adds weight to r; atoms with the same level set are coalesced.
  void add(double weight, StepFunction r) {
    if (r.alpha() != alpha_) throw ConfigError("measure on E: atoms must share alpha");
    if (!signed_ && weight < 0.0) {
      throw ConfigError("measure on E: negative weight in an unsigned measure");
    }
    for (Atom& a : atoms_) {
      if (a.r.fplus() == r.fplus()) {
        a.weight += weight;
        return;
      }
    }
    atoms_.push_back({weight, std::move(r)});
  }

  double alpha() const noexcept { return alpha_; }
  bool is_signed() const noexcept { return signed_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  double total_mass() const {
    double m = 0.0;
    for (const Atom& a : atoms_) m += a.weight;
    return m;
  }

  // Integral of f against the measure.
  template <typename F>
  double integrate(const F& f) const {
    double sum = 0.0;
    for (const Atom& a : atoms_) sum += a.weight * f(a.r);
    return sum;
  }

  // x -> integral of e_x(r) mu(dr).
  double evaluation_integral(double x) const {
    return integrate([x](const StepFunction& r) { return evaluate(r, x); });
  }

  // Atoms sorted by level set; used for deterministic comparison and output.
  std::vector<Atom> sorted_atoms() const {
    std::vector<Atom> out = atoms_;
    std::sort(out.begin(), out.end(),
              [](const Atom& a, const Atom& b) { return a.r.fplus() < b.r.fplus(); });
    return out;
  }

  static FiniteMeasureOnE make_signed(double alpha) {
    FiniteMeasureOnE mu(alpha);
    mu.signed_ = true;
    return mu;
  }

 private:
  double alpha_;
  std::vector<Atom> atoms_;
  bool signed_ = false;
};

// T(mu): the pushforward of mu under the swap operator.
inline FiniteMeasureOnE pushforward_T(const FiniteMeasureOnE& mu) {
  FiniteMeasureOnE out =
      mu.is_signed() ? FiniteMeasureOnE::make_signed(mu.alpha()) : FiniteMeasureOnE(mu.alpha());
  for (const Atom& a : mu.atoms()) out.add(a.weight, apply_T(a.r));
  return out;
}

// (mu + T(mu)) / ((e^alpha + 1) mu(E)): normalized and T-invariant.
inline FiniteMeasureOnE symmetrize(const FiniteMeasureOnE& mu) {
  if (mu.is_signed()) throw ConfigError("symmetrize: signed measures are not accepted");
  const double mass = mu.total_mass();
  if (!(mass > 0.0)) throw DegenerateError("symmetrize: measure has zero total mass");
  const double scale = 1.0 / ((std::exp(mu.alpha()) + 1.0) * mass);
  FiniteMeasureOnE out(mu.alpha());
  for (const Atom& a : mu.atoms()) {
    out.add(scale * a.weight, a.r);
    out.add(scale * a.weight, apply_T(a.r));
  }
  return out;
}

// mu - mu^(s), a signed measure on the merged support.
inline FiniteMeasureOnE asymmetric_part(const FiniteMeasureOnE& mu) {
  const FiniteMeasureOnE sym = symmetrize(mu);
  FiniteMeasureOnE out = FiniteMeasureOnE::make_signed(mu.alpha());
  for (const Atom& a : mu.atoms()) out.add(a.weight, a.r);
  for (const Atom& a : sym.atoms()) out.add(-a.weight, a.r);
  return out;
}

struct NormalizationCheck {
  bool ok = true;
  double witness_x = 0.0;  // a point of the offending cell
  double value = 1.0;      // integral of e_x at the witness
  double max_deviation = 0.0;
};

// Sum_i w_i r_i(x) is constant on each cell of the common refinement of all
// breakpoints, so it is checked at every breakpoint and at one interior point
// per open cell.
inline NormalizationCheck check_normalized(const FiniteMeasureOnE& mu, double tol = 1e-12) {
  std::vector<double> cuts;
  for (const Atom& a : mu.atoms()) {
    const std::vector<double> b = a.r.fplus().breakpoints();
    cuts.insert(cuts.end(), b.begin(), b.end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> probes;
  if (cuts.empty()) {
    probes.push_back(0.0);
  } else {
    probes.push_back(cuts.front() - 1.0);
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      probes.push_back(cuts[i]);
      if (i + 1 < cuts.size()) probes.push_back(0.5 * (cuts[i] + cuts[i + 1]));
    }
    probes.push_back(cuts.back() + 1.0);
  }

  NormalizationCheck check;
  for (double x : probes) {
    const double v = mu.evaluation_integral(x);
    const double dev = std::fabs(v - 1.0);
    if (dev > check.max_deviation) {
      check.max_deviation = dev;
      if (dev > tol) {
        check.ok = false;
        check.witness_x = x;
        check.value = v;
      }
    }
  }
  return check;
}

// Atom-wise comparison up to an absolute weight tolerance.
inline bool approx_equal(const FiniteMeasureOnE& a, const FiniteMeasureOnE& b, double tol = 1e-12) {
  if (a.alpha() != b.alpha()) return false;
  auto weight_of = [](const FiniteMeasureOnE& mu, const IntervalSet& set) {
    for (const Atom& atom : mu.atoms()) {
      if (atom.r.fplus() == set) return atom.weight;
    }
    return 0.0;
  };
  for (const Atom& atom : a.atoms()) {
    if (std::fabs(atom.weight - weight_of(b, atom.r.fplus())) > tol) return false;
  }
  for (const Atom& atom : b.atoms()) {
    if (std::fabs(atom.weight - weight_of(a, atom.r.fplus())) > tol) return false;
  }
  return true;
}

// The symmetric two-point measure (delta_r + delta_{T(r)}) / (1 + e^alpha).
inline FiniteMeasureOnE two_point_measure(const StepFunction& r) {
  FiniteMeasureOnE mu(r.alpha());
  const double w = 1.0 / (1.0 + std::exp(r.alpha()));
  mu.add(w, r);
  mu.add(w, apply_T(r));
  return mu;
}

// F_max^+ = (split, inf) as a step function.
inline StepFunction upper_half_line(double alpha, double split = 0.0) {
  return StepFunction(IntervalSet{Interval::open(split, kInf)}, alpha);
}

}  // namespace ldpf

#endif  // LDPF_MEASURES_HPP_
