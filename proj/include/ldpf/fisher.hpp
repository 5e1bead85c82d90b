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

// Fisher information of privatized models.
//
// For a level set F = F_r^+ write S(F) = integral_F s p and P(F) = integral_F p
// at theta0, and a = e^alpha - 1. The per-output contribution is
//
//   i(r) = a^2 S^2 / (1 + a P),
//
// and a normalized measure mu on E yields I = integral i(r) mu(dr). The
// symmetric and antisymmetric companions are
//
//   i_s(r)  = (i(r) + i(T r)) / 2,
//   i_as(r) = i_s(r) (P - 1/2),
//
// which satisfy i(r) = i_s(r) - 2a/(e^alpha + 1) i_as(r) pointwise.

#ifndef LDPF_FISHER_HPP_
#define LDPF_FISHER_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ldpf/errors.hpp"
#include "ldpf/measures.hpp"
#include "ldpf/mechanism.hpp"
#include "ldpf/models.hpp"
#include "ldpf/quadrature.hpp"
#include "ldpf/staircase.hpp"

namespace ldpf {

struct LevelSetMoments {
  double score = 0.0;  // integral of s p over F_r^+
  double mass = 0.0;   // integral of p over F_r^+
};

inline LevelSetMoments level_set_moments(const ParametricModel& model, double theta0,
                                         const IntervalSet& set) {
  LevelSetMoments m;
  for (const Interval& iv : set.intervals()) {
    m.score += score_mass(model, theta0, iv.lo, iv.hi);
    m.mass += interval_mass(model, theta0, iv.lo, iv.hi);
  }
  return m;
}

inline double i_from_moments(double alpha, double score, double mass) {
  const double a = std::expm1(alpha);
  return a * a * score * score / (1.0 + a * mass);
}

inline double i_of(const ParametricModel& model, double theta0, const StepFunction& r) {
  const LevelSetMoments m = level_set_moments(model, theta0, r.fplus());
  return i_from_moments(r.alpha(), m.score, m.mass);
}

inline double i_sym(const ParametricModel& model, double theta0, const StepFunction& r) {
  return 0.5 * (i_of(model, theta0, r) + i_of(model, theta0, apply_T(r)));
}

inline double i_asym(const ParametricModel& model, double theta0, const StepFunction& r) {
  const LevelSetMoments m = level_set_moments(model, theta0, r.fplus());
  return i_sym(model, theta0, r) * (m.mass - 0.5);
}

// Alternate closed form a^2 S^2 / (2 (e^alpha - a P)(1 + a P)). It equals
// i_sym / (e^alpha + 1), so it is not a drop-in replacement; kept only so the
// two can be compared side by side.
inline double i_sym_alternate_form(const ParametricModel& model, double theta0,
                                   const StepFunction& r) {
  const LevelSetMoments m = level_set_moments(model, theta0, r.fplus());
  const double a = std::expm1(r.alpha());
  return 0.5 * a * a * m.score * m.score /
         ((std::exp(r.alpha()) - a * m.mass) * (1.0 + a * m.mass));
}

enum class FisherMethod { kFiniteSum, kQuadrature, kClosedForm };

// Fisher information with its decomposition.
//
// sym_term, mass_term and asym_term follow the three-term decomposition
//   sym  = integral i_s dmu
//   mass = ((e^a + 1)/2 - 1/mu(E)) 2 mu(E) sym
//   asym = 2 (e^a - 1) mu(E) integral i_as dmu
// whose sum equals `total` only when mu(E) = 2/(e^alpha + 1) and the
// antisymmetric integral vanishes (symmetric mu). sym_part and asym_part are
// the contributions of mu^(s) and mu - mu^(s), and always add up to `total`.
struct FisherReport {
  double total = 0.0;
  double sym_term = 0.0;
  double mass_term = 0.0;
  double asym_term = 0.0;
  double sym_part = 0.0;
  double asym_part = 0.0;
  double measure_mass = 0.0;  // mu(E)
  double alpha = 0.0;
  FisherMethod method = FisherMethod::kFiniteSum;
  double quadrature_error = 0.0;
  std::size_t panels = 0;

  double decomposition_residual() const { return total - (sym_term + mass_term - asym_term); }
  double split_residual() const { return total - (sym_part + asym_part); }
};

namespace detail {

inline void fill_decomposition(FisherReport& report, double sym_integral, double asym_integral) {
  const double ea = std::exp(report.alpha);
  const double a = std::expm1(report.alpha);
  const double m = report.measure_mass;
  report.sym_term = sym_integral;
  report.mass_term = ((ea + 1.0) / 2.0 - 1.0 / m) * 2.0 * m * sym_integral;
  report.asym_term = 2.0 * a * m * asym_integral;
  report.sym_part = 2.0 / ((ea + 1.0) * m) * sym_integral;
  report.asym_part =
      2.0 / (ea + 1.0) * (((ea + 1.0) / 2.0 - 1.0 / m) * sym_integral - a * asym_integral);
}

}  // namespace detail

inline FisherReport fisher_finite(const ParametricModel& model, double theta0,
                                  const FiniteMeasureOnE& mu, double norm_tol = 1e-10) {
  const NormalizationCheck check = check_normalized(mu, norm_tol);
  if (!check.ok) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "fisher_finite: measure is not normalized; integral of e_x is " << check.value
        << " at x=" << check.witness_x;
    throw ConfigError(msg.str());
  }
  FisherReport report;
  report.alpha = mu.alpha();
  report.method = FisherMethod::kFiniteSum;
  report.measure_mass = mu.total_mass();
  double sym = 0.0;
  double asym = 0.0;
  for (const Atom& atom : mu.atoms()) {
    const LevelSetMoments m = level_set_moments(model, theta0, atom.r.fplus());
    const double i = i_from_moments(mu.alpha(), m.score, m.mass);
    const double is = i_sym(model, theta0, atom.r);
    report.total += atom.weight * i;
    sym += atom.weight * is;
    asym += atom.weight * is * (m.mass - 0.5);
  }
  detail::fill_decomposition(report, sym, asym);
  return report;
}

// Fisher information of a staircase channel by quadrature over the quantile
// u0 = Xi(x0) of the public point, with panel breaks at u0 = c and 1 - c
// where a boundary switches between finite and infinite. Inner integrals are
// closed-form interval and score masses.
inline FisherReport fisher_channel(const ParametricModel& model, double theta0, const Channel& ch,
                                   const QuadratureSpec& quad = {}) {
  if (!ch.is_staircase()) {
    throw ConfigError("fisher_channel: " + to_string(ch.kind()) + " is not a staircase channel");
  }
  const BoundaryFamily& family = ch.family();
  const double c = family.c();
  const double a = ch.bump();
  const double score_total = score_mass(model, theta0, -kInf, kInf);

  std::vector<Side> sides;
  if (family.is_half_line_pair()) {
    sides = {Side::kNegative, Side::kPositive};
  } else {
    sides = {Side::kFull};
  }

  FisherReport report;
  report.alpha = ch.alpha();
  report.method = FisherMethod::kQuadrature;
  report.measure_mass = ch.extremal_mass();
  std::array<double, 3> sums{};
  for (Side side : sides) {
    const BaseMeasure& nu = family.measure(side);
    auto integrand = [&](double u0) {
      const double g = g_from_quantile(nu, c, u0);
      const double d = d_from_quantile(nu, c, u0);
      const double s = score_mass(model, theta0, g, d);
      const double p = interval_mass(model, theta0, g, d);
      const double s_t = score_total - s;
      const double i = a * a * s * s / (1.0 + a * p);
      const double i_t = a * a * s_t * s_t / (1.0 + a * (1.0 - p));
      const double is = 0.5 * (i + i_t);
      return std::array<double, 3>{i, is, is * (p - 0.5)};
    };
    const QuadratureResult<3> r = integrate<3>(integrand, {0.0, c, 1.0 - c, 1.0}, quad);
    for (std::size_t k = 0; k < 3; ++k) sums[k] += r.value[k];
    report.quadrature_error += r.error;
    report.panels += r.panels;
  }
  const double n = ch.normalizer();
  report.total = sums[0] / n;
  report.quadrature_error /= n;
  detail::fill_decomposition(report, sums[1] / n, sums[2] / n);
  return report;
}

// Fisher information of any channel kind at theta0: quadrature for the
// staircases, the two-point measure for the sign channel, the model's own
// information for the identity channel.
inline FisherReport channel_fisher(const ParametricModel& model, double theta0, const Channel& ch,
                                   const QuadratureSpec& quad = {}) {
  switch (ch.kind()) {
    case ChannelKind::kAsymmetricStaircase:
    case ChannelKind::kBinomialApprox:
      return fisher_channel(model, theta0, ch, quad);
    case ChannelKind::kTwoPointSign:
      return fisher_finite(model, theta0,
                           two_point_measure(upper_half_line(ch.alpha(), ch.split())));
    case ChannelKind::kIdentity:
      break;
  }
  FisherReport report;
  report.total = model.full_information(theta0);
  report.method = FisherMethod::kClosedForm;
  report.alpha = kInf;
  return report;
}

struct SymmetricOptimum {
  StepFunction best;
  double i_sym = 0.0;
  double fisher = 0.0;  // 2/(e^alpha + 1) * i_sym(best)
};

struct CandidateFamily {
  std::vector<double> grid;  // endpoints for half-lines and intervals
  bool half_lines = true;    // (t, inf)
  bool intervals = true;     // (a, b), a < b on the grid

  // theta0 together with `count` model quantiles at levels k / (count + 1).
  static CandidateFamily quantile_grid(const ParametricModel& model, double theta0,
                                       int count = 41) {
    CandidateFamily family;
    family.grid.push_back(theta0);
    for (int k = 1; k <= count; ++k) {
      family.grid.push_back(model.quantile(theta0, static_cast<double>(k) / (count + 1)));
    }
    std::sort(family.grid.begin(), family.grid.end());
    family.grid.erase(std::unique(family.grid.begin(), family.grid.end()), family.grid.end());
    return family;
  }
};

// Maximizes i_sym over half-lines and single intervals. Realized by the
// two-point measure on {best, T(best)}, whose information is returned.
inline SymmetricOptimum symmetric_optimum(const ParametricModel& model, double theta0, double alpha,
                                          const CandidateFamily& family) {
  std::vector<StepFunction> candidates;
  if (family.half_lines) {
    for (double t : family.grid) {
      candidates.emplace_back(IntervalSet{Interval::open(t, kInf)}, alpha);
    }
  }
  if (family.intervals) {
    for (std::size_t i = 0; i < family.grid.size(); ++i) {
      for (std::size_t j = i + 1; j < family.grid.size(); ++j) {
        candidates.emplace_back(IntervalSet{Interval::open(family.grid[i], family.grid[j])}, alpha);
      }
    }
  }
  if (candidates.empty()) throw ConfigError("symmetric_optimum: empty candidate family");
  SymmetricOptimum best{candidates.front(), -1.0, 0.0};
  for (const StepFunction& r : candidates) {
    const double v = i_sym(model, theta0, r);
    if (v > best.i_sym) {
      best.best = r;
      best.i_sym = v;
    }
  }
  best.fisher = 2.0 / (std::exp(alpha) + 1.0) * best.i_sym;
  return best;
}

struct SmallAlphaScaling {
  double reference_alpha = 0.0;
  double leading_constant = 0.0;       // I(alpha_ref) / alpha_ref^2
  double extrapolated_constant = 0.0;  // linear extrapolation of the two smallest alphas
  double analytic_constant = 0.0;      // integral of S^2 dmu at alpha_ref
  std::vector<double> alphas;
  std::vector<double> ratios;   // I(alpha) / alpha^2
  std::vector<double> slopes;   // |ratio - leading| / alpha
  double fitted_slope = 0.0;    // max of slopes
  double residual_order = 0.0;  // min log-log slope of |ratio - leading|
};

// I(alpha)/alpha^2 along a decreasing alpha grid for a family of normalized
// measures mu(alpha), compared with a small reference alpha.
inline SmallAlphaScaling small_alpha_scaling(
    const ParametricModel& model, double theta0,
    const std::function<FiniteMeasureOnE(double)>& measure_at,
    std::vector<double> alphas = {0.05, 0.02, 0.01}, double reference_alpha = 1e-4) {
  SmallAlphaScaling out;
  out.reference_alpha = reference_alpha;
  out.alphas = alphas;
  auto ratio = [&](double alpha) {
    return fisher_finite(model, theta0, measure_at(alpha)).total / (alpha * alpha);
  };
  out.leading_constant = ratio(reference_alpha);
  out.analytic_constant = measure_at(reference_alpha).integrate([&](const StepFunction& r) {
    const double s = level_set_moments(model, theta0, r.fplus()).score;
    return s * s;
  });
  std::vector<double> deviations;
  for (double alpha : alphas) {
    const double v = ratio(alpha);
    out.ratios.push_back(v);
    const double dev = std::fabs(v - out.leading_constant);
    deviations.push_back(dev);
    out.slopes.push_back(dev / alpha);
    out.fitted_slope = std::max(out.fitted_slope, dev / alpha);
  }
  if (alphas.size() >= 2) {
    const std::size_t k = alphas.size() - 1;
    const double a1 = alphas[k - 1];
    const double a2 = alphas[k];
    out.extrapolated_constant =
        out.ratios[k] + (out.ratios[k] - out.ratios[k - 1]) * a2 / (a1 - a2);
    out.residual_order = kInf;
    for (std::size_t i = 0; i + 1 < alphas.size(); ++i) {
      const double order =
          std::log(deviations[i] / deviations[i + 1]) / std::log(alphas[i] / alphas[i + 1]);
      out.residual_order = std::min(out.residual_order, order);
    }
  }
  return out;
}

}  // namespace ldpf

#endif  // LDPF_FISHER_HPP_
