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

// Seeded property suites behind `ldpf verify`. Each check reports pass/fail
// and, on failure, the first offending input.

#ifndef LDPF_VERIFY_HPP_
#define LDPF_VERIFY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ldpf/fisher.hpp"
#include "ldpf/measures.hpp"
#include "ldpf/mechanism.hpp"
#include "ldpf/models.hpp"
#include "ldpf/staircase.hpp"

namespace ldpf {

struct CheckResult {
  std::string name;
  bool ok = true;
  bool informational = false;  // never affects the verdict
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 0x5eed;
  double normalizer_bias = 0.0;  // negative-control hook; 0 in normal use
};

namespace detail {

inline IntervalSet random_interval_set(Rng& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::normal_distribution<double> point(0.0, 1.5);
  std::bernoulli_distribution coin(0.3);
  const int k = count(rng);
  std::vector<double> ends;
  for (int i = 0; i < 2 * k; ++i) ends.push_back(point(rng));
  std::sort(ends.begin(), ends.end());
  if (coin(rng)) ends.front() = -kInf;
  if (coin(rng)) ends.back() = kInf;
  std::vector<Interval> out;
  for (int i = 0; i < k; ++i) {
    out.push_back({ends[2 * i], ends[2 * i + 1], coin(rng), coin(rng)});
  }
  return IntervalSet(out);
}

inline FiniteMeasureOnE random_measure(Rng& rng, double alpha) {
  std::uniform_int_distribution<int> atoms(1, 4);
  std::uniform_real_distribution<double> weight(0.05, 2.0);
  FiniteMeasureOnE mu(alpha);
  const int n = atoms(rng);
  for (int i = 0; i < n; ++i) mu.add(weight(rng), StepFunction(random_interval_set(rng), alpha));
  return mu;
}

// (1 - l) mu^(s) + l delta_{empty}: normalized, not symmetric for l > 0.
inline FiniteMeasureOnE random_asymmetric_measure(Rng& rng, double alpha) {
  const FiniteMeasureOnE sym = symmetrize(random_measure(rng, alpha));
  const double l = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
  FiniteMeasureOnE mu(alpha);
  for (const Atom& a : sym.atoms()) mu.add((1.0 - l) * a.weight, a.r);
  mu.add(l, StepFunction(IntervalSet{}, alpha));
  return mu;
}

inline std::vector<Channel> verification_channels(double bias) {
  std::vector<Channel> out;
  for (double alpha : {0.5, 4.0}) {
    for (double c : {0.05, 0.2, 0.5}) {
      out.push_back(Channel::asymmetric_staircase(
          alpha, BoundaryFamily::full_line(BaseMeasure::gaussian(), c)));
    }
  }
  out.push_back(Channel::asymmetric_staircase(
      2.0, BoundaryFamily::full_line(BaseMeasure::cauchy(0.5, 2.0), 0.3)));
  out.push_back(Channel::binomial_approx(1.0, BoundaryFamily::folded_normal_pair(0.4)));
  out.push_back(Channel::binomial_approx(3.0, BoundaryFamily::folded_normal_pair(0.9, 0.5)));
  for (Channel& ch : out) ch = ch.with_normalizer_bias(bias);
  return out;
}

inline std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace detail

inline std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt = {}) {
  std::vector<CheckResult> results;
  const GaussianLocation model;
  Rng rng(splitmix64(opt.seed));
  std::uniform_real_distribution<double> alpha_draw(0.05, 5.0);

  {
    CheckResult r{"symmetrization is normalized and T-invariant", true, false, {}};
    for (int k = 0; k < 200 && r.ok; ++k) {
      const FiniteMeasureOnE s = symmetrize(detail::random_measure(rng, alpha_draw(rng)));
      const NormalizationCheck check = check_normalized(s);
      if (!check.ok || !approx_equal(s, pushforward_T(s), 1e-14)) {
        r.ok = false;
        r.detail = "measure " + std::to_string(k) + ": integral " + detail::fmt(check.value) +
                   " at x=" + detail::fmt(check.witness_x);
      }
    }
    results.push_back(r);
  }

  {
    CheckResult r{"privatization interval has base mass c", true, false, {}};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> x_draw(0.0, 3.0);
    for (int k = 0; k < 1000 && r.ok; ++k) {
      const double c = 1e-3 + (0.5 - 1e-3) * unit(rng);
      const BoundaryFamily fam = k % 3 == 0 ? BoundaryFamily::full_line(BaseMeasure::gaussian(), c)
                                 : k % 3 == 1 ? BoundaryFamily::full_line(BaseMeasure::cauchy(), c)
                                              : BoundaryFamily::folded_normal_pair(2 * c * 0.999);
      const double x = x_draw(rng);
      const PrivatizationInterval iv = privatization_interval(fam, x);
      const BaseMeasure& nu = fam.measure(iv.side);
      const double mass = nu.cdf(iv.hi) - nu.cdf(iv.lo);
      if (std::fabs(mass - fam.c()) > 1e-10) {
        r.ok = false;
        r.detail = nu.name() + " c=" + detail::fmt(fam.c()) + " x=" + detail::fmt(x) + ": mass " +
                   detail::fmt(mass);
      }
    }
    results.push_back(r);
  }

  const std::vector<Channel> channels = detail::verification_channels(opt.normalizer_bias);
  {
    CheckResult r{"channel density integrates to one", true, false, {}};
    std::normal_distribution<double> x_draw(0.0, 2.0);
    for (const Channel& ch : channels) {
      for (int k = 0; k < 10 && r.ok; ++k) {
        const double x = x_draw(rng);
        const double mass = channel_total_mass(ch, x);
        if (std::fabs(mass - 1.0) > 1e-9) {
          r.ok = false;
          r.detail = ch.describe() + " x=" + detail::fmt(x) + ": total mass " + detail::fmt(mass);
        }
      }
    }
    results.push_back(r);
  }

  {
    CheckResult r{"density ratio bounded by e^alpha", true, false, {}};
    for (const Channel& ch : channels) {
      const LdpReport rep = ldp_ratio_check(ch);
      if (!rep.ok && r.ok) {
        r.ok = false;
        r.detail = ch.describe() + ": ratio " + detail::fmt(rep.max_ratio) +
                   " at x=" + detail::fmt(rep.witness_x) +
                   " x'=" + detail::fmt(rep.witness_x_prime) + " x0=" + detail::fmt(rep.witness_x0);
      }
    }
    results.push_back(r);
  }

  {
    CheckResult r{"three-term decomposition holds for symmetric measures", true, false, {}};
    for (int k = 0; k < 100 && r.ok; ++k) {
      const FisherReport rep =
          fisher_finite(model, 0.0, symmetrize(detail::random_measure(rng, alpha_draw(rng))));
      if (std::fabs(rep.decomposition_residual()) > 1e-8 * rep.total) {
        r.ok = false;
        r.detail = "measure " + std::to_string(k) + ": residual " +
                   detail::fmt(rep.decomposition_residual()) + " of " + detail::fmt(rep.total);
      }
    }
    results.push_back(r);
  }

  {
    CheckResult r{"symmetric plus asymmetric parts add up to the total", true, false, {}};
    for (int k = 0; k < 100 && r.ok; ++k) {
      const FisherReport rep =
          fisher_finite(model, 0.0, detail::random_asymmetric_measure(rng, alpha_draw(rng)));
      if (std::fabs(rep.split_residual()) > 1e-10 * rep.total) {
        r.ok = false;
        r.detail =
            "measure " + std::to_string(k) + ": residual " + detail::fmt(rep.split_residual());
      }
    }
    if (opt.normalizer_bias == 0.0) {
      for (const Channel& ch : channels) {
        const FisherReport rep = fisher_channel(model, 0.0, ch);
        if (r.ok && std::fabs(rep.split_residual()) > 1e-8 * rep.total) {
          r.ok = false;
          r.detail = ch.describe() + ": residual " + detail::fmt(rep.split_residual());
        }
      }
    }
    results.push_back(r);
  }

  {
    CheckResult r{"small c with large c e^alpha recovers full information", true, false, {}};
    const double total =
        fisher_channel(model, 0.0,
                       Channel::asymmetric_staircase(
                           13.8, BoundaryFamily::full_line(BaseMeasure::gaussian(), 1e-3)))
            .total;
    r.ok = total >= 0.95 && total <= 1.0 + 1e-9;
    r.detail = "I=" + detail::fmt(total);
    results.push_back(r);
  }

  {
    CheckResult r{"binomial approximation approaches the two-point measure", true, false, {}};
    const double two_point =
        fisher_finite(model, 0.0, two_point_measure(upper_half_line(0.5))).total;
    const double bin =
        fisher_channel(model, 0.0,
                       Channel::binomial_approx(0.5, BoundaryFamily::folded_normal_pair(0.999)))
            .total;
    r.ok = std::fabs(bin - two_point) <= 0.01 * two_point;
    r.detail = "binomial " + detail::fmt(bin) + " vs two-point " + detail::fmt(two_point);
    results.push_back(r);
  }

  // Informational: the three-term decomposition on asymmetric channels.
  for (const Channel& ch : {channels[4], channels[7]}) {
    const FisherReport rep = fisher_channel(model, 0.0, ch.with_normalizer_bias(0.0));
    CheckResult r{
        "three-term decomposition on " + ch.with_normalizer_bias(0.0).describe(), true, false, {}};
    r.informational = true;
    r.detail = "total " + detail::fmt(rep.total) + ", sym+mass-asym " +
               detail::fmt(rep.sym_term + rep.mass_term - rep.asym_term) + ", mu(E) " +
               detail::fmt(rep.measure_mass);
    results.push_back(r);
  }

  {
    const StepFunction rbar = upper_half_line(0.5);
    const double w = 2.0 / (std::exp(0.5) + 1.0);
    const double j_def = w * i_sym(model, 0.0, rbar);
    const double j_disp = w * i_sym_alternate_form(model, 0.0, rbar);
    CheckResult r{
        "symmetric optimum at alpha=0.5, i_sym vs alternate closed form", true, false, {}};
    r.informational = true;
    r.detail = "J=" + detail::fmt(j_def) + " (std " + detail::fmt(1 / std::sqrt(1000 * j_def)) +
               " at n=1000); alternate form J=" + detail::fmt(j_disp) + " (std " +
               detail::fmt(1 / std::sqrt(1000 * j_disp)) + ")";
    results.push_back(r);
  }
  return results;
}

}  // namespace ldpf

#endif  // LDPF_VERIFY_HPP_
