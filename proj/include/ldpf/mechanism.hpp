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

// Privatization channels from private x to public x0.
//
// The staircase channels have density
//
//   q(x, x0) = nu(x0) (1 + (e^a - 1) 1{x0 in [d_c^{-1}(x), g_c^{-1}(x)]}) / N
//
// with N = 1 + c(e^a - 1) for the asymmetric staircase on a full-line base and
// N = 2 + c(e^a - 1), nu = nu+ + nu-, for the binomial approximation on a
// half-line pair (the bump then lives on the half-line containing x). The
// two-point sign channel is randomized response on the side of a split point,
// with public values +1 / -1.

#ifndef LDPF_MECHANISM_HPP_
#define LDPF_MECHANISM_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ldpf/errors.hpp"
#include "ldpf/models.hpp"
#include "ldpf/quadrature.hpp"
#include "ldpf/rng.hpp"
#include "ldpf/staircase.hpp"

namespace ldpf {

enum class ChannelKind {
  kAsymmetricStaircase,
  kBinomialApprox,
  kTwoPointSign,
  kIdentity,  // no privatization; the non-private benchmark
};

inline std::string to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::kAsymmetricStaircase:
      return "asymmetric-staircase";
    case ChannelKind::kBinomialApprox:
      return "binomial-approx";
    case ChannelKind::kTwoPointSign:
      return "two-point-sign";
    case ChannelKind::kIdentity:
      return "identity";
  }
  return "unknown";
}

class Channel {
 public:
  static Channel asymmetric_staircase(double alpha, const BoundaryFamily& family) {
    if (family.is_half_line_pair()) {
      throw ConfigError("asymmetric-staircase needs a full-line boundary family");
    }
    if (family.c() > 0.5) {
      std::ostringstream msg;
      msg << "asymmetric-staircase: c=" << family.c()
          << " > 1/2 makes the output map non-injective (information collapse)";
      throw ConfigError(msg.str());
    }
    return Channel(ChannelKind::kAsymmetricStaircase, alpha, family, 0.0);
  }

  static Channel binomial_approx(double alpha, const BoundaryFamily& family) {
    if (!family.is_half_line_pair()) {
      throw ConfigError("binomial-approx needs a half-line-pair boundary family");
    }
    return Channel(ChannelKind::kBinomialApprox, alpha, family, family.split());
  }

  static Channel two_point_sign(double alpha, double split = 0.0) {
    return Channel(ChannelKind::kTwoPointSign, alpha, std::nullopt, split);
  }

  static Channel identity() { return Channel(ChannelKind::kIdentity, kInf, std::nullopt, 0.0); }

  ChannelKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  bool is_staircase() const noexcept {
    return kind_ == ChannelKind::kAsymmetricStaircase || kind_ == ChannelKind::kBinomialApprox;
  }
  const BoundaryFamily& family() const {
    if (!family_) throw ConfigError(to_string(kind_) + " has no boundary family");
    return *family_;
  }
  double c() const { return family().c(); }
  double split() const noexcept { return split_; }

  // e^alpha - 1.
  double bump() const noexcept { return std::expm1(alpha_); }

  // 1 + c(e^a - 1) or 2 + c(e^a - 1).
  double normalizer() const {
    const double n = family().proposal_mass() + family().c() * bump();
    return n * (1.0 + normalizer_bias_);
  }

  // Total mass mu(E) of the measure on the extremal set behind the channel.
  double extremal_mass() const {
    switch (kind_) {
      case ChannelKind::kAsymmetricStaircase:
      case ChannelKind::kBinomialApprox:
        return family().proposal_mass() / normalizer();
      case ChannelKind::kTwoPointSign:
        return 2.0 / (std::exp(alpha_) + 1.0);
      case ChannelKind::kIdentity:
        break;
    }
    throw ConfigError("identity channel has no extremal measure");
  }

  // Test hook: scales the normalizer by (1 + bias) so verification suites can
  // confirm that a broken normalizer is detected.
  Channel with_normalizer_bias(double bias) const {
    Channel copy = *this;
    copy.normalizer_bias_ = bias;
    return copy;
  }

  std::string describe() const {
    std::string out = to_string(kind_);
    if (kind_ == ChannelKind::kIdentity) return out;
    out += "(alpha=" + shortest(alpha_);
    if (family_) {
      out += ",c=" + shortest(family_->c()) + ",nu=" + family_->base().name();
      if (family_->is_half_line_pair()) out += "/" + family_->negative_base().name();
    } else {
      out += ",split=" + shortest(split_);
    }
    return out + ")";
  }

 private:
  Channel(ChannelKind kind, double alpha, std::optional<BoundaryFamily> family, double split)
      : kind_(kind), alpha_(alpha), family_(std::move(family)), split_(split) {
    if (kind != ChannelKind::kIdentity && !(alpha >= 0.0 && std::isfinite(alpha))) {
      std::ostringstream msg;
      msg << "privacy budget alpha=" << alpha << " must be finite and >= 0";
      throw ConfigError(msg.str());
    }
  }

  // Shortest decimal that round-trips.
  static std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  }

  ChannelKind kind_;
  double alpha_;
  std::optional<BoundaryFamily> family_;
  double split_;
  double normalizer_bias_ = 0.0;
};

// Whether public x0 falls in the high-probability region of private x.
inline bool in_bump(const BoundaryFamily& family, double x, double x0) {
  const Side side = family.side_of(x);
  if (family.side_of(x0) != side) return false;
  const BaseMeasure& nu = family.measure(side);
  return covering_quantiles(family.c(), nu.cdf(x)).contains(nu.cdf(x0));
}

inline double channel_density(const Channel& ch, double x, double x0) {
  if (!ch.is_staircase()) {
    throw ConfigError("channel_density: " + to_string(ch.kind()) +
                      " has no density on the real line");
  }
  const BoundaryFamily& family = ch.family();
  const double factor = in_bump(family, x, x0) ? 1.0 + ch.bump() : 1.0;
  return family.proposal_density(x0) * factor / ch.normalizer();
}

// Two-point sign channel: probability of reporting +1 for private x.
inline double sign_probability(const Channel& ch, double x) {
  const double e = std::exp(ch.alpha());
  return x > ch.split() ? e / (1.0 + e) : 1.0 / (1.0 + e);
}

// Integral of channel_density(ch, x, .) over the real line, computed by
// quadrature in data space with breaks at the interval ends.
inline double channel_total_mass(const Channel& ch, double x, const QuadratureSpec& spec = {}) {
  const BoundaryFamily& family = ch.family();
  const PrivatizationInterval iv = privatization_interval(family, x);
  auto f = [&](double x0) { return channel_density(ch, x, x0); };
  std::vector<double> cuts = {-kInf};
  if (family.is_half_line_pair()) cuts.push_back(family.split());
  for (double v : {iv.lo, iv.hi}) {
    if (std::isfinite(v)) cuts.push_back(v);
  }
  cuts.push_back(kInf);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate_scalar(f, cuts[i], cuts[i + 1], spec);
  }
  return total;
}

// Exact sampler: a two-component mixture of the proposal and the proposal
// restricted to the mass-c interval around x, both drawn by quantile inversion.
inline double sample(const Channel& ch, double x, Rng& rng) {
  switch (ch.kind()) {
    case ChannelKind::kIdentity:
      return x;
    case ChannelKind::kTwoPointSign:
      return uniform_open(rng) < sign_probability(ch, x) ? 1.0 : -1.0;
    case ChannelKind::kAsymmetricStaircase:
    case ChannelKind::kBinomialApprox:
      break;
  }
  const BoundaryFamily& family = ch.family();
  const double n = family.proposal_mass() + family.c() * ch.bump();
  if (uniform_open(rng) * n < family.proposal_mass()) {
    if (!family.is_half_line_pair()) {
      return family.base().quantile_closed(uniform_open(rng));
    }
    const Side side = uniform_open(rng) < 0.5 ? Side::kPositive : Side::kNegative;
    return family.measure(side).quantile_closed(uniform_open(rng));
  }
  const PrivatizationInterval iv = privatization_interval(family, x);
  const double w = iv.quantiles.lo + iv.quantiles.width() * uniform_open(rng);
  return family.measure(iv.side).quantile_closed(w);
}

// Density (or, for the sign channel, mass function) of the public output when
// the private data follow p_theta.
inline double public_density(const Channel& ch, const ParametricModel& model, double theta,
                             double x0) {
  switch (ch.kind()) {
    case ChannelKind::kIdentity:
      return model.density(theta, x0);
    case ChannelKind::kTwoPointSign: {
      const double e = std::exp(ch.alpha());
      const double above = 1.0 - model.cdf(theta, ch.split());
      const double plus = (e * above + (1.0 - above)) / (1.0 + e);
      if (x0 == 1.0) return plus;
      if (x0 == -1.0) return 1.0 - plus;
      return 0.0;
    }
    case ChannelKind::kAsymmetricStaircase:
    case ChannelKind::kBinomialApprox:
      break;
  }
  const BoundaryFamily& family = ch.family();
  const BaseMeasure& nu = family.measure_at(x0);
  const double u0 = nu.cdf(x0);
  const double g = g_from_quantile(nu, family.c(), u0);
  const double d = d_from_quantile(nu, family.c(), u0);
  return nu.density(x0) / ch.normalizer() * (1.0 + ch.bump() * interval_mass(model, theta, g, d));
}

struct LdpReport {
  double max_ratio = 1.0;
  double bound = 1.0;  // e^alpha
  bool ok = true;
  double witness_x = 0.0;
  double witness_x_prime = 0.0;
  double witness_x0 = 0.0;
};

namespace detail {

// n points at the mid-quantiles of each base measure of the family.
inline std::vector<double> quantile_grid(const BoundaryFamily& family, int n) {
  std::vector<double> grid;
  auto fill = [&](const BaseMeasure& nu, int count) {
    for (int i = 0; i < count; ++i) {
      grid.push_back(nu.quantile_closed((i + 0.5) / count));
    }
  };
  if (family.is_half_line_pair()) {
    fill(family.negative_base(), n / 2);
    fill(family.base(), n - n / 2);
  } else {
    fill(family.base(), n);
  }
  return grid;
}

}  // namespace detail

// Largest q(x, x0) / q(x', x0) over an n_x * n_x * n_x0 grid of triples.
// For each x0 the maximum over (x, x') is max_x q / min_x q, which is what is
// evaluated; the witness triple is reported.
inline LdpReport ldp_ratio_check(const Channel& ch, int n_x = 100, int n_x0 = 100,
                                 double slack = 1e-12) {
  LdpReport report;
  report.bound = std::exp(ch.alpha());
  std::vector<double> xs;
  std::vector<double> x0s;
  if (ch.kind() == ChannelKind::kTwoPointSign) {
    for (int i = 0; i < n_x; ++i) {
      xs.push_back(ch.split() + special::normal_quantile((i + 0.5) / n_x));
    }
    x0s = {-1.0, 1.0};
  } else {
    xs = detail::quantile_grid(ch.family(), n_x);
    x0s = detail::quantile_grid(ch.family(), n_x0);
  }
  for (double x0 : x0s) {
    double hi = -kInf;
    double lo = kInf;
    double arg_hi = 0.0;
    double arg_lo = 0.0;
    for (double x : xs) {
      double q;
      if (ch.kind() == ChannelKind::kTwoPointSign) {
        const double p = sign_probability(ch, x);
        q = x0 > 0.0 ? p : 1.0 - p;
      } else {
        q = channel_density(ch, x, x0);
      }
      if (q > hi) {
        hi = q;
        arg_hi = x;
      }
      if (q < lo) {
        lo = q;
        arg_lo = x;
      }
    }
    const double ratio = hi / lo;
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.witness_x = arg_hi;
      report.witness_x_prime = arg_lo;
      report.witness_x0 = x0;
    }
  }
  report.ok = report.max_ratio <= report.bound * (1.0 + slack);
  return report;
}

// A list of private or public values with its provenance.
struct Dataset {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string channel;  // Channel::describe() of the producing channel
};

// Privatizes every value with one engine seeded from `seed`; output order
// follows input order.
inline Dataset privatize(const Channel& ch, std::span<const double> private_values,
                         std::uint64_t seed) {
  Rng rng(splitmix64(seed));
  Dataset out;
  out.seed = seed;
  out.channel = ch.describe();
  out.values.reserve(private_values.size());
  for (double x : private_values) {
    if (!std::isfinite(x)) throw DomainError("privatize: private values must be finite");
    out.values.push_back(sample(ch, x, rng));
  }
  return out;
}

}  // namespace ldpf

#endif  // LDPF_MECHANISM_HPP_
