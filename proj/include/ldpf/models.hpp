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

// Scalar-parameter statistical models p_theta on the real line and positive
// base (proposal) measures nu with CDF Xi and quantile Xi^{-1}.

#ifndef LDPF_MODELS_HPP_
#define LDPF_MODELS_HPP_

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>

#include "ldpf/errors.hpp"
#include "ldpf/quadrature.hpp"
#include "ldpf/special.hpp"

namespace ldpf {

// A real number or one of +-infinity. IEEE doubles already give the total
// order and F(-inf) = 0, F(+inf) = 1 is enforced by every CDF below.
using ExtendedReal = double;

inline constexpr double kInf = special::kInf;

namespace detail {

inline void require_ordered(ExtendedReal a, ExtendedReal b, const char* what) {
  if (std::isnan(a) || std::isnan(b) || a > b) {
    std::ostringstream msg;
    msg << what << ": interval endpoints out of order (a=" << a << ", b=" << b << ")";
    throw OrderingError(msg.str());
  }
}

}  // namespace detail

// Family p_theta with score s_theta = d/dtheta log p_theta. Subclasses must
// provide density, CDF and score; interval and score masses fall back to
// numeric quadrature unless a closed form is supplied.
class ParametricModel {
 public:
  explicit ParametricModel(double theta0) : theta0_(theta0) {}
  virtual ~ParametricModel() = default;

  double theta0() const noexcept { return theta0_; }

  virtual std::string name() const = 0;
  virtual double density(double theta, double x) const = 0;
  virtual double cdf(double theta, ExtendedReal x) const = 0;
  virtual double score(double theta, double x) const = 0;

  // Inverse CDF used to draw private data; bisection unless overridden.
  virtual double quantile(double theta, double u) const {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("model quantile: u not in (0,1)");
    double lo = theta - 1.0;
    double hi = theta + 1.0;
    while (cdf(theta, lo) > u) lo -= 2.0 * (hi - lo);
    while (cdf(theta, hi) < u) hi += 2.0 * (hi - lo);
    for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::fabs(lo)); ++i) {
      const double mid = 0.5 * (lo + hi);
      (cdf(theta, mid) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  // F(theta, b) - F(theta, a); callers go through ldpf::interval_mass.
  virtual double mass(double theta, ExtendedReal a, ExtendedReal b) const {
    return cdf(theta, b) - cdf(theta, a);
  }

  // Integral of s * p over (a, b).
  virtual double score_weighted_mass(double theta, ExtendedReal a, ExtendedReal b) const {
    QuadratureSpec spec;
    spec.rel_tol = 1e-12;
    spec.abs_tol = 1e-15;
    return integrate_scalar([&](double x) { return score(theta, x) * density(theta, x); }, a, b,
                            spec);
  }

  // Integral of s^2 p over the line: the non-private Fisher information.
  virtual double full_information(double theta) const {
    QuadratureSpec spec;
    spec.rel_tol = 1e-12;
    return integrate_scalar(
        [&](double x) {
          const double s = score(theta, x);
          return s * s * density(theta, x);
        },
        -kInf, kInf, spec);
  }

 private:
  double theta0_;
};

// N(theta, sigma^2) with theta the location parameter.
class GaussianLocation final : public ParametricModel {
 public:
  explicit GaussianLocation(double theta0 = 0.0, double sigma = 1.0)
      : ParametricModel(theta0), sigma_(sigma) {
    if (!(sigma > 0.0)) throw ConfigError("gaussian-location: sigma must be > 0");
  }

  std::string name() const override { return "gaussian-location"; }
  double sigma() const noexcept { return sigma_; }

  double density(double theta, double x) const override {
    return special::normal_pdf((x - theta) / sigma_) / sigma_;
  }
  double cdf(double theta, ExtendedReal x) const override {
    return special::normal_cdf((x - theta) / sigma_);
  }
  double score(double theta, double x) const override { return (x - theta) / (sigma_ * sigma_); }
  double quantile(double theta, double u) const override {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("model quantile: u not in (0,1)");
    return theta + sigma_ * special::normal_quantile(u);
  }
  double mass(double theta, ExtendedReal a, ExtendedReal b) const override {
    const double za = (a - theta) / sigma_;
    const double zb = (b - theta) / sigma_;
    // Subtract upper tails on the right half-line to avoid cancellation.
    if (za > 0.0) return special::normal_sf(za) - special::normal_sf(zb);
    return special::normal_cdf(zb) - special::normal_cdf(za);
  }
  double score_weighted_mass(double theta, ExtendedReal a, ExtendedReal b) const override {
    return (special::normal_pdf((a - theta) / sigma_) - special::normal_pdf((b - theta) / sigma_)) /
           sigma_;
  }
  double full_information(double) const override { return 1.0 / (sigma_ * sigma_); }

 private:
  double sigma_;
};

// Logistic location family. Ships without closed-form score mass so it
// exercises the numeric fallback of ParametricModel.
class LogisticLocation final : public ParametricModel {
 public:
  explicit LogisticLocation(double theta0 = 0.0) : ParametricModel(theta0) {}

  std::string name() const override { return "logistic-location"; }

  double density(double theta, double x) const override {
    const double e = std::exp(-std::fabs(x - theta));
    return e / ((1.0 + e) * (1.0 + e));
  }
  double cdf(double theta, ExtendedReal x) const override {
    if (x == -kInf) return 0.0;
    if (x == kInf) return 1.0;
    return 1.0 / (1.0 + std::exp(-(x - theta)));
  }
  double score(double theta, double x) const override { return std::tanh(0.5 * (x - theta)); }
};

inline double interval_mass(const ParametricModel& model, double theta, ExtendedReal a,
                            ExtendedReal b) {
  detail::require_ordered(a, b, "interval_mass");
  return model.mass(theta, a, b);
}

inline double score_mass(const ParametricModel& model, double theta, ExtendedReal a,
                         ExtendedReal b) {
  detail::require_ordered(a, b, "score_mass");
  if (a == b) return 0.0;
  return model.score_weighted_mass(theta, a, b);
}

// ---------------------------------------------------------------------------

enum class BaseKind { kGaussian, kCauchy, kFoldedNormal };
enum class Support { kFullLine, kPositiveHalfLine, kNegativeHalfLine };

// Positive density nu on its support with CDF Xi and strictly increasing
// quantile. Folded normals live on (location, inf) or (-inf, location) with
// density 2 phi((x - location) / scale) / scale.
class BaseMeasure {
 public:
  static BaseMeasure gaussian(double location = 0.0, double scale = 1.0) {
    return BaseMeasure(BaseKind::kGaussian, Support::kFullLine, location, scale);
  }
  static BaseMeasure cauchy(double location = 0.0, double scale = 1.0) {
    return BaseMeasure(BaseKind::kCauchy, Support::kFullLine, location, scale);
  }
  static BaseMeasure folded_normal(Support side, double fold = 0.0, double scale = 1.0) {
    if (side == Support::kFullLine) {
      throw ConfigError("folded-normal base measure needs a half-line support");
    }
    return BaseMeasure(BaseKind::kFoldedNormal, side, fold, scale);
  }

  BaseKind kind() const noexcept { return kind_; }
  Support support() const noexcept { return support_; }
  double location() const noexcept { return location_; }
  double scale() const noexcept { return scale_; }

  std::string name() const {
    switch (kind_) {
      case BaseKind::kGaussian:
        return "gaussian";
      case BaseKind::kCauchy:
        return "cauchy";
      case BaseKind::kFoldedNormal:
        return support_ == Support::kPositiveHalfLine ? "folded-normal+" : "folded-normal-";
    }
    return "unknown";
  }

  ExtendedReal support_lo() const noexcept {
    return support_ == Support::kPositiveHalfLine ? location_ : -kInf;
  }
  ExtendedReal support_hi() const noexcept {
    return support_ == Support::kNegativeHalfLine ? location_ : kInf;
  }
  bool in_support(double x) const noexcept {
    switch (support_) {
      case Support::kFullLine:
        return std::isfinite(x);
      case Support::kPositiveHalfLine:
        return x > location_ && std::isfinite(x);
      case Support::kNegativeHalfLine:
        return x <= location_ && std::isfinite(x);
    }
    return false;
  }

  double density(double x) const {
    if (!in_support(x)) return 0.0;
    const double z = (x - location_) / scale_;
    switch (kind_) {
      case BaseKind::kGaussian:
        return special::normal_pdf(z) / scale_;
      case BaseKind::kCauchy:
        return 1.0 / (std::numbers::pi * scale_ * (1.0 + z * z));
      case BaseKind::kFoldedNormal:
        return 2.0 * special::normal_pdf(z) / scale_;
    }
    return 0.0;
  }

  // Xi(x), clamped to 0 / 1 outside the support.
  double cdf(ExtendedReal x) const {
    if (x <= support_lo()) return 0.0;
    if (x >= support_hi()) return 1.0;
    const double z = (x - location_) / scale_;
    switch (kind_) {
      case BaseKind::kGaussian:
        return special::normal_cdf(z);
      case BaseKind::kCauchy:
        return z < 0.0 ? std::atan2(1.0, -z) / std::numbers::pi
                       : 1.0 - std::atan2(1.0, z) / std::numbers::pi;
      case BaseKind::kFoldedNormal:
        return support_ == Support::kPositiveHalfLine ? std::erf(z / std::numbers::sqrt2)
                                                      : 2.0 * special::normal_cdf(z);
    }
    return 0.0;
  }

  // Xi^{-1}(u) for u in [0, 1]; the endpoints map to the support bounds.
  ExtendedReal quantile_closed(double u) const {
    if (u <= 0.0) return support_lo();
    if (u >= 1.0) return support_hi();
    switch (kind_) {
      case BaseKind::kGaussian:
        return location_ + scale_ * special::normal_quantile(u);
      case BaseKind::kCauchy:
        // -cot(pi u) evaluated from the nearer tail.
        return u < 0.5 ? location_ - scale_ / std::tan(std::numbers::pi * u)
                       : location_ + scale_ / std::tan(std::numbers::pi * (1.0 - u));
      case BaseKind::kFoldedNormal:
        return support_ == Support::kPositiveHalfLine
                   ? location_ - scale_ * special::normal_quantile(0.5 * (1.0 - u))
                   : location_ + scale_ * special::normal_quantile(0.5 * u);
    }
    return 0.0;
  }

 private:
  BaseMeasure(BaseKind kind, Support support, double location, double scale)
      : kind_(kind), support_(support), location_(location), scale_(scale) {
    if (!(scale > 0.0) || !std::isfinite(location)) {
      throw ConfigError("base measure: scale must be > 0, location finite");
    }
  }

  BaseKind kind_;
  Support support_;
  double location_;
  double scale_;
};

// Xi^{-1}(u) for u strictly inside (0, 1).
inline double quantile(const BaseMeasure& base, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    std::ostringstream msg;
    msg << "quantile: level " << u << " not in (0,1)";
    throw DomainError(msg.str());
  }
  return base.quantile_closed(u);
}

}  // namespace ldpf

#endif  // LDPF_MODELS_HPP_
