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

// Globally adaptive composite Gauss-Legendre quadrature.
//
// Each panel is integrated with a 10-point rule on the whole panel and on its
// two halves; the difference is the panel's error estimate. The panel with the
// largest estimate is bisected until the summed estimate drops below
// max(rel_tol * |integral|, abs_tol) or the panel budget is exhausted.
// Integrands may be vector valued (std::array<double, K>) so that several
// functionals sharing the same expensive inner evaluations are integrated on a
// single panel set.

#ifndef LDPF_QUADRATURE_HPP_
#define LDPF_QUADRATURE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "ldpf/errors.hpp"

namespace ldpf {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-15;
  std::size_t max_panels = 10000;
};

template <std::size_t K>
struct QuadratureResult {
  std::array<double, K> value{};
  double error = 0.0;
  std::size_t panels = 0;
  bool converged = true;
};

namespace detail {

inline constexpr std::size_t kGaussPoints = 10;

struct GaussRule {
  std::array<double, kGaussPoints> nodes{};
  std::array<double, kGaussPoints> weights{};
};

// Nodes and weights on [-1, 1] by Newton iteration on P_n.
inline const GaussRule& gauss_legendre_rule() {
  static const GaussRule rule = [] {
    GaussRule r;
    constexpr std::size_t n = kGaussPoints;
    for (std::size_t i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                          (static_cast<double>(n) + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
          const double kk = static_cast<double>(k);
          const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
          p0 = p1;
          p1 = p2;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-16) break;
      }
      r.nodes[i] = x;
      r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

template <std::size_t K, typename F>
std::array<double, K> gauss_panel(const F& f, double a, double b) {
  const GaussRule& rule = gauss_legendre_rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  std::array<double, K> sum{};
  for (std::size_t i = 0; i < kGaussPoints; ++i) {
    const std::array<double, K> v = f(mid + half * rule.nodes[i]);
    for (std::size_t k = 0; k < K; ++k) sum[k] += rule.weights[i] * v[k];
  }
  for (std::size_t k = 0; k < K; ++k) sum[k] *= half;
  return sum;
}

template <std::size_t K>
struct Panel {
  double a;
  double b;
  std::array<double, K> fine;  // sum of the two half-panel rules
  double error;
};

template <std::size_t K, typename F>
Panel<K> make_panel(const F& f, double a, double b) {
  const double m = 0.5 * (a + b);
  const std::array<double, K> whole = gauss_panel<K>(f, a, b);
  const std::array<double, K> left = gauss_panel<K>(f, a, m);
  const std::array<double, K> right = gauss_panel<K>(f, m, b);
  Panel<K> p{a, b, {}, 0.0};
  for (std::size_t k = 0; k < K; ++k) {
    p.fine[k] = left[k] + right[k];
    p.error = std::max(p.error, std::fabs(p.fine[k] - whole[k]));
  }
  return p;
}

}  // namespace detail

// Integrates a vector-valued f over [points.front(), points.back()], with a
// mandatory panel boundary at every entry of `points` (sorted, finite).
// Throws NumericalError when the tolerance is not met within the panel budget.
template <std::size_t K, typename F>
QuadratureResult<K> integrate(const F& f, std::vector<double> points,
                              const QuadratureSpec& spec = {}) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  QuadratureResult<K> result;
  if (points.size() < 2) return result;

  using detail::Panel;
  auto worse = [](const Panel<K>& x, const Panel<K>& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  };
  std::priority_queue<Panel<K>, std::vector<Panel<K>>, decltype(worse)> queue(worse);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    queue.push(detail::make_panel<K>(f, points[i], points[i + 1]));
  }

  auto totals = [&]() {
    std::vector<Panel<K>> panels;
    auto copy = queue;
    while (!copy.empty()) {
      panels.push_back(copy.top());
      copy.pop();
    }
    // Fixed left-to-right summation order keeps results bit-stable.
    std::sort(panels.begin(), panels.end(),
              [](const Panel<K>& x, const Panel<K>& y) { return x.a < y.a; });
    QuadratureResult<K> r;
    for (const Panel<K>& p : panels) {
      for (std::size_t k = 0; k < K; ++k) r.value[k] += p.fine[k];
      r.error += p.error;
    }
    r.panels = panels.size();
    return r;
  };

  auto tolerance = [&](const std::array<double, K>& value) {
    double scale = 0.0;
    for (double v : value) scale = std::max(scale, std::fabs(v));
    return std::max(spec.rel_tol * scale, spec.abs_tol);
  };

  // Running sums are only used for the stopping rule; the returned value is
  // recomputed in panel order.
  std::array<double, K> running{};
  double running_error = 0.0;
  {
    auto copy = queue;
    while (!copy.empty()) {
      for (std::size_t k = 0; k < K; ++k) running[k] += copy.top().fine[k];
      running_error += copy.top().error;
      copy.pop();
    }
  }

  while (running_error > tolerance(running)) {
    if (queue.size() >= spec.max_panels) {
      result = totals();
      result.converged = false;
      std::ostringstream msg;
      msg << "quadrature did not converge: estimated error " << result.error << " after "
          << result.panels << " panels";
      throw NumericalError(msg.str(), result.error);
    }
    const Panel<K> worst = queue.top();
    queue.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) {
      // Panel can no longer be split in floating point; accept it.
      running_error -= worst.error;
      Panel<K> frozen = worst;
      frozen.error = 0.0;
      queue.push(frozen);
      continue;
    }
    const Panel<K> left = detail::make_panel<K>(f, worst.a, m);
    const Panel<K> right = detail::make_panel<K>(f, m, worst.b);
    for (std::size_t k = 0; k < K; ++k) {
      running[k] += left.fine[k] + right.fine[k] - worst.fine[k];
    }
    running_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  return totals();
}

// Scalar integral of f over (a, b), either endpoint possibly infinite.
// Infinite ranges are mapped onto a finite one by x = t / (1 - t^2) or
// x = a + t / (1 - t).
template <typename F>
double integrate_scalar(const F& f, double a, double b, const QuadratureSpec& spec = {}) {
  if (a == b) return 0.0;
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) {
    auto g = [&](double x) { return std::array<double, 1>{f(x)}; };
    return integrate<1>(g, {a, b}, spec).value[0];
  }
  if (lo_inf && hi_inf) {
    auto g = [&](double t) {
      const double d = 1.0 - t * t;
      return std::array<double, 1>{f(t / d) * (1.0 + t * t) / (d * d)};
    };
    return integrate<1>(g, {-1.0, 0.0, 1.0}, spec).value[0];
  }
  if (hi_inf) {
    auto g = [&](double t) {
      const double d = 1.0 - t;
      return std::array<double, 1>{f(a + t / d) / (d * d)};
    };
    return integrate<1>(g, {0.0, 0.5, 1.0}, spec).value[0];
  }
  auto g = [&](double t) {
    const double d = 1.0 - t;
    return std::array<double, 1>{f(b - t / d) / (d * d)};
  };
  return integrate<1>(g, {0.0, 0.5, 1.0}, spec).value[0];
}

}  // namespace ldpf

#endif  // LDPF_QUADRATURE_HPP_
