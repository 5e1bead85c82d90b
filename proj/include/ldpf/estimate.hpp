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

// Maximum likelihood from privatized data and the Monte Carlo harness.

#ifndef LDPF_ESTIMATE_HPP_
#define LDPF_ESTIMATE_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ldpf/errors.hpp"
#include "ldpf/fisher.hpp"
#include "ldpf/mechanism.hpp"
#include "ldpf/models.hpp"
#include "ldpf/rng.hpp"

namespace ldpf {

// Log-likelihood of a public sample as a function of theta. The
// theta-independent parts (proposal density, interval ends) are computed once.
class PublicLikelihood {
 public:
  PublicLikelihood(const Channel& ch, const ParametricModel& model, std::span<const double> data)
      : ch_(ch), model_(model) {
    if (data.empty()) throw DomainError("log_likelihood: empty public sample");
    switch (ch.kind()) {
      case ChannelKind::kIdentity:
        values_.assign(data.begin(), data.end());
        break;
      case ChannelKind::kTwoPointSign:
        for (double z : data) {
          if (z == 1.0) {
            ++plus_;
          } else if (z == -1.0) {
            ++minus_;
          } else {
            throw DomainError("log_likelihood: sign channel outputs must be +1 or -1");
          }
        }
        break;
      case ChannelKind::kAsymmetricStaircase:
      case ChannelKind::kBinomialApprox: {
        const BoundaryFamily& family = ch.family();
        const double log_n = std::log(ch.normalizer());
        rows_.reserve(data.size());
        for (double z : data) {
          const BaseMeasure& nu = family.measure_at(z);
          const double density = nu.density(z);
          if (!(density > 0.0)) {
            std::ostringstream msg;
            msg << "log_likelihood: public value " << z << " outside the base support";
            throw DomainError(msg.str());
          }
          const double u0 = nu.cdf(z);
          rows_.push_back(
              {g_from_quantile(nu, family.c(), u0), d_from_quantile(nu, family.c(), u0)});
          offset_ += std::log(density) - log_n;
        }
        break;
      }
    }
  }

  double operator()(double theta) const {
    switch (ch_.kind()) {
      case ChannelKind::kIdentity: {
        double sum = 0.0;
        for (double z : values_) sum += std::log(model_.density(theta, z));
        return sum;
      }
      case ChannelKind::kTwoPointSign: {
        const double p = public_density(ch_, model_, theta, 1.0);
        return static_cast<double>(plus_) * std::log(p) +
               static_cast<double>(minus_) * std::log1p(-p);
      }
      case ChannelKind::kAsymmetricStaircase:
      case ChannelKind::kBinomialApprox:
        break;
    }
    const double a = ch_.bump();
    double sum = offset_;
    for (const Row& row : rows_) {
      sum += std::log1p(a * model_.mass(theta, row.g, row.d));
    }
    return sum;
  }

  std::size_t size() const noexcept { return values_.size() + rows_.size() + plus_ + minus_; }

 private:
  struct Row {
    double g;
    double d;
  };

  const Channel& ch_;
  const ParametricModel& model_;
  std::vector<double> values_;
  std::vector<Row> rows_;
  double offset_ = 0.0;
  std::size_t plus_ = 0;
  std::size_t minus_ = 0;
};

inline double log_likelihood(const Channel& ch, const ParametricModel& model, double theta,
                             std::span<const double> public_data) {
  return PublicLikelihood(ch, model, public_data)(theta);
}

struct MLEConfig {
  double lo = -10.0;
  double hi = 10.0;
  double tol = 1e-6;
  int max_iterations = 200;
  bool polish = true;  // one finite-difference Newton step after the search
};

struct MLEResult {
  double theta_hat = 0.0;
  double log_likelihood = 0.0;
  bool at_boundary = false;
  int iterations = 0;
};

// Golden-section maximization of f on [cfg.lo, cfg.hi].
template <typename F>
MLEResult golden_section_maximize(const F& f, const MLEConfig& cfg) {
  if (!(cfg.lo < cfg.hi) || !(cfg.tol > 0.0)) {
    throw ConfigError("mle: bracket must be nonempty and tol > 0");
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = cfg.lo;
  double b = cfg.hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  MLEResult result;
  while (b - a > cfg.tol && result.iterations < cfg.max_iterations) {
    ++result.iterations;
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  result.theta_hat = f1 >= f2 ? x1 : x2;
  result.log_likelihood = std::max(f1, f2);

  if (cfg.polish) {
    const double h = std::max(1e-4, 10.0 * cfg.tol);
    const double x = result.theta_hat;
    if (x - h > cfg.lo && x + h < cfg.hi) {
      const double fm = f(x - h);
      const double fp = f(x + h);
      const double d1 = (fp - fm) / (2.0 * h);
      const double d2 = (fp - 2.0 * result.log_likelihood + fm) / (h * h);
      if (d2 < 0.0) {
        const double step = -d1 / d2;
        const double cand = x + step;
        if (std::fabs(step) <= 10.0 * h && cand > cfg.lo && cand < cfg.hi) {
          const double fc = f(cand);
          if (fc >= result.log_likelihood) {
            result.theta_hat = cand;
            result.log_likelihood = fc;
          }
        }
      }
    }
  }
  result.at_boundary =
      result.theta_hat - cfg.lo <= 2.0 * cfg.tol || cfg.hi - result.theta_hat <= 2.0 * cfg.tol;
  return result;
}

inline MLEResult mle(const Channel& ch, const ParametricModel& model,
                     std::span<const double> public_data, const MLEConfig& cfg = {}) {
  const PublicLikelihood lik(ch, model, public_data);
  return golden_section_maximize(lik, cfg);
}

// Number of strict local maxima of the likelihood on an evenly spaced grid;
// more than one flags a multimodal likelihood the golden-section search may
// not handle.
inline int count_local_maxima(const PublicLikelihood& lik, double lo, double hi, int points = 512) {
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) v[i] = lik(lo + (hi - lo) * i / (points - 1));
  int count = 0;
  for (int i = 0; i < points; ++i) {
    const bool left = i == 0 || v[i] > v[i - 1];
    const bool right = i == points - 1 || v[i] > v[i + 1];
    if (left && right) ++count;
  }
  return count;
}

inline double theoretical_std(double n, double fisher_total) {
  if (!(fisher_total > 0.0)) {
    std::ostringstream msg;
    msg << "theoretical_std: Fisher information " << fisher_total << " is not positive";
    throw DegenerateError(msg.str());
  }
  if (!(n > 0.0)) throw ConfigError("theoretical_std: n must be positive");
  return 1.0 / std::sqrt(n * fisher_total);
}

// Builds the channel for one (alpha, c) grid point.
using ChannelFactory = std::function<Channel(double alpha, double c)>;

struct MonteCarloScenario {
  std::shared_ptr<const ParametricModel> model;
  ChannelFactory channel;
  std::vector<double> alphas;
  std::vector<double> cs;
  std::size_t n = 1000;
  std::size_t trials = 2000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
  MLEConfig mle;
  QuadratureSpec quadrature;
  bool scan = false;
};

struct MonteCarloRow {
  double alpha = 0.0;
  double c = 0.0;
  double bias = 0.0;
  double std = 0.0;
  double theo_std = 0.0;
  double fisher = 0.0;
  std::size_t trials = 0;  // successful trials
  std::size_t n = 0;
  std::size_t failed_trials = 0;
  std::size_t boundary_trials = 0;
  std::size_t multimodal_trials = 0;
  bool failed = false;
  std::string error;
};

namespace detail {

struct TrialOutcome {
  double theta_hat = std::numeric_limits<double>::quiet_NaN();
  bool at_boundary = false;
  bool multimodal = false;
  std::string error;
};

inline TrialOutcome run_trial(const MonteCarloScenario& sc, const Channel& ch,
                              std::size_t grid_index, std::size_t trial_index) {
  TrialOutcome out;
  try {
    Rng rng(stream_seed(sc.seed, grid_index, trial_index));
    const ParametricModel& model = *sc.model;
    const double theta0 = model.theta0();
    std::vector<double> z(sc.n);
    for (double& v : z) {
      const double x = model.quantile(theta0, uniform_open(rng));
      v = sample(ch, x, rng);
    }
    const PublicLikelihood lik(ch, model, z);
    const MLEResult r = golden_section_maximize(lik, sc.mle);
    out.theta_hat = r.theta_hat;
    out.at_boundary = r.at_boundary;
    if (sc.scan) out.multimodal = count_local_maxima(lik, sc.mle.lo, sc.mle.hi) > 1;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace detail

// Runs every (alpha, c) grid point, alpha-major. Trial (g, t) draws from the
// stream stream_seed(seed, g, t) and results are aggregated in trial order, so
// the table does not depend on the thread count.
inline std::vector<MonteCarloRow> monte_carlo(const MonteCarloScenario& sc) {
  if (!sc.model) throw ConfigError("monte_carlo: no model");
  if (sc.alphas.empty() || sc.cs.empty()) throw ConfigError("monte_carlo: empty grid");
  if (sc.n == 0 || sc.trials < 2) throw ConfigError("monte_carlo: need n >= 1, trials >= 2");

  std::vector<MonteCarloRow> rows;
  std::vector<Channel> channels;
  for (double alpha : sc.alphas) {
    for (double c : sc.cs) {
      channels.push_back(sc.channel(alpha, c));
      MonteCarloRow row;
      row.alpha = alpha;
      row.c = c;
      row.n = sc.n;
      rows.push_back(row);
    }
  }

  const std::size_t jobs = rows.size() * sc.trials;
  std::vector<detail::TrialOutcome> outcomes(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) {
      const std::size_t g = j / sc.trials;
      outcomes[j] = detail::run_trial(sc, channels[g], g, j % sc.trials);
    }
  };
  unsigned threads = sc.threads ? sc.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  const double theta0 = sc.model->theta0();
  for (std::size_t g = 0; g < rows.size(); ++g) {
    MonteCarloRow& row = rows[g];
    std::vector<double> estimates;
    for (std::size_t t = 0; t < sc.trials; ++t) {
      const detail::TrialOutcome& o = outcomes[g * sc.trials + t];
      if (!o.error.empty()) {
        ++row.failed_trials;
        if (row.error.empty()) row.error = o.error;
        continue;
      }
      estimates.push_back(o.theta_hat);
      row.boundary_trials += o.at_boundary;
      row.multimodal_trials += o.multimodal;
    }
    row.trials = estimates.size();
    row.failed = row.failed_trials * 100 > sc.trials;
    if (estimates.size() >= 2) {
      const double mean =
          std::accumulate(estimates.begin(), estimates.end(), 0.0) / estimates.size();
      double ss = 0.0;
      for (double e : estimates) ss += (e - mean) * (e - mean);
      row.bias = mean - theta0;
      row.std = std::sqrt(ss / (estimates.size() - 1));
    }
    try {
      row.fisher = channel_fisher(*sc.model, theta0, channels[g], sc.quadrature).total;
      row.theo_std = theoretical_std(static_cast<double>(sc.n), row.fisher);
    } catch (const Error& e) {
      row.failed = true;
      if (row.error.empty()) row.error = e.what();
    }
  }
  return rows;
}

}  // namespace ldpf

#endif  // LDPF_ESTIMATE_HPP_
