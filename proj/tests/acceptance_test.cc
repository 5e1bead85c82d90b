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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// if any selected criterion fails.
//
//   acceptance_test                 all criteria
//   acceptance_test --criterion N   criterion N only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ldpf/estimate.hpp"
#include "ldpf/fisher.hpp"
#include "ldpf/measures.hpp"
#include "ldpf/mechanism.hpp"
#include "ldpf/models.hpp"
#include "ldpf/staircase.hpp"

namespace ldpf {
namespace {

// Pinned targets and tolerances.
constexpr double kTwoPointStdTarget = 0.162;
constexpr double kTwoPointStdTol = 0.001;
constexpr double kSweepStdTarget = 3.67e-2;
constexpr double kSweepStdRelTol = 0.02;
constexpr double kSweepArgminLo = 0.125;
constexpr double kSweepArgminHi = 0.275;
constexpr double kBenchmarkStd = 3.162e-2;
constexpr double kBenchmarkHalfUlp = 0.5e-5;  // four significant digits
constexpr double kWideBudgetFloor = 0.95;
constexpr double kDecompositionRelTol = 1e-8;
constexpr double kMinResidualOrder = 1.0;
constexpr double kMassTol = 1e-10;
constexpr double kNormalizationTol = 1e-9;
constexpr double kLdpSlack = 1e-12;
constexpr double kMonteCarloStdRelTol = 0.05;
constexpr double kBiasSigmas = 3.0;
constexpr double kBinomialRelTol = 0.01;
constexpr double kTwoPointFisherSpec = 0.038178;
constexpr std::uint64_t kSeed = 20260415;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string num(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

Channel gaussian_staircase(double alpha, double c) {
  return Channel::asymmetric_staircase(alpha,
                                       BoundaryFamily::full_line(BaseMeasure::gaussian(), c));
}

double two_point_fisher(double alpha) {
  const double a = std::expm1(alpha);
  const double e1 = std::exp(alpha) + 1.0;
  return 2.0 * a * a / (std::numbers::pi * e1 * e1);
}

Verdict criterion_1() {
  const GaussianLocation model;
  const double closed = two_point_fisher(0.5);
  const double lib = fisher_finite(model, 0.0, two_point_measure(upper_half_line(0.5))).total;
  const double s = theoretical_std(1000, lib);
  const bool pass =
      std::fabs(s - kTwoPointStdTarget) <= kTwoPointStdTol && std::fabs(lib - closed) <= 1e-14;
  return {pass, "std " + num(s) + " (I library " + num(lib, 10) + ", closed form " +
                    num(closed, 10) + "), target " + num(kTwoPointStdTarget) + " +- " +
                    num(kTwoPointStdTol)};
}

Verdict criterion_2() {
  const GaussianLocation model;
  double best = kInf;
  double best_c = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double c = 0.025 * k;
    const double s =
        theoretical_std(1000, fisher_channel(model, 0.0, gaussian_staircase(4.0, c)).total);
    if (s < best) {
      best = s;
      best_c = c;
    }
  }
  const bool pass = std::fabs(best - kSweepStdTarget) <= kSweepStdRelTol * kSweepStdTarget &&
                    best_c >= kSweepArgminLo && best_c <= kSweepArgminHi;
  return {pass, "min std " + num(best) + " at c=" + num(best_c) + ", target " +
                    num(kSweepStdTarget) + " +- 2%, argmin in [0.125, 0.275]"};
}

Verdict criterion_3() {
  const double s = theoretical_std(1000, 1.0);
  return {std::fabs(s - kBenchmarkStd) < kBenchmarkHalfUlp, "std " + num(s, 10)};
}

Verdict criterion_4() {
  const GaussianLocation model;
  const double cs[] = {1e-2, 1e-3, 1e-4};
  const double alphas[] = {9.2, 13.8, 18.4};
  std::vector<double> totals;
  for (int i = 0; i < 3; ++i) {
    totals.push_back(fisher_channel(model, 0.0, gaussian_staircase(alphas[i], cs[i])).total);
  }
  const bool pass = totals[1] >= kWideBudgetFloor && totals[0] < totals[1] &&
                    totals[1] < totals[2] && totals[2] <= 1.0 + 1e-9;
  return {pass, "I = " + num(totals[0], 8) + ", " + num(totals[1], 8) + ", " + num(totals[2], 8) +
                    " along (c, alpha) = (1e-2, 9.2), (1e-3, 13.8), (1e-4, 18.4)"};
}

// Random union of up to three intervals.
IntervalSet random_set(std::mt19937_64& rng) {
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
  for (int i = 0; i < k; ++i) out.push_back(Interval::open(ends[2 * i], ends[2 * i + 1]));
  return IntervalSet(out);
}

// Normalized finite measures: even draws are symmetrizations of random
// positive measures, odd draws mix one with delta_{empty set}, which keeps the
// measure normalized but not T-invariant.
FiniteMeasureOnE random_normalized(std::mt19937_64& rng, double alpha, bool symmetric) {
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  FiniteMeasureOnE raw(alpha);
  for (int i = 0; i < 3; ++i) raw.add(weight(rng), StepFunction(random_set(rng), alpha));
  const FiniteMeasureOnE sym = symmetrize(raw);
  if (symmetric) return sym;
  const double l = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
  FiniteMeasureOnE mu(alpha);
  for (const Atom& a : sym.atoms()) mu.add((1.0 - l) * a.weight, a.r);
  mu.add(l, StepFunction(IntervalSet{}, alpha));
  return mu;
}

Verdict criterion_5() {
  const GaussianLocation model;
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> alpha_draw(0.05, 5.0);
  int failures = 0;
  int sym_failures = 0;
  int checked = 0;
  double worst = 0.0;
  double worst_split = 0.0;
  auto record = [&](const FisherReport& rep, bool symmetric) {
    ++checked;
    const double rel = std::fabs(rep.decomposition_residual()) / rep.total;
    worst = std::max(worst, rel);
    worst_split = std::max(worst_split, std::fabs(rep.split_residual()) / rep.total);
    if (rel > kDecompositionRelTol) {
      ++failures;
      sym_failures += symmetric;
    }
  };
  for (int k = 0; k < 100; ++k) {
    const bool symmetric = k % 2 == 0;
    record(fisher_finite(model, 0.0, random_normalized(rng, alpha_draw(rng), symmetric)),
           symmetric);
  }
  const double alphas[] = {0.5, 1.0, 2.0, 4.0};
  const double cs[] = {0.05, 0.2, 0.35, 0.5};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      record(fisher_channel(model, 0.0, gaussian_staircase(alphas[i], cs[j])), false);
    }
  }
  for (double alpha : {0.5, 2.0}) {
    for (double c : {0.3, 0.999}) {
      record(fisher_channel(model, 0.0,
                            Channel::binomial_approx(alpha, BoundaryFamily::folded_normal_pair(c))),
             false);
    }
  }
  return {failures == 0, std::to_string(failures) + " of " + std::to_string(checked) +
                             " cases exceed 1e-8 relative (" + std::to_string(sym_failures) +
                             " symmetric); worst relative residual " + num(worst, 4) +
                             "; symmetric/asymmetric split worst residual " + num(worst_split, 3)};
}

Verdict criterion_6() {
  const GaussianLocation model;
  const SmallAlphaScaling s = small_alpha_scaling(
      model, 0.0, [](double alpha) { return two_point_measure(upper_half_line(alpha)); });
  const bool pass = std::isfinite(s.fitted_slope) && s.residual_order >= kMinResidualOrder;
  return {pass, "C=" + num(s.fitted_slope, 4) + ", residual order " + num(s.residual_order, 4) +
                    ", I/alpha^2 at 1e-4 = " + num(s.leading_constant, 10) +
                    " (1/(2 pi) = " + num(1.0 / (2.0 * std::numbers::pi), 10) + ")"};
}

Verdict criterion_7() {
  std::mt19937_64 rng(kSeed + 7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> x_draw(0.0, 3.0);
  double worst_mass = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double c = 1e-3 + (0.5 - 1e-3) * unit(rng);
    const BaseMeasure nu =
        k % 2 == 0 ? BaseMeasure::gaussian() : BaseMeasure::cauchy(0.0, 1.0 + 3.0 * unit(rng));
    const BoundaryFamily fam = BoundaryFamily::full_line(nu, c);
    const PrivatizationInterval iv = privatization_interval(fam, x_draw(rng));
    worst_mass = std::max(worst_mass, std::fabs(nu.cdf(iv.hi) - nu.cdf(iv.lo) - c));
  }
  double worst_norm = 0.0;
  const std::vector<Channel> channels = {
      gaussian_staircase(0.5, 0.5), gaussian_staircase(4.0, 0.2), gaussian_staircase(8.0, 0.01),
      Channel::binomial_approx(1.0, BoundaryFamily::folded_normal_pair(0.6))};
  for (int k = 0; k < 100; ++k) {
    const Channel& ch = channels[k % channels.size()];
    worst_norm = std::max(worst_norm, std::fabs(channel_total_mass(ch, x_draw(rng)) - 1.0));
  }
  double worst_ratio = 0.0;
  bool ldp_ok = true;
  for (const Channel& ch : channels) {
    const LdpReport rep = ldp_ratio_check(ch, 100, 100, kLdpSlack);
    ldp_ok = ldp_ok && rep.ok;
    worst_ratio = std::max(worst_ratio, rep.max_ratio / rep.bound);
  }
  const bool pass = worst_mass <= kMassTol && worst_norm <= kNormalizationTol && ldp_ok;
  return {pass, "mass-c worst " + num(worst_mass, 3) + ", normalization worst " +
                    num(worst_norm, 3) + ", max ratio / e^alpha " + num(worst_ratio, 16)};
}

std::vector<MonteCarloRow> high_privacy_run(const std::vector<double>& cs) {
  MonteCarloScenario sc;
  sc.model = std::make_shared<GaussianLocation>();
  sc.channel = [](double alpha, double c) { return gaussian_staircase(alpha, c); };
  sc.alphas = {0.5};
  sc.cs = cs;
  sc.n = 1000;
  sc.trials = 2000;
  sc.seed = kSeed;
  if (const char* env = std::getenv("LDPF_THREADS")) sc.threads = std::atoi(env);
  return monte_carlo(sc);
}

Verdict criterion_8() {
  const MonteCarloRow r = high_privacy_run({0.5}).front();
  const double bias_bound = kBiasSigmas * r.std / std::sqrt(static_cast<double>(r.trials));
  const bool pass = !r.failed &&
                    std::fabs(r.std - r.theo_std) <= kMonteCarloStdRelTol * r.theo_std &&
                    std::fabs(r.bias) <= bias_bound;
  return {pass, "std " + num(r.std) + " vs theoretical " + num(r.theo_std) + " (" +
                    num(100 * (r.std / r.theo_std - 1), 3) + "%), bias " + num(r.bias, 3) +
                    " vs bound " + num(bias_bound, 3)};
}

Verdict criterion_9() {
  const std::vector<MonteCarloRow> rows = high_privacy_run({0.1, 0.25, 0.5});
  const bool pass = rows[2].std <= rows[0].std && rows[2].std <= rows[1].std;
  return {pass, "std at c = 0.1, 0.25, 0.5: " + num(rows[0].std) + ", " + num(rows[1].std) + ", " +
                    num(rows[2].std)};
}

Verdict criterion_10() {
  const GaussianLocation model;
  const double bin =
      fisher_channel(model, 0.0,
                     Channel::binomial_approx(0.5, BoundaryFamily::folded_normal_pair(0.999)))
          .total;
  const double ref = two_point_fisher(0.5);
  const bool pass = std::fabs(bin - ref) <= kBinomialRelTol * ref &&
                    std::fabs(bin - kTwoPointFisherSpec) <= kBinomialRelTol * kTwoPointFisherSpec;
  return {pass, "I " + num(bin, 8) + " vs two-point " + num(ref, 8) + " (" +
                    num(100 * (bin / ref - 1), 3) + "%)"};
}

}  // namespace
}  // namespace ldpf

int main(int argc, char** argv) {
  using Criterion = std::function<ldpf::Verdict()>;
  const std::vector<std::pair<const char*, Criterion>> criteria = {
      {"two-point theoretical std at alpha=0.5", ldpf::criterion_1},
      {"alpha=4 staircase sweep minimum", ldpf::criterion_2},
      {"non-private benchmark std", ldpf::criterion_3},
      {"small c, large c e^alpha limit", ldpf::criterion_4},
      {"three-term decomposition identity", ldpf::criterion_5},
      {"small-alpha scaling", ldpf::criterion_6},
      {"interval mass, normalization and ratio invariants", ldpf::criterion_7},
      {"Monte Carlo agreement at alpha=0.5, c=0.5", ldpf::criterion_8},
      {"high-privacy ordering in c", ldpf::criterion_9},
      {"binomial approximation convergence", ldpf::criterion_10},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "criterion must be in 1..%zu\n", criteria.size());
    return 2;
  }
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only != 0 && static_cast<int>(k) + 1 != only) continue;
    const auto start = std::chrono::steady_clock::now();
    ldpf::Verdict v{false, ""};
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu %s  %s: %s [%.2fs]\n", k + 1, v.pass ? "PASS" : "FAIL",
                criteria[k].first, v.detail.c_str(), secs);
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
