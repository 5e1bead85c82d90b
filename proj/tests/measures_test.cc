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

#include "ldpf/measures.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"

namespace ldpf {
namespace {

IntervalSet random_union(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 4);
  std::normal_distribution<double> point(0.0, 2.0);
  std::bernoulli_distribution coin(0.5);
  const int k = count(rng);
  std::vector<double> ends;
  for (int i = 0; i < 2 * k; ++i) ends.push_back(point(rng));
  std::sort(ends.begin(), ends.end());
  if (k > 0 && coin(rng)) ends.front() = -kInf;
  if (k > 0 && coin(rng)) ends.back() = kInf;
  std::vector<Interval> out;
  for (int i = 0; i < k; ++i) {
    out.push_back({ends[2 * i], ends[2 * i + 1], coin(rng), coin(rng)});
  }
  return IntervalSet(out);
}

FiniteMeasureOnE random_measure(std::mt19937_64& rng, double alpha) {
  std::uniform_int_distribution<int> atoms(1, 5);
  std::uniform_real_distribution<double> weight(0.01, 3.0);
  FiniteMeasureOnE mu(alpha);
  const int n = atoms(rng);
  for (int i = 0; i < n; ++i) mu.add(weight(rng), StepFunction(random_union(rng), alpha));
  return mu;
}

TEST(IntervalSetTest, CanonicalForm) {
  const IntervalSet s({Interval::closed(2.0, 3.0), Interval::open(0.0, 1.0),
                       Interval::right_open(1.0, 2.0), Interval::closed(5.0, 4.0)});
  ASSERT_EQ(s.intervals().size(), 1u);
  EXPECT_EQ(s.intervals()[0], Interval::left_open(0.0, 3.0));
  // Open ends that touch leave a gap point.
  const IntervalSet gap({Interval::open(0.0, 1.0), Interval::open(1.0, 2.0)});
  EXPECT_EQ(gap.intervals().size(), 2u);
  EXPECT_FALSE(gap.contains(1.0));
  const IntervalSet inf({Interval::closed(-kInf, 0.0)});
  EXPECT_FALSE(inf.intervals()[0].lo_closed);
}

TEST(StepFunctionTest, EvaluateExamples) {
  const double alpha = 0.8;
  const StepFunction none(IntervalSet{}, alpha);
  const StepFunction all(IntervalSet::everything(), alpha);
  const StepFunction upper = upper_half_line(alpha);
  for (double x : {-3.0, 0.0, 2.5}) {
    EXPECT_EQ(evaluate(none, x), 1.0);
    EXPECT_EQ(evaluate(all, x), std::exp(alpha));
  }
  EXPECT_EQ(evaluate(upper, -1.0), 1.0);
  EXPECT_EQ(evaluate(upper, 1.0), std::exp(alpha));
  EXPECT_EQ(evaluate(upper, 0.0), 1.0);
}

TEST(StepFunctionTest, SwapExamples) {
  const StepFunction t = apply_T(upper_half_line(1.0));
  EXPECT_EQ(t.fplus(), IntervalSet({Interval::left_open(-kInf, 0.0)}));
  const StepFunction mid(IntervalSet({Interval::open(-1.0, 1.0)}), 1.0);
  EXPECT_EQ(apply_T(mid).fplus(),
            IntervalSet({Interval::left_open(-kInf, -1.0), Interval::right_open(1.0, kInf)}));
  std::ostringstream text;
  text << apply_T(mid).fplus();
  EXPECT_EQ(text.str(), "(-inf, -1] u [1, inf)");
}

TEST(StepFunctionTest, SwapIsInvolutionAndComplementsValues) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const StepFunction r(random_union(rng), 1.3);
    EXPECT_EQ(apply_T(apply_T(r)), r);
    for (double x : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
      EXPECT_DOUBLE_EQ(evaluate(apply_T(r), x), std::exp(1.3) + 1.0 - evaluate(r, x));
    }
  }
}

TEST(SymmetrizeTest, DiracExample) {
  const double alpha = 1.7;
  const StepFunction r = upper_half_line(alpha);
  const FiniteMeasureOnE s = symmetrize(FiniteMeasureOnE::dirac(r));
  ASSERT_EQ(s.atoms().size(), 2u);
  for (const Atom& a : s.atoms()) EXPECT_DOUBLE_EQ(a.weight, 1.0 / (std::exp(alpha) + 1.0));
  EXPECT_TRUE(approx_equal(s, two_point_measure(r)));
  EXPECT_THROW(symmetrize(FiniteMeasureOnE(alpha)), DegenerateError);
  EXPECT_THROW(symmetrize(FiniteMeasureOnE::dirac(r, 0.0)), DegenerateError);
}

TEST(SymmetrizeTest, NormalizedSymmetricAndIdempotent) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> alpha_draw(0.01, 5.0);
  for (int k = 0; k < 1000; ++k) {
    const double alpha = alpha_draw(rng);
    const FiniteMeasureOnE s = symmetrize(random_measure(rng, alpha));
    const NormalizationCheck check = check_normalized(s);
    EXPECT_TRUE(check.ok) << check.max_deviation;
    EXPECT_TRUE(approx_equal(s, pushforward_T(s), 1e-15));
    EXPECT_NEAR(s.total_mass(), 2.0 / (std::exp(alpha) + 1.0), 1e-14);
    EXPECT_TRUE(approx_equal(symmetrize(s), s, 1e-14));
    EXPECT_GE(s.total_mass(), std::exp(-alpha) - 1e-15);
    EXPECT_LE(s.total_mass(), 1.0 + 1e-15);
  }
}

TEST(NormalizationTest, Witnesses) {
  const double alpha = 0.9;
  const StepFunction r(IntervalSet({Interval::open(-1.0, 2.0)}), alpha);
  const NormalizationCheck bad = check_normalized(FiniteMeasureOnE::dirac(r));
  EXPECT_FALSE(bad.ok);
  EXPECT_TRUE(r.fplus().contains(bad.witness_x));
  EXPECT_DOUBLE_EQ(bad.value, std::exp(alpha));
  EXPECT_TRUE(check_normalized(two_point_measure(r)).ok);
  // e^{-alpha} delta_R is normalized.
  EXPECT_TRUE(
      check_normalized(
          FiniteMeasureOnE::dirac(StepFunction(IntervalSet::everything(), alpha), std::exp(-alpha)))
          .ok);
  // Exact complements are normalized; overlapping at one endpoint is not.
  const double w = 1.0 / (1.0 + std::exp(alpha));
  FiniteMeasureOnE good(alpha);
  good.add(w, StepFunction(IntervalSet({Interval::closed(0.0, 1.0)}), alpha));
  good.add(
      w, StepFunction(IntervalSet({Interval::open(-kInf, 0.0), Interval::open(1.0, kInf)}), alpha));
  EXPECT_TRUE(check_normalized(good).ok);
  FiniteMeasureOnE mu(alpha);
  mu.add(w, StepFunction(IntervalSet({Interval::closed(0.0, 1.0)}), alpha));
  mu.add(w, StepFunction(IntervalSet({Interval::open(-kInf, 0.0), Interval::closed(1.0, kInf)}),
                         alpha));
  const NormalizationCheck point = check_normalized(mu);
  EXPECT_FALSE(point.ok);
  EXPECT_EQ(point.witness_x, 1.0);
}

TEST(AsymmetricPartTest, Examples) {
  std::mt19937_64 rng(23);
  const double alpha = 1.1;
  const FiniteMeasureOnE s = symmetrize(random_measure(rng, alpha));
  const FiniteMeasureOnE zero = asymmetric_part(s);
  for (const Atom& a : zero.atoms()) EXPECT_NEAR(a.weight, 0.0, 1e-15);

  // Mixing with delta_{empty set} stays normalized but breaks symmetry.
  FiniteMeasureOnE mu(alpha);
  for (const Atom& a : s.atoms()) mu.add(0.6 * a.weight, a.r);
  mu.add(0.4, StepFunction(IntervalSet{}, alpha));
  ASSERT_TRUE(check_normalized(mu).ok);
  const FiniteMeasureOnE as = asymmetric_part(mu);
  double largest = 0.0;
  for (const Atom& a : as.atoms()) largest = std::max(largest, std::fabs(a.weight));
  EXPECT_GT(largest, 0.1);
  EXPECT_TRUE(as.is_signed());

  // An antisymmetric function integrates to the negation under T.
  auto f = [](const StepFunction& r) { return evaluate(r, 0.3) - evaluate(apply_T(r), 0.3); };
  EXPECT_NEAR(pushforward_T(as).integrate(f), -as.integrate(f), 1e-14);
  EXPECT_THROW(symmetrize(as), ConfigError);
}

TEST(PushforwardTest, ChangeOfVariables) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 200; ++k) {
    const FiniteMeasureOnE mu = random_measure(rng, 0.7);
    auto f = [](const StepFunction& r) {
      return 3.0 * evaluate(r, -0.4) + evaluate(r, 1.2) * evaluate(r, 2.0) +
             static_cast<double>(r.fplus().intervals().size());
    };
    auto f_of_t = [&](const StepFunction& r) { return f(apply_T(r)); };
    EXPECT_DOUBLE_EQ(pushforward_T(mu).integrate(f), mu.integrate(f_of_t));
  }
}

TEST(MeasureTest, RejectsMixedAlphaAndNegativeWeights) {
  FiniteMeasureOnE mu(1.0);
  EXPECT_THROW(mu.add(1.0, upper_half_line(2.0)), ConfigError);
  EXPECT_THROW(mu.add(-1.0, upper_half_line(1.0)), ConfigError);
  EXPECT_THROW(StepFunction(IntervalSet{}, -0.1), ConfigError);
  mu.add(0.5, upper_half_line(1.0));
  mu.add(0.25, upper_half_line(1.0));
  ASSERT_EQ(mu.atoms().size(), 1u);
  EXPECT_DOUBLE_EQ(mu.total_mass(), 0.75);
}

}  // namespace
}  // namespace ldpf
