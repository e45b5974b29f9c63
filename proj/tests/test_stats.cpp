// Copyright 2026 The gumbel-sampling Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gumbel/distributions.hpp"
#include "gumbel/rng.hpp"
#include "gumbel/stats.hpp"

namespace gumbel::stats {
namespace {

// Reference values below were computed with scipy.stats.chi2.sf and
// scipy.special.kolmogorov.

TEST(ChiSquareSurvival, ReferenceValues) {
  EXPECT_NEAR(chi_square_survival(4.0, 1), 0.04550026389635857, 1e-12);
  EXPECT_NEAR(chi_square_survival(10.0, 5), 0.07523524614651217, 1e-12);
  EXPECT_NEAR(chi_square_survival(250.0, 200), 0.009379131668826098, 1e-12);
  EXPECT_NEAR(chi_square_survival(0.5, 3), 0.9188914116546758, 1e-12);
  EXPECT_EQ(chi_square_survival(0.0, 4), 1.0);
}

TEST(KolmogorovSurvival, ReferenceValues) {
  const std::vector<std::pair<double, double>> ref{
      {0.3, 0.9999906941986655}, {0.5, 0.9639452436648751}, {1.0, 0.26999967167735456},
      {1.18, 0.1234538094297657}, {1.5, 0.022217962616525127}, {2.0, 0.0006709252557796953},
      {3.0, 3.045995948942526e-08}};
  for (const auto& [lambda, p] : ref) EXPECT_NEAR(kolmogorov_survival(lambda), p, 1e-8) << lambda;
  EXPECT_EQ(kolmogorov_survival(0.0), 1.0);
}

TEST(ChiSquare, ProportionalCountsGiveZero) {
  const std::vector<std::uint64_t> counts{50, 30, 20};
  const std::vector<double> probs{0.5, 0.3, 0.2};
  const auto r = chi_square_gof(counts, probs);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_EQ(r.dof, 2);
  EXPECT_TRUE(r.pass);
}

TEST(ChiSquare, HandArithmetic) {
  const std::vector<std::uint64_t> even{50, 50};
  const std::vector<std::uint64_t> skew{60, 40};
  const std::vector<double> half{0.5, 0.5};
  EXPECT_EQ(chi_square_gof(even, half).statistic, 0.0);
  const auto r = chi_square_gof(skew, half);
  EXPECT_NEAR(r.statistic, 4.0, 1e-12);
  EXPECT_NEAR(r.p_value, 0.04550026389635857, 1e-12);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(chi_square_gof(skew, half, 0.05).pass);
}

TEST(ChiSquare, MergesSparseBins) {
  // Expected counts 90, 6, 2, 2: the last two merge into one bin of 4, which
  // is still below 5, so it merges with the 6 as well.
  const std::vector<std::uint64_t> counts{90, 6, 2, 2};
  const std::vector<double> probs{0.9, 0.06, 0.02, 0.02};
  const auto r = chi_square_gof(counts, probs);
  EXPECT_EQ(r.dof, 1);
  EXPECT_EQ(r.statistic, 0.0);
}

TEST(ChiSquare, CountInImpossibleBinRejects) {
  const std::vector<std::uint64_t> counts{50, 1};
  const std::vector<double> probs{1.0, 0.0};
  const auto r = chi_square_gof(counts, probs);
  EXPECT_EQ(r.p_value, 0.0);
  EXPECT_FALSE(r.pass);
}

TEST(ChiSquare, Errors) {
  const std::vector<std::uint64_t> zero{0, 0};
  const std::vector<std::uint64_t> some{3, 4};
  const std::vector<double> half{0.5, 0.5};
  const std::vector<double> none{0.0, 0.0};
  const std::vector<double> three{0.2, 0.3, 0.5};
  EXPECT_THROW(chi_square_gof(zero, half), std::invalid_argument);
  EXPECT_THROW(chi_square_gof(some, none), std::invalid_argument);
  EXPECT_THROW(chi_square_gof(some, three), std::invalid_argument);
}

TEST(KsTwoSample, IdenticalSamples) {
  const std::vector<double> xs{0.3, -1.0, 2.5, 0.0};
  const auto r = ks_two_sample(xs, xs);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_TRUE(r.pass);
}

TEST(KsTwoSample, StatisticMatchesHandCount) {
  const std::vector<double> xs{1, 2, 3, 4};
  const std::vector<double> ys{2.5, 5, 6, 7, 8};
  EXPECT_NEAR(ks_two_sample(xs, ys).statistic, 0.8, 1e-15);
}

std::vector<double> gumbel_sample(std::size_t n, RngState& rng, double shift = 0.0) {
  std::vector<double> xs(n);
  for (double& x : xs) x = gumbel_icdf(draw_uniform(rng), {0.0, 1.0}) + shift;
  return xs;
}

TEST(KsTwoSample, DetectsShift) {
  RngState rng{1, 0, 0};
  const auto xs = gumbel_sample(10000, rng);
  std::vector<double> ys = xs;
  for (double& y : ys) y += 5.0;
  EXPECT_FALSE(ks_two_sample(xs, ys).pass);
}

TEST(KsTwoSample, CalibratedUnderNull) {
  int passes = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngState a{seed, 1, 0};
    RngState b{seed, 2, 0};
    passes += ks_two_sample(gumbel_sample(10000, a), gumbel_sample(10000, b)).pass;
  }
  EXPECT_GE(passes, 99);
}

TEST(KsTwoSample, EmptyInputIsAnError) {
  const std::vector<double> xs{1.0};
  const std::vector<double> empty;
  EXPECT_THROW(ks_two_sample(xs, empty), std::invalid_argument);
}

TEST(KsOneSample, StatisticMatchesHandCount) {
  const std::vector<double> xs{0.1, 0.4, 0.7};
  const auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  EXPECT_NEAR(ks_one_sample(xs, uniform).statistic, 0.3, 1e-15);
}

TEST(KsOneSample, SelfConsistentGumbel) {
  RngState rng{2, 0, 0};
  const auto xs = gumbel_sample(10000, rng);
  EXPECT_TRUE(ks_one_sample(xs, [](double x) { return gumbel_cdf(x, {0.0, 1.0}); }).pass);
}

TEST(KsOneSample, ConstantSampleRejected) {
  const std::vector<double> xs(1000, 0.5);
  EXPECT_FALSE(ks_one_sample(xs, [](double x) { return gumbel_cdf(x, {0.0, 1.0}); }).pass);
}

TEST(Calibration, ChiSquareRejectionRateUnderNull) {
  const std::vector<double> probs{0.4, 0.3, 0.2, 0.1};
  int rejections = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RngState rng{seed, 7, 0};
    std::vector<std::uint64_t> counts(4, 0);
    for (int i = 0; i < 2000; ++i) {
      const double u = draw_uniform(rng);
      ++counts[u < 0.4 ? 0 : u < 0.7 ? 1 : u < 0.9 ? 2 : 3];
    }
    rejections += !chi_square_gof(counts, probs, 0.01).pass;
  }
  // Binomial(1000, 0.01): mean 10, sd about 3.1.
  EXPECT_LE(rejections, 20);
}

TEST(Calibration, KsRejectionRateUnderNull) {
  int rejections = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RngState rng{seed, 8, 0};
    const auto xs = gumbel_sample(500, rng);
    rejections += !ks_one_sample(xs, [](double x) { return gumbel_cdf(x, {0.0, 1.0}); }, 0.01).pass;
  }
  EXPECT_LE(rejections, 20);
}

TEST(MomentCheck, StandardGumbel) {
  RngState rng{3, 0, 0};
  const auto xs = gumbel_sample(100000, rng);
  const auto r = moment_check(xs, std::numbers::egamma, std::numbers::pi * std::numbers::pi / 6.0);
  EXPECT_TRUE(r.pass) << r.sample_mean << " " << r.sample_variance;
}

TEST(MomentCheck, ConstantSample) {
  const std::vector<double> xs(100, 2.5);
  EXPECT_TRUE(moment_check(xs, 2.5, 0.0).pass);
}

TEST(MomentCheck, WrongMeanFails) {
  RngState rng{4, 0, 0};
  const auto xs = gumbel_sample(100000, rng);
  EXPECT_FALSE(moment_check(xs, 1.0, std::numbers::pi * std::numbers::pi / 6.0).pass);
}

TEST(Helpers, HistogramFrequenciesEntropyDistance) {
  const std::vector<std::size_t> draws{0, 2, 2, 1, 2};
  const auto h = histogram(draws, 3);
  EXPECT_EQ(h, (std::vector<std::uint64_t>{1, 1, 3}));
  const auto f = frequencies(h);
  EXPECT_DOUBLE_EQ(f[2], 0.6);
  const std::vector<double> uniform{0.25, 0.25, 0.25, 0.25};
  const std::vector<double> point{1.0, 0.0, 0.0, 0.0};
  EXPECT_NEAR(entropy(uniform), std::log(4.0), 1e-15);
  EXPECT_EQ(entropy(point), 0.0);
  EXPECT_NEAR(l1_distance(uniform, point), 1.5, 1e-15);
}

}  // namespace
}  // namespace gumbel::stats
