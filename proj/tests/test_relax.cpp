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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gumbel/relax.hpp"
#include "gumbel/sampling.hpp"
#include "gumbel/stats.hpp"
#include "oracles.hpp"

namespace gumbel {
namespace {

CategoricalParams from_probs(const std::vector<double>& probs) {
  CategoricalParams c;
  for (double p : probs) c.logits.push_back(std::log(p));
  return c;
}

const std::vector<double> kThree{0.5, 0.3, 0.2};

void expect_simplex(const std::vector<double>& w) {
  double total = 0.0;
  for (double x : w) {
    ASSERT_GE(x, 0.0);
    total += x;
  }
  ASSERT_NEAR(total, 1.0, 1e-12);
}

TEST(GumbelSoftmax, SymmetricInputIsUniform) {
  const std::vector<double> noise(4, 0.37);
  const auto s = gs_from_noise({{{1.0, 1.0, 1.0, 1.0}, 1.0}, 0.7}, noise);
  for (double w : s.weights) EXPECT_NEAR(w, 0.25, 1e-15);
  EXPECT_EQ(s.noise, noise);
  EXPECT_EQ(s.lambda, 0.7);
}

TEST(GumbelSoftmax, MatchesDirectFormula) {
  const std::vector<double> logits{0.2, -0.4, 1.1};
  const std::vector<double> noise{0.5, -0.3, 0.05};
  const double lambda = 0.8;
  std::vector<double> z(3);
  for (std::size_t i = 0; i < 3; ++i) z[i] = logits[i] + noise[i];
  const auto expected = testing::naive_softmax(z, lambda);
  const auto s = gs_from_noise({{logits, 1.0}, lambda}, noise);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(s.weights[i], expected[i], 1e-15);
}

TEST(GumbelSoftmax, SimplexAcrossLambdas) {
  RngState rng{1, 0, 0};
  const auto c = from_probs(kThree);
  for (double lambda : {1e-3, 0.01, 0.1, 1.0, 10.0}) {
    for (int i = 0; i < 500; ++i) expect_simplex(gs_sample({c, lambda}, rng).weights);
  }
}

TEST(GumbelSoftmax, SmallLambdaDoesNotOverflow) {
  const std::vector<double> noise{300.0, -5.0, 1.0};
  const auto s = gs_from_noise({{{0.0, 0.0, 0.0}, 1.0}, 1e-3}, noise);
  expect_simplex(s.weights);
  EXPECT_EQ(s.weights[0], 1.0);
}

TEST(GumbelSoftmax, NearZeroLambdaIsHard) {
  RngState rng{2, 0, 0};
  const auto c = from_probs(kThree);
  for (int i = 0; i < 1000; ++i) {
    const auto noise = standard_gumbel_noise(3, rng);
    const auto s = gs_from_noise({c, 1e-6}, noise);
    ASSERT_EQ(s.argmax(), gumbel_max(perturb_with_noise(c, noise)).index);
    ASSERT_GE(*std::max_element(s.weights.begin(), s.weights.end()), 1.0 - 1e-6);
  }
}

TEST(GumbelSoftmax, OrderPreservedForEveryLambda) {
  RngState rng{3, 0, 0};
  const CategoricalParams c{{0.3, -1.0, 0.9, 0.1, 0.0}, 1.0};
  for (int i = 0; i < 2000; ++i) {
    const auto noise = standard_gumbel_noise(5, rng);
    const auto index = gumbel_max(perturb_with_noise(c, noise)).index;
    for (double lambda : {0.01, 0.1, 1.0, 10.0, 100.0}) {
      ASSERT_EQ(gs_from_noise({c, lambda}, noise).argmax(), index);
    }
  }
}

TEST(GumbelSoftmax, ScaleInvariance) {
  RngState rng{4, 0, 0};
  const CategoricalParams c{{0.3, -1.0, 0.9}, 1.0};
  CategoricalParams scaled = c;
  for (double& a : scaled.logits) a += std::log(42.0);
  for (int i = 0; i < 200; ++i) {
    const auto noise = standard_gumbel_noise(3, rng);
    const auto a = gs_from_noise({c, 0.5}, noise);
    const auto b = gs_from_noise({scaled, 0.5}, noise);
    for (std::size_t j = 0; j < 3; ++j) ASSERT_NEAR(a.weights[j], b.weights[j], 1e-14);
  }
}

TEST(GumbelSoftmax, MeanWeightsApproachProbabilitiesAtSmallLambda) {
  RngState rng{5, 0, 0};
  const auto c = from_probs(kThree);
  std::vector<double> mean(3, 0.0);
  constexpr int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto s = gs_sample({c, 0.01}, rng);
    for (std::size_t j = 0; j < 3; ++j) mean[j] += s.weights[j] / n;
  }
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(mean[j], kThree[j], 0.01);
}

TEST(GumbelSoftmax, HardeningAsLambdaShrinks) {
  RngState rng{6, 0, 0};
  const auto c = from_probs(kThree);
  double previous = 0.0;
  for (double lambda : {1.0, 0.1, 0.01}) {
    double mean_max = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const auto w = gs_sample({c, lambda}, rng).weights;
      mean_max += *std::max_element(w.begin(), w.end()) / 20000.0;
    }
    EXPECT_GT(mean_max, previous) << lambda;
    previous = mean_max;
  }
}

TEST(GumbelSoftmax, InvalidLambda) {
  RngState rng{7, 0, 0};
  const auto c = from_probs(kThree);
  EXPECT_THROW(gs_sample({c, 0.0}, rng), std::domain_error);
  EXPECT_THROW(gs_sample({c, -1.0}, rng), std::domain_error);
}

TEST(StraightThrough, HardIsOneHotAtSoftArgmax) {
  RngState rng{8, 0, 0};
  const auto c = from_probs(kThree);
  for (int i = 0; i < 1000; ++i) {
    const auto st = st_gs_sample({c, 0.7}, rng);
    ASSERT_EQ(std::accumulate(st.hard.begin(), st.hard.end(), 0.0), 1.0);
    ASSERT_EQ(st.hard[st.index], 1.0);
    ASSERT_EQ(st.index, st.soft.argmax());
  }
}

TEST(StraightThrough, HardLawIsCategoricalForAnyLambda) {
  const auto c = from_probs(kThree);
  for (double lambda : {0.1, 1.0, 5.0}) {
    RngState rng{9, static_cast<std::uint64_t>(lambda * 10), 0};
    std::vector<std::uint64_t> counts(3, 0);
    for (int i = 0; i < 100000; ++i) ++counts[st_gs_sample({c, lambda}, rng).index];
    EXPECT_TRUE(stats::chi_square_gof(counts, kThree).pass) << lambda;
  }
}

TEST(StraightThrough, BinaryCaseIsSigmoid) {
  RngState rng{10, 0, 0};
  const CategoricalParams c{{0.4, -0.9}, 1.0};
  for (int i = 0; i < 1000; ++i) {
    const double lambda = 0.05 + 2.0 * draw_uniform(rng);
    const auto noise = standard_gumbel_noise(2, rng);
    const auto s = gs_from_noise({c, lambda}, noise);
    const double x = (c.logits[0] - c.logits[1] + noise[0] - noise[1]) / lambda;
    ASSERT_NEAR(s.weights[0], 1.0 / (1.0 + std::exp(-x)), 1e-12);
  }
}

TEST(EffectiveTemperature, Arithmetic) {
  EXPECT_EQ(effective_gs_temperature(1.0, 0.3), 0.3);
  EXPECT_EQ(effective_gs_temperature(2.0, 0.5), 0.25);
  EXPECT_THROW(effective_gs_temperature(0.0, 0.5), std::invalid_argument);
  EXPECT_THROW(effective_gs_temperature(1.0, -0.5), std::invalid_argument);
}

// Relaxing Cat(a, T) through noise scaled by T on the raw logits equals a
// Gumbel-Softmax on a / T at lambda / T with the same standard noise.
TEST(EffectiveTemperature, SharedNoiseIdentity) {
  RngState rng{11, 0, 0};
  for (int i = 0; i < 2000; ++i) {
    const std::vector<double> a{4.0 * draw_uniform(rng) - 2.0, 4.0 * draw_uniform(rng) - 2.0,
                                4.0 * draw_uniform(rng) - 2.0};
    const double t = 0.25 + 3.0 * draw_uniform(rng);
    const double lambda = 0.05 + 2.0 * draw_uniform(rng);
    const auto g = standard_gumbel_noise(3, rng);
    const auto lhs = relaxed_scaled_gumbel_max(a, t, lambda, g);
    const auto rhs = gs_from_noise({{a, t}, effective_gs_temperature(t, lambda)}, g);
    for (std::size_t j = 0; j < 3; ++j) ASSERT_NEAR(lhs[j], rhs.weights[j], 1e-12);
  }
}

TEST(LogConvexity, Bound) {
  EXPECT_EQ(log_convexity_bound(2), 1.0);
  EXPECT_EQ(log_convexity_bound(5), 0.25);
  EXPECT_EQ(log_convexity_bound(11), 0.1);
  EXPECT_THROW(log_convexity_bound(1), std::invalid_argument);
}

}  // namespace
}  // namespace gumbel
