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
#include <vector>

#include "gumbel/rng.hpp"
#include "gumbel/stats.hpp"

namespace gumbel {
namespace {

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswerVectors) {
  using Block = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}),
            (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                       {0xffffffff, 0xffffffff}),
            (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                       {0xa4093822, 0x299f31d0}),
            (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Rng, SameSeedAndStreamReproduce) {
  RngState a{42, 0, 0};
  RngState b{42, 0, 0};
  for (int i = 0; i < 100; ++i) EXPECT_EQ(draw_uniform(a), draw_uniform(b));
  EXPECT_EQ(a, b);
}

TEST(Rng, NextUniformIsPure) {
  const RngState s{7, 3, 11};
  const auto first = next_uniform(s);
  const auto again = next_uniform(s);
  EXPECT_EQ(first.u, again.u);
  EXPECT_EQ(first.next.counter, s.counter + 1);
  EXPECT_EQ(first.next.seed, s.seed);
  EXPECT_EQ(first.next.stream_id, s.stream_id);

  RngState in_place = s;
  EXPECT_EQ(draw_uniform(in_place), first.u);
  EXPECT_EQ(in_place, first.next);
}

TEST(Rng, OpenIntervalEndpoints) {
  EXPECT_GT(bits_to_open_unit(0), 0.0);
  EXPECT_LT(bits_to_open_unit(~std::uint64_t{0}), 1.0);
  EXPECT_EQ(bits_to_open_unit(0), std::ldexp(1.0, -53));
  EXPECT_EQ(bits_to_open_unit(~std::uint64_t{0}), 1.0 - std::ldexp(1.0, -53));
}

TEST(Rng, EveryDrawStrictlyInsideUnitInterval) {
  RngState s{123, 9, 0};
  for (int i = 0; i < 200000; ++i) {
    const double u = draw_uniform(s);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, MeanOfHundredThousandDraws) {
  RngState s{42, 0, 0};
  double sum = 0.0;
  constexpr int n = 100000;
  for (int i = 0; i < n; ++i) sum += draw_uniform(s);
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(Rng, UniformHistogramPassesChiSquare) {
  RngState s{5, 0, 0};
  std::vector<std::uint64_t> counts(50, 0);
  for (int i = 0; i < 100000; ++i) ++counts[static_cast<std::size_t>(draw_uniform(s) * 50)];
  const std::vector<double> probs(50, 1.0 / 50);
  EXPECT_TRUE(stats::chi_square_gof(counts, probs).pass);
}

TEST(Rng, ForkIsDeterministicAndLeavesParentAlone) {
  RngState parent{99, 0, 17};
  const RngState before = parent;
  RngState a = fork_stream(parent, 1);
  RngState b = fork_stream(parent, 1);
  EXPECT_EQ(parent, before);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(draw_uniform(a), draw_uniform(b));
  EXPECT_THROW((void)fork_stream(parent, 0), std::invalid_argument);
}

TEST(Rng, ForkedStreamsAreIndependent) {
  const RngState parent{2024, 0, 0};
  RngState a = fork_stream(parent, 1);
  RngState b = fork_stream(parent, 2);
  // Joint 10x10 histogram of paired draws against the product of uniforms.
  std::vector<std::uint64_t> counts(100, 0);
  for (int i = 0; i < 100000; ++i) {
    const auto x = static_cast<std::size_t>(draw_uniform(a) * 10);
    const auto y = static_cast<std::size_t>(draw_uniform(b) * 10);
    ++counts[10 * x + y];
  }
  const std::vector<double> probs(100, 0.01);
  EXPECT_TRUE(stats::chi_square_gof(counts, probs).pass);
}

TEST(Rng, DifferentSeedsDiffer) {
  RngState a{1, 0, 0};
  RngState b{2, 0, 0};
  int equal = 0;
  for (int i = 0; i < 1000; ++i) equal += draw_uniform(a) == draw_uniform(b);
  EXPECT_EQ(equal, 0);
}

}  // namespace
}  // namespace gumbel
