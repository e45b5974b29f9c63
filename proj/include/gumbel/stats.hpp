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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace gumbel::stats {

inline constexpr double kDefaultAlpha = 0.001;

struct GofResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int dof = 0;
  bool pass = true;  // p_value > alpha
};

/// Upper tail of the chi-square distribution.
double chi_square_survival(double statistic, int dof);

/// Kolmogorov limiting distribution, P[K > lambda].
double kolmogorov_survival(double lambda);

/// Pearson goodness of fit. Bins with expected count below 5 are merged
/// with their neighbours in index order; zero-probability bins must be empty
/// (a count there yields p = 0). Throws std::invalid_argument if the counts
/// are all zero, the lengths differ, or no bin has positive probability.
GofResult chi_square_gof(std::span<const std::uint64_t> counts,
                         std::span<const double> expected_probs,
                         double alpha = kDefaultAlpha);

/// Two-sample Kolmogorov-Smirnov with the asymptotic p-value at effective
/// size nm/(n+m). Throws std::invalid_argument on an empty sample.
GofResult ks_two_sample(std::span<const double> xs, std::span<const double> ys,
                        double alpha = kDefaultAlpha);

/// One-sample Kolmogorov-Smirnov against a continuous CDF.
GofResult ks_one_sample(std::span<const double> xs,
                        const std::function<double(double)>& cdf,
                        double alpha = kDefaultAlpha);

struct MomentCheck {
  double sample_mean;
  double sample_variance;
  double mean_std_err;
  double variance_std_err;
  bool pass;
};

/// |mean - expected_mean| <= k * s / sqrt(n) and
/// |var - expected_var| <= k * sqrt((m4 - s^4) / n).
MomentCheck moment_check(std::span<const double> xs, double expected_mean,
                         double expected_var, double k_sigma = 3.0);

// Small helpers shared by the tests, the CLI and the verification suites.

std::vector<std::uint64_t> histogram(std::span<const std::size_t> draws, std::size_t bins);
std::vector<double> frequencies(std::span<const std::uint64_t> counts);
double entropy(std::span<const double> probs);
double l1_distance(std::span<const double> a, std::span<const double> b);

}  // namespace gumbel::stats
