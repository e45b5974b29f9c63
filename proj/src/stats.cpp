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

#include "gumbel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace gumbel::stats {

namespace {

constexpr double kMinExpectedCount = 5.0;

GofResult make_result(double statistic, double p_value, int dof, double alpha) {
  p_value = std::clamp(p_value, 0.0, 1.0);
  return {statistic, p_value, dof, p_value > alpha};
}

}  // namespace

double chi_square_survival(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  if (!std::isfinite(statistic)) return 0.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // 1 - CDF, with the CDF from its theta-function form; fast for small lambda.
    const double y = std::exp(-std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda));
    double sum = 0.0;
    for (int k = 1; k <= 30; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::pow(y, odd * odd);
      sum += term;
      if (term < 1e-18) break;
    }
    return 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-18) break;
    sign = -sign;
  }
  return 2.0 * sum;
}

GofResult chi_square_gof(std::span<const std::uint64_t> counts,
                         std::span<const double> expected_probs, double alpha) {
  if (counts.size() != expected_probs.size()) {
    throw std::invalid_argument("chi_square_gof: counts and probabilities differ in length");
  }
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total < 1.0) throw std::invalid_argument("chi_square_gof: no observations");
  double mass = 0.0;
  for (double p : expected_probs) {
    if (p < 0.0 || !std::isfinite(p)) {
      throw std::invalid_argument("chi_square_gof: probabilities must be finite and >= 0");
    }
    mass += p;
  }
  if (mass <= 0.0) throw std::invalid_argument("chi_square_gof: all expected probabilities are zero");

  // Merge adjacent positive-probability bins until each expects >= 5.
  std::vector<double> observed;
  std::vector<double> expected;
  double obs_acc = 0.0;
  double exp_acc = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (expected_probs[i] == 0.0) {
      if (counts[i] > 0) return make_result(INFINITY, 0.0, 0, alpha);
      continue;
    }
    obs_acc += static_cast<double>(counts[i]);
    exp_acc += total * expected_probs[i] / mass;
    if (exp_acc >= kMinExpectedCount) {
      observed.push_back(obs_acc);
      expected.push_back(exp_acc);
      obs_acc = exp_acc = 0.0;
    }
  }
  if (exp_acc > 0.0) {
    if (expected.empty()) {
      observed.push_back(obs_acc);
      expected.push_back(exp_acc);
    } else {
      observed.back() += obs_acc;
      expected.back() += exp_acc;
    }
  }

  double statistic = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - expected[i];
    statistic += d * d / expected[i];
  }
  const int dof = static_cast<int>(observed.size()) - 1;
  return make_result(statistic, chi_square_survival(statistic, dof), dof, alpha);
}

GofResult ks_two_sample(std::span<const double> xs, std::span<const double> ys,
                        double alpha) {
  if (xs.empty() || ys.empty()) {
    throw std::invalid_argument("ks_two_sample: both samples must be nonempty");
  }
  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double sqrt_ne = std::sqrt(ne);
  const double lambda = (sqrt_ne + 0.12 + 0.11 / sqrt_ne) * d;
  return make_result(d, kolmogorov_survival(lambda), 0, alpha);
}

GofResult ks_one_sample(std::span<const double> xs,
                        const std::function<double(double)>& cdf, double alpha) {
  if (xs.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    // Empirical CDF just below and at sorted[i].
    std::size_t lo = i;
    while (lo > 0 && sorted[lo - 1] == sorted[i]) --lo;
    std::size_t hi = i + 1;
    while (hi < sorted.size() && sorted[hi] == sorted[i]) ++hi;
    d = std::max({d, std::abs(f - static_cast<double>(lo) / n),
                  std::abs(static_cast<double>(hi) / n - f)});
  }
  const double sqrt_n = std::sqrt(n);
  const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
  return make_result(d, kolmogorov_survival(lambda), 0, alpha);
}

MomentCheck moment_check(std::span<const double> xs, double expected_mean,
                         double expected_var, double k_sigma) {
  if (xs.size() < 2) throw std::invalid_argument("moment_check: need at least two values");
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  const double var = m2 / (n - 1.0);
  m4 /= n;
  const double pop_var = m2 / n;
  const double mean_se = std::sqrt(var / n);
  const double var_se = std::sqrt(std::max(m4 - pop_var * pop_var, 0.0) / n);
  // Rounding slack so an exactly constant sample matches its own moments.
  const double mean_slack = 1e-12 * (1.0 + std::abs(expected_mean));
  const double var_slack = 1e-12 * (1.0 + std::abs(expected_var));
  const bool pass = std::abs(mean - expected_mean) <= k_sigma * mean_se + mean_slack &&
                    std::abs(var - expected_var) <= k_sigma * var_se + var_slack;
  return {mean, var, mean_se, var_se, pass};
}

std::vector<std::uint64_t> histogram(std::span<const std::size_t> draws, std::size_t bins) {
  std::vector<std::uint64_t> counts(bins, 0);
  for (std::size_t d : draws) {
    if (d >= bins) throw std::out_of_range("histogram: draw outside bin range");
    ++counts[d];
  }
  return counts;
}

std::vector<double> frequencies(std::span<const std::uint64_t> counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  std::vector<double> f(counts.size(), 0.0);
  if (total == 0.0) return f;
  for (std::size_t i = 0; i < counts.size(); ++i) f[i] = static_cast<double>(counts[i]) / total;
  return f;
}

double entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("l1_distance: length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

}  // namespace gumbel::stats
