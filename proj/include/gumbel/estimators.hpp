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
#include <span>
#include <string>
#include <vector>

#include "gumbel/distributions.hpp"
#include "gumbel/rng.hpp"

// Gradient estimators for d/da E[f(X)], X ~ Cat(a, T). All gradients are
// with respect to the raw logits a, so every Jacobian carries a 1/T factor.

namespace gumbel {

enum class PayoffKind {
  kLinear,     // f(S) = <c, S>
  kQuadratic,  // f(S) = sum_i c_i S_i^2
};

/// Payoff defined on the simplex. On a one-hot X at class w both kinds give
/// f(X) = c_w.
struct Objective {
  PayoffKind kind = PayoffKind::kLinear;
  std::vector<double> payoff;
  std::string description;

  double hard_value(std::size_t index) const;
  double soft_value(std::span<const double> s) const;
  /// df/dS at s.
  std::vector<double> soft_gradient(std::span<const double> s) const;
};

enum class Estimator { kReinforce, kGumbelSoftmax, kStraightThrough };

const char* to_string(Estimator e);
Estimator parse_estimator(const std::string& name);

struct EstimatorReport {
  std::vector<double> grad_mean;
  std::vector<double> grad_std_err;
  std::size_t n_samples = 0;
  /// Exact gradient of E[f(X)] for the discrete X.
  std::vector<double> oracle_grad;
  double max_abs_bias = 0.0;
};

/// d/da_j sum_i pi_i c_i = pi_j (c_j - sum_i pi_i c_i) / T.
std::vector<double> analytic_grad(const CategoricalParams& c, const Objective& obj);

/// Single-sample estimators.
std::vector<double> reinforce_sample_grad(const CategoricalParams& c,
                                          const Objective& obj, std::size_t index);
std::vector<double> gs_sample_grad(const GumbelSoftmaxParams& p, const Objective& obj,
                                   std::span<const double> noise);
std::vector<double> st_gs_sample_grad(const GumbelSoftmaxParams& p, const Objective& obj,
                                      std::span<const double> noise);

/// Monte Carlo estimators; each consumes its samples from `rng` in order.
EstimatorReport reinforce_grad(const CategoricalParams& c, const Objective& obj,
                               std::size_t n_samples, RngState& rng);
EstimatorReport gs_grad(const GumbelSoftmaxParams& p, const Objective& obj,
                        std::size_t n_samples, RngState& rng);
EstimatorReport st_gs_grad(const GumbelSoftmaxParams& p, const Objective& obj,
                           std::size_t n_samples, RngState& rng);
EstimatorReport estimate(Estimator e, const GumbelSoftmaxParams& p,
                         const Objective& obj, std::size_t n_samples, RngState& rng);

/// Relaxed objective mean_n f(S(a, g_n)) over a frozen noise set, and its
/// exact gradient through the softmax Jacobian.
double relaxed_objective_frozen(const GumbelSoftmaxParams& p, const Objective& obj,
                                std::span<const std::vector<double>> noise_set);
std::vector<double> gs_grad_frozen(const GumbelSoftmaxParams& p, const Objective& obj,
                                   std::span<const std::vector<double>> noise_set);

struct VarianceConfig {
  CategoricalParams categorical;
  Objective objective;
  std::vector<double> lambdas;
  std::vector<Estimator> estimators{Estimator::kReinforce, Estimator::kGumbelSoftmax};
  std::size_t n_samples = 1;  // samples averaged inside one replicate
  std::size_t n_reps = 1000;
  std::uint64_t seed = 0;
};

struct VarianceRow {
  Estimator estimator;
  double lambda;
  std::vector<double> mean;          // over replicates
  double variance;                   // trace of the replicate covariance
  std::vector<double> bias;          // mean - analytic gradient
  std::vector<double> bias_std_err;  // sqrt(var_j / n_reps)
  double max_abs_bias;
};

/// One row per (estimator, lambda), in estimator-major order. Row r draws
/// from stream r + 1 of `seed`, so the table is a pure function of the
/// config.
std::vector<VarianceRow> variance_report(const VarianceConfig& cfg);

}  // namespace gumbel
