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

#include <limits>
#include <span>
#include <vector>

namespace gumbel {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Gumbel(mu, beta). beta == 0 is the point mass at mu; only the moments are
/// defined for it.
struct GumbelParams {
  double mu = 0.0;
  double beta = 1.0;
};

/// Gumbel(mu, beta) conditioned on x <= bound. bound == +inf is the plain
/// Gumbel.
struct TruncGumbelParams {
  double mu = 0.0;
  double beta = 1.0;
  double bound = kInf;
};

/// Boltzmann / categorical distribution over N classes:
/// pi_i = exp(a_i / T) / Z with Z = sum_j exp(a_j / T).
/// A logit of -inf encodes theta_i = 0.
struct CategoricalParams {
  std::vector<double> logits;
  double temperature = 1.0;

  std::size_t size() const { return logits.size(); }
};

struct GumbelSoftmaxParams {
  CategoricalParams base;
  double lambda = 1.0;
};

struct Moments {
  double mean;
  double variance;
};

// Numerics.

/// log(exp(a) + exp(b)), exact for infinite arguments.
double log_add_exp(double a, double b);
/// log(sum exp(x)); -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> xs);
/// Softmax with max subtraction; entries of -inf map to exactly 0.
std::vector<double> softmax(std::span<const double> xs);

/// Throws std::invalid_argument unless N >= 1, T > 0 (finite), every logit
/// is finite or -inf, and at least one logit is finite.
void validate(const CategoricalParams& c);

/// log theta_i = a_i / T.
std::vector<double> scaled_logits(const CategoricalParams& c);
/// log Z over the whole domain.
double log_partition(const CategoricalParams& c);

// Gumbel family.

double gumbel_pdf(double x, const GumbelParams& p);
double gumbel_cdf(double x, const GumbelParams& p);
/// x = mu - beta * log(-log u). Throws std::domain_error for u outside (0,1)
/// or beta <= 0.
double gumbel_icdf(double u, const GumbelParams& p);
/// (mu + gamma * beta, pi^2 / 6 * beta^2).
Moments gumbel_moments(const GumbelParams& p);

/// Right-truncated Gumbel quantile, u in (0, 1]. Uses the location/scale
/// form mu - beta * log(exp((mu - m) / beta) - log u), evaluated as a
/// log-sum-exp of (mu - m) / beta and log(-log u). Never exceeds the bound.
double trunc_gumbel_icdf(double u, const TruncGumbelParams& p);
double trunc_gumbel_cdf(double x, const TruncGumbelParams& p);

// Categorical and exponential.

/// Tempered softmax of the logits. Sums to 1 within 1e-12.
std::vector<double> categorical_probs(const CategoricalParams& c);

/// x = -log(1 - u) / rate. Throws std::domain_error for rate <= 0 or u
/// outside (0,1).
double exponential_icdf(double u, double rate);

}  // namespace gumbel
