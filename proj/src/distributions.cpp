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

#include "gumbel/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gumbel {

namespace {

void require_positive_scale(double beta, const char* what) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::domain_error(std::string(what) +
                            ": scale must be positive and finite");
  }
}

}  // namespace

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  if (a == kInf || b == kInf) return kInf;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sum_exp(std::span<const double> xs) {
  double hi = -kInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == -kInf || hi == kInf) return hi;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

std::vector<double> softmax(std::span<const double> xs) {
  double hi = -kInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == -kInf) throw std::invalid_argument("softmax: all inputs are -inf");
  std::vector<double> out(xs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i] = std::exp(xs[i] - hi);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

void validate(const CategoricalParams& c) {
  if (c.logits.empty()) {
    throw std::invalid_argument("categorical: at least one class required");
  }
  if (!(c.temperature > 0.0) || !std::isfinite(c.temperature)) {
    throw std::invalid_argument("categorical: temperature must be positive");
  }
  bool any_finite = false;
  for (double a : c.logits) {
    if (std::isnan(a) || a == kInf) {
      throw std::invalid_argument("categorical: logits must be finite or -inf");
    }
    any_finite = any_finite || std::isfinite(a);
  }
  if (!any_finite) {
    throw std::invalid_argument("categorical: all logits are -inf");
  }
}

std::vector<double> scaled_logits(const CategoricalParams& c) {
  std::vector<double> out(c.logits.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = c.logits[i] / c.temperature;
  }
  return out;
}

double log_partition(const CategoricalParams& c) {
  validate(c);
  const auto scaled = scaled_logits(c);
  return log_sum_exp(scaled);
}

double gumbel_pdf(double x, const GumbelParams& p) {
  require_positive_scale(p.beta, "gumbel_pdf");
  if (!std::isfinite(x)) return 0.0;
  const double z = (x - p.mu) / p.beta;
  return std::exp(-(z + std::exp(-z))) / p.beta;
}

double gumbel_cdf(double x, const GumbelParams& p) {
  require_positive_scale(p.beta, "gumbel_cdf");
  if (x == -kInf) return 0.0;
  if (x == kInf) return 1.0;
  return std::exp(-std::exp(-(x - p.mu) / p.beta));
}

double gumbel_icdf(double u, const GumbelParams& p) {
  require_positive_scale(p.beta, "gumbel_icdf");
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("gumbel_icdf: u must lie in the open interval (0,1)");
  }
  const double standard = -std::log(-std::log(u));
  return p.beta * standard + p.mu;
}

Moments gumbel_moments(const GumbelParams& p) {
  if (p.beta < 0.0) throw std::domain_error("gumbel_moments: negative scale");
  constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;
  return {p.mu + std::numbers::egamma * p.beta, kPi2Over6 * p.beta * p.beta};
}

double trunc_gumbel_icdf(double u, const TruncGumbelParams& p) {
  require_positive_scale(p.beta, "trunc_gumbel_icdf");
  if (!(u > 0.0 && u <= 1.0)) {
    throw std::domain_error("trunc_gumbel_icdf: u must lie in (0,1]");
  }
  if (p.bound == -kInf) return -kInf;
  if (p.mu == -kInf) return -kInf;  // theta = 0: the class carries no mass
  const double shift = (p.mu - p.bound) / p.beta;  // -inf when bound = +inf
  const double log_neg_log_u = std::log(-std::log(u));  // -inf at u = 1
  const double x = p.mu - p.beta * log_add_exp(shift, log_neg_log_u);
  return std::min(x, p.bound);
}

double trunc_gumbel_cdf(double x, const TruncGumbelParams& p) {
  require_positive_scale(p.beta, "trunc_gumbel_cdf");
  if (x >= p.bound) return 1.0;
  if (x == -kInf) return 0.0;
  // exp(-e^{-(x-mu)/beta}) / exp(-e^{-(m-mu)/beta}), combined in one exponent.
  const double tail_x = std::exp(-(x - p.mu) / p.beta);
  const double tail_m =
      p.bound == kInf ? 0.0 : std::exp(-(p.bound - p.mu) / p.beta);
  return std::clamp(std::exp(tail_m - tail_x), 0.0, 1.0);
}

std::vector<double> categorical_probs(const CategoricalParams& c) {
  validate(c);
  return softmax(scaled_logits(c));
}

double exponential_icdf(double u, double rate) {
  if (!(rate > 0.0)) throw std::domain_error("exponential_icdf: rate must be positive");
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("exponential_icdf: u must lie in (0,1)");
  }
  return -std::log1p(-u) / rate;
}

}  // namespace gumbel
