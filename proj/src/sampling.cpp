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

#include "gumbel/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gumbel {

IndexSubset::IndexSubset(std::vector<std::size_t> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty()) throw std::invalid_argument("IndexSubset: empty subset");
}

IndexSubset IndexSubset::full(std::size_t n) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  return IndexSubset(std::move(all));
}

bool IndexSubset::contains(std::size_t i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

std::size_t argmax(std::span<const double> xs) {
  std::size_t best = xs.size();
  double best_value = -kInf;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] > best_value) {
      best = i;
      best_value = xs[i];
    }
  }
  if (best == xs.size()) {
    throw std::invalid_argument("argmax: every entry is -inf");
  }
  return best;
}

std::size_t inverse_transform_index(std::span<const double> probs, double u) {
  double cumulative = 0.0;
  std::size_t last_positive = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = i;
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  if (last_positive == probs.size()) {
    throw std::invalid_argument("inverse_transform: no class carries mass");
  }
  // Rounding left the total just below u.
  return last_positive;
}

std::size_t inverse_transform_sample(const CategoricalParams& c, RngState& rng) {
  const auto probs = categorical_probs(c);
  return inverse_transform_index(probs, draw_uniform(rng));
}

PerturbedLogits perturb_with_noise(const CategoricalParams& c,
                                   std::span<const double> noise) {
  validate(c);
  if (noise.size() != c.size()) {
    throw std::invalid_argument("perturb: noise length must equal class count");
  }
  PerturbedLogits pl{scaled_logits(c), c};
  for (std::size_t i = 0; i < noise.size(); ++i) {
    if (pl.values[i] != -kInf) pl.values[i] += noise[i];
  }
  return pl;
}

std::vector<double> standard_gumbel_noise(std::size_t n, RngState& rng) {
  std::vector<double> noise(n);
  for (double& g : noise) g = gumbel_icdf(draw_uniform(rng), GumbelParams{});
  return noise;
}

PerturbedLogits perturb(const CategoricalParams& c, RngState& rng) {
  validate(c);
  const auto noise = standard_gumbel_noise(c.size(), rng);
  return perturb_with_noise(c, noise);
}

DrawResult gumbel_max(const PerturbedLogits& pl) {
  const std::size_t i = argmax(pl.values);
  return {i, pl.values[i]};
}

ScaledDrawResult gumbel_max_scaled(const CategoricalParams& c,
                                   const GumbelParams& noise, RngState& rng) {
  validate(c);
  if (noise.beta < 0.0 || !std::isfinite(noise.beta) || !std::isfinite(noise.mu)) {
    throw std::invalid_argument("gumbel_max_scaled: invalid noise parameters");
  }
  auto values = scaled_logits(c);
  if (noise.beta == 0.0) {
    const std::size_t i = argmax(values);
    return {{i, values[i] + noise.mu}, true};
  }
  for (double& v : values) {
    const double g = gumbel_icdf(draw_uniform(rng), noise);
    if (v != -kInf) v += g;
  }
  const std::size_t i = argmax(values);
  return {{i, values[i]}, false};
}

DrawResult gumbel_max_subdomain(const PerturbedLogits& pl, const IndexSubset& b) {
  std::size_t best = pl.values.size();
  double best_value = -kInf;
  for (std::size_t i : b.members()) {
    if (i >= pl.values.size()) {
      throw std::out_of_range("gumbel_max_subdomain: index outside domain");
    }
    if (pl.values[i] > best_value) {
      best = i;
      best_value = pl.values[i];
    }
  }
  if (best == pl.values.size()) {
    throw std::invalid_argument("gumbel_max_subdomain: no finite member in subset");
  }
  return {best, best_value};
}

RaceResult exponential_race(const CategoricalParams& c, RngState& rng) {
  validate(c);
  const auto log_theta = scaled_logits(c);
  std::size_t best = c.size();
  double best_log_time = kInf;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double arrival = -std::log(draw_uniform(rng));  // Exponential(1)
    if (log_theta[i] == -kInf) continue;                 // never arrives
    // log(X_i / theta_i); kept in log space so large logits do not overflow.
    const double log_time = std::log(arrival) - log_theta[i];
    if (log_time < best_log_time) {
      best = i;
      best_log_time = log_time;
    }
  }
  return {best, std::exp(best_log_time)};
}

}  // namespace gumbel
