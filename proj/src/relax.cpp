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

#include "gumbel/relax.hpp"

#include <cmath>
#include <stdexcept>

#include "gumbel/sampling.hpp"

namespace gumbel {

namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("gumbel-softmax: lambda must be positive and finite");
  }
}

}  // namespace

std::size_t SoftSample::argmax() const { return gumbel::argmax(weights); }

SoftSample gs_from_noise(const GumbelSoftmaxParams& p, std::span<const double> noise) {
  require_lambda(p.lambda);
  validate(p.base);
  if (noise.size() != p.base.size()) {
    throw std::invalid_argument("gs_from_noise: noise length must equal class count");
  }
  auto z = scaled_logits(p.base);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] != -kInf) z[i] = (z[i] + noise[i]) / p.lambda;
  }
  return {softmax(z), p.lambda, std::vector<double>(noise.begin(), noise.end())};
}

SoftSample gs_sample(const GumbelSoftmaxParams& p, RngState& rng) {
  require_lambda(p.lambda);
  validate(p.base);
  const auto noise = standard_gumbel_noise(p.base.size(), rng);
  return gs_from_noise(p, noise);
}

StraightThroughSample st_gs_sample(const GumbelSoftmaxParams& p, RngState& rng) {
  SoftSample soft = gs_sample(p, rng);
  const std::size_t index = soft.argmax();
  std::vector<double> hard(soft.weights.size(), 0.0);
  hard[index] = 1.0;
  return {std::move(hard), std::move(soft), index};
}

std::vector<double> relaxed_scaled_gumbel_max(std::span<const double> logits,
                                              double noise_scale, double lambda,
                                              std::span<const double> noise) {
  require_lambda(lambda);
  if (noise.size() != logits.size()) {
    throw std::invalid_argument("relaxed_scaled_gumbel_max: length mismatch");
  }
  std::vector<double> z(logits.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = logits[i] == -kInf ? -kInf : (logits[i] + noise_scale * noise[i]) / lambda;
  }
  return softmax(z);
}

double effective_gs_temperature(double boltzmann_temperature, double lambda) {
  if (!(boltzmann_temperature > 0.0) || !(lambda > 0.0)) {
    throw std::invalid_argument("effective_gs_temperature: temperatures must be positive");
  }
  return lambda / boltzmann_temperature;
}

double log_convexity_bound(std::size_t n_classes) {
  if (n_classes < 2) {
    throw std::invalid_argument("log_convexity_bound: needs at least two classes");
  }
  return 1.0 / static_cast<double>(n_classes - 1);
}

}  // namespace gumbel
