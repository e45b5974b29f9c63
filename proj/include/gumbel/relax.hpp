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
#include <span>
#include <vector>

#include "gumbel/distributions.hpp"
#include "gumbel/rng.hpp"

namespace gumbel {

/// Gumbel-Softmax (Concrete) sample. `noise` is the standard Gumbel vector
/// it was built from, kept so pathwise quantities can be recomputed with
/// the same randomness.
struct SoftSample {
  std::vector<double> weights;
  double lambda;
  std::vector<double> noise;

  /// Lowest index among the largest weights.
  std::size_t argmax() const;
};

struct StraightThroughSample {
  std::vector<double> hard;  // one-hot at soft.argmax()
  SoftSample soft;
  std::size_t index;
};

/// softmax((log theta + noise) / lambda). Throws std::domain_error for
/// lambda <= 0.
SoftSample gs_from_noise(const GumbelSoftmaxParams& p, std::span<const double> noise);
SoftSample gs_sample(const GumbelSoftmaxParams& p, RngState& rng);
StraightThroughSample st_gs_sample(const GumbelSoftmaxParams& p, RngState& rng);

/// Relaxation of scaled-noise Gumbel-max on raw logits:
/// softmax((a + noise_scale * noise) / lambda).
std::vector<double> relaxed_scaled_gumbel_max(std::span<const double> logits,
                                              double noise_scale, double lambda,
                                              std::span<const double> noise);

/// lambda / T. Relaxing Cat(a, T), sampled through noise scale T on the raw
/// logits, with temperature lambda is a Gumbel-Softmax at lambda / T on the
/// tempered logits a / T.
double effective_gs_temperature(double boltzmann_temperature, double lambda);

/// 1 / (N - 1): at or below this lambda the relaxed density has no interior
/// mode.
double log_convexity_bound(std::size_t n_classes);

}  // namespace gumbel
