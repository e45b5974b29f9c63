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

// Exact categorical samplers. Class indices are 0-based throughout.
// Samplers take the RngState by reference and advance it; one uniform is
// consumed per class in index order wherever noise is drawn per class.

namespace gumbel {

/// Perturbed logits log(theta_i) + g_i together with the distribution they
/// were drawn for. Entries for -inf logits stay -inf.
struct PerturbedLogits {
  std::vector<double> values;
  CategoricalParams source;
};

struct DrawResult {
  std::size_t index = 0;
  double max_value = 0.0;
};

struct ScaledDrawResult {
  DrawResult draw;
  /// True when the noise scale was 0 and the draw degenerated to the argmax
  /// of the logits.
  bool deterministic = false;
};

struct RaceResult {
  std::size_t index = 0;
  double min_time = 0.0;
};

/// Sorted, duplicate-free class indices.
class IndexSubset {
 public:
  explicit IndexSubset(std::vector<std::size_t> members);
  static IndexSubset full(std::size_t n);

  std::span<const std::size_t> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(std::size_t i) const;

 private:
  std::vector<std::size_t> members_;
};

/// Argmax with lowest-index tie-break; -inf entries are never preferred over
/// finite ones. Throws std::invalid_argument when every entry is -inf.
std::size_t argmax(std::span<const double> xs);

/// CDF bin lookup: smallest i with u < pi_1 + ... + pi_i. Classes with zero
/// mass are never returned.
std::size_t inverse_transform_index(std::span<const double> probs, double u);
std::size_t inverse_transform_sample(const CategoricalParams& c, RngState& rng);

/// Deterministic perturbation with caller-provided standard Gumbel noise.
PerturbedLogits perturb_with_noise(const CategoricalParams& c,
                                   std::span<const double> noise);
/// values[i] = a_i / T + G_i with G_i = gumbel_icdf(u_i).
PerturbedLogits perturb(const CategoricalParams& c, RngState& rng);
/// Standard Gumbel noise vector of length n.
std::vector<double> standard_gumbel_noise(std::size_t n, RngState& rng);

DrawResult gumbel_max(const PerturbedLogits& pl);

/// Gumbel-max with Gumbel(mu, beta) noise: index ~ Cat(a, T * beta),
/// max ~ Gumbel(mu + beta * log Z', beta). beta == 0 returns the argmax of
/// a / T + mu without consuming randomness and flags it.
ScaledDrawResult gumbel_max_scaled(const CategoricalParams& c,
                                   const GumbelParams& noise, RngState& rng);

/// Argmax restricted to a subset of the classes.
DrawResult gumbel_max_subdomain(const PerturbedLogits& pl, const IndexSubset& b);

/// Exponential race: X_i = -log(u_i) ~ Exponential(1), arrival X_i / theta_i.
/// Returns the first arrival and its time. Uses the same uniforms in the same
/// order as perturb(), so -log of the arrival times reproduces those values.
RaceResult exponential_race(const CategoricalParams& c, RngState& rng);

}  // namespace gumbel
