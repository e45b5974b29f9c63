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
#include <stdexcept>
#include <vector>

#include "gumbel/distributions.hpp"
#include "gumbel/rng.hpp"
#include "gumbel/sampling.hpp"

namespace gumbel {

/// Ordered sample without replacement: distinct indices with their perturbed
/// values in decreasing order.
struct TopKResult {
  std::vector<std::size_t> indices;
  std::vector<double> perturbed_values;
};

/// Largest exact enumeration accepted by unordered_set_prob (10! terms).
inline constexpr std::size_t kMaxEnumeratedSetSize = 10;

/// Top-k of one perturbation. Ties go to the lower index. Throws
/// std::invalid_argument when k exceeds the number of finite entries.
TopKResult gumbel_topk(const PerturbedLogits& pl, std::size_t k);

/// Draw, mask the drawn class, renormalise, repeat. Each step uses inverse
/// transform sampling with one uniform.
std::vector<std::size_t> sequential_wor(const CategoricalParams& c,
                                        std::size_t k, RngState& rng);

/// Probability of drawing `sequence` in that order without replacement:
/// prod_i p(x_i) / (1 - sum_{j<i} p(x_j)).
double plackett_luce_prob(const CategoricalParams& c,
                          std::span<const std::size_t> sequence);

/// Probability of the unordered set, summed over all orderings.
/// Exact enumeration; sets larger than kMaxEnumeratedSetSize are rejected.
double unordered_set_prob(const CategoricalParams& c,
                          std::span<const std::size_t> set);

struct RejectionResult {
  std::vector<std::size_t> members;  // in order of first acceptance
  std::size_t proposals = 0;
};

class ProposalBudgetExhausted : public std::runtime_error {
 public:
  ProposalBudgetExhausted(std::vector<std::size_t> partial, std::size_t proposals);
  const std::vector<std::size_t>& partial() const { return partial_; }
  std::size_t proposals() const { return proposals_; }

 private:
  std::vector<std::size_t> partial_;
  std::size_t proposals_;
};

/// With-replacement proposals, duplicates rejected, until k distinct
/// classes are collected.
RejectionResult rejection_wor(const CategoricalParams& c, std::size_t k,
                              RngState& rng, std::size_t max_proposals);

}  // namespace gumbel
