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

#include "gumbel/wor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace gumbel {

namespace {

void check_indices(std::span<const std::size_t> xs, std::size_t n,
                   const char* what) {
  std::vector<bool> seen(n, false);
  for (std::size_t x : xs) {
    if (x >= n) {
      throw std::out_of_range(std::string(what) + ": index outside domain");
    }
    if (seen[x]) {
      throw std::invalid_argument(std::string(what) + ": duplicate index");
    }
    seen[x] = true;
  }
}

std::size_t support_size(std::span<const double> probs) {
  return static_cast<std::size_t>(
      std::count_if(probs.begin(), probs.end(), [](double p) { return p > 0.0; }));
}

}  // namespace

TopKResult gumbel_topk(const PerturbedLogits& pl, std::size_t k) {
  const auto& v = pl.values;
  std::vector<std::size_t> order;
  order.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != -kInf) order.push_back(i);
  }
  if (k > order.size()) {
    throw std::invalid_argument("gumbel_topk: k exceeds the number of finite entries");
  }
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                    order.end(), [&v](std::size_t a, std::size_t b) {
                      return v[a] > v[b] || (v[a] == v[b] && a < b);
                    });
  order.resize(k);
  TopKResult out;
  out.indices = order;
  out.perturbed_values.reserve(k);
  for (std::size_t i : order) out.perturbed_values.push_back(v[i]);
  return out;
}

std::vector<std::size_t> sequential_wor(const CategoricalParams& c,
                                        std::size_t k, RngState& rng) {
  CategoricalParams masked = c;
  const auto probs = categorical_probs(c);
  if (k > support_size(probs)) {
    throw std::invalid_argument("sequential_wor: k exceeds the support size");
  }
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t step = 0; step < k; ++step) {
    const std::size_t i = inverse_transform_sample(masked, rng);
    out.push_back(i);
    masked.logits[i] = -kInf;
  }
  return out;
}

double plackett_luce_prob(const CategoricalParams& c,
                          std::span<const std::size_t> sequence) {
  const auto probs = categorical_probs(c);
  check_indices(sequence, probs.size(), "plackett_luce_prob");
  double prob = 1.0;
  double used = 0.0;
  for (std::size_t x : sequence) {
    const double remaining = 1.0 - used;
    if (probs[x] <= 0.0 || remaining <= 0.0) return 0.0;
    prob *= probs[x] / remaining;
    used += probs[x];
  }
  return prob;
}

double unordered_set_prob(const CategoricalParams& c,
                          std::span<const std::size_t> set) {
  if (set.size() > kMaxEnumeratedSetSize) {
    throw std::invalid_argument(
        "unordered_set_prob: set too large for exact enumeration; estimate it "
        "by Monte Carlo instead");
  }
  const auto probs = categorical_probs(c);
  check_indices(set, probs.size(), "unordered_set_prob");
  std::vector<std::size_t> perm(set.begin(), set.end());
  std::sort(perm.begin(), perm.end());
  double total = 0.0;
  do {
    total += plackett_luce_prob(c, perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

ProposalBudgetExhausted::ProposalBudgetExhausted(std::vector<std::size_t> partial,
                                                 std::size_t proposals)
    : std::runtime_error("rejection_wor: proposal budget exhausted after " +
                         std::to_string(proposals) + " proposals with " +
                         std::to_string(partial.size()) + " distinct classes"),
      partial_(std::move(partial)),
      proposals_(proposals) {}

RejectionResult rejection_wor(const CategoricalParams& c, std::size_t k,
                              RngState& rng, std::size_t max_proposals) {
  const auto probs = categorical_probs(c);
  if (k > support_size(probs)) {
    throw std::invalid_argument("rejection_wor: k exceeds the support size");
  }
  RejectionResult out;
  std::vector<bool> taken(probs.size(), false);
  while (out.members.size() < k) {
    if (out.proposals == max_proposals) {
      throw ProposalBudgetExhausted(out.members, out.proposals);
    }
    const std::size_t i = inverse_transform_index(probs, draw_uniform(rng));
    ++out.proposals;
    if (!taken[i]) {
      taken[i] = true;
      out.members.push_back(i);
    }
  }
  return out;
}

}  // namespace gumbel
