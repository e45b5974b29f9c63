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

// Test-only reference computations. Nothing here calls into the code path
// it is used to check: probabilities come from direct arithmetic, gradients
// from central differences, integrals from the trapezoid rule.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace gumbel::testing {

/// Normalised probabilities from raw logits and temperature, computed
/// naively (no max subtraction; inputs in tests are small).
inline std::vector<double> naive_softmax(const std::vector<double>& logits,
                                         double temperature = 1.0) {
  std::vector<double> p(logits.size());
  double z = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(logits[i] / temperature);
    z += p[i];
  }
  for (double& v : p) v /= z;
  return p;
}

/// Sequential renormalised selection probability of an ordered sequence.
inline double sequence_prob(const std::vector<double>& probs,
                            const std::vector<std::size_t>& seq) {
  double prob = 1.0;
  std::vector<double> remaining = probs;
  for (std::size_t x : seq) {
    double mass = 0.0;
    for (double r : remaining) mass += r;
    prob *= remaining[x] / mass;
    remaining[x] = 0.0;
  }
  return prob;
}

/// Every ordered k-sequence of distinct elements of {0..n-1}, in
/// lexicographic order.
inline std::vector<std::vector<std::size_t>> ordered_sequences(std::size_t n,
                                                              std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::vector<bool> used(n, false);
  std::function<void()> rec = [&] {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur.push_back(i);
      rec();
      cur.pop_back();
      used[i] = false;
    }
  };
  rec();
  return out;
}

/// Slot lookup for sequences returned by ordered_sequences.
inline std::map<std::vector<std::size_t>, std::size_t> sequence_slots(
    const std::vector<std::vector<std::size_t>>& seqs) {
  std::map<std::vector<std::size_t>, std::size_t> slots;
  for (std::size_t i = 0; i < seqs.size(); ++i) slots[seqs[i]] = i;
  return slots;
}

inline double trapezoid(const std::function<double(double)>& f, double lo, double hi,
                        std::size_t steps) {
  const double h = (hi - lo) / static_cast<double>(steps);
  double acc = 0.5 * (f(lo) + f(hi));
  for (std::size_t i = 1; i < steps; ++i) acc += f(lo + h * static_cast<double>(i));
  return acc * h;
}

/// Central-difference gradient of a scalar function of a vector.
inline std::vector<double> central_difference(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    auto plus = x, minus = x;
    plus[j] += h;
    minus[j] -= h;
    g[j] = (f(plus) - f(minus)) / (2.0 * h);
  }
  return g;
}

}  // namespace gumbel::testing
