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
#include <deque>
#include <optional>
#include <vector>

#include "gumbel/distributions.hpp"
#include "gumbel/rng.hpp"
#include "gumbel/sampling.hpp"
#include "gumbel/wor.hpp"

// Top-down ("inverted") Gumbel-max sampling: generate perturbed logits
// that are consistent with a given argmax and/or maximum.

namespace gumbel {

struct TopDownCondition {
  std::optional<std::size_t> index;
  std::optional<double> max_value;
  CategoricalParams source;
};

struct CompletedCondition {
  std::size_t index;
  double max_value;
};

/// Fills in whichever of (index, max) is missing: the index from Cat(pi),
/// the maximum from Gumbel(log Z). Given fields pass through untouched.
/// Consumes one uniform per missing field, index first.
CompletedCondition complete_condition(const TopDownCondition& c, RngState& rng);

/// Perturbed logits with argmax `index` and maximum `max_value`: the entry at
/// `index` is exactly `max_value`, every other entry is an independent
/// TruncGumbel(log theta_i, 1, max_value) draw. One uniform per class
/// i != index, in index order.
PerturbedLogits conditional_perturbed_logits(std::size_t index, double max_value,
                                             const CategoricalParams& c,
                                             RngState& rng);

/// Maps unconditional perturbed logits with maximum q onto conditional ones
/// with maximum `target_max`, coordinate-wise through the truncated-Gumbel
/// CDF at q and quantile at target_max (both located at log theta_i). The
/// argmax is preserved and its entry becomes exactly `target_max`.
PerturbedLogits transform_to_truncated(const PerturbedLogits& pl, double target_max);

struct TopDownNode {
  std::vector<std::size_t> domain;  // sorted
  double max_value;
  std::size_t index;
  double parent_max;  // +inf for the root
};

enum class PartitionRule {
  /// Split the remaining (sorted) domain at its midpoint.
  kMedian,
  /// Assign each remaining class to the left or right part by a fair coin
  /// drawn from the construction's stream.
  kRandom,
};

/// Queue-based top-down construction over the whole domain. Yields the root
/// first and then every child in creation order (FIFO expansion), N nodes in
/// total. Children of a node j partition domain_j minus index_j; each child
/// gets max ~ TruncGumbel(log Z_child, 1, max_j) and index ~ Cat restricted
/// to its domain. A domain without mass yields max = -inf and its smallest
/// member as index.
class TopDownConstruction {
 public:
  TopDownConstruction(CategoricalParams c, RngState rng,
                      PartitionRule rule = PartitionRule::kMedian,
                      std::optional<CompletedCondition> root = std::nullopt);

  std::optional<TopDownNode> next();
  const RngState& rng() const { return rng_; }

 private:
  TopDownNode make_child(std::vector<std::size_t> domain, double parent_max);
  void expand(const TopDownNode& node);

  CategoricalParams source_;
  std::vector<double> log_theta_;
  RngState rng_;
  PartitionRule rule_;
  std::optional<CompletedCondition> root_condition_;
  bool started_ = false;
  std::deque<TopDownNode> queue_;
  std::deque<TopDownNode> ready_;
};

/// Runs a construction to exhaustion; `rng` is advanced past it.
std::vector<TopDownNode> top_down_construction(
    const CategoricalParams& c, RngState& rng,
    PartitionRule rule = PartitionRule::kMedian,
    std::optional<CompletedCondition> root = std::nullopt);

/// Explicit rooted tree with a logit on every edge. Node 0 is the root;
/// nodes without children are leaves. A leaf's unnormalised log-probability
/// is the sum of edge logits on its root path.
struct LogitTree {
  struct Edge {
    double logit;
    std::size_t child;
  };
  std::vector<std::vector<Edge>> children;

  std::size_t node_count() const { return children.size(); }
  bool is_leaf(std::size_t node) const { return children[node].empty(); }

  /// Full tree with the given branching and depth; edge logits drawn from
  /// `edge_logit(parent, child_slot)`.
  template <typename F>
  static LogitTree complete(std::size_t branching, std::size_t depth, F edge_logit);
};

/// Leaves in depth-first order and their path log-weights. Leaf ordinals in
/// TopKResult refer to positions in this list.
struct LeafEnumeration {
  std::vector<std::size_t> nodes;
  std::vector<double> log_weights;
};
LeafEnumeration enumerate_leaves(const LogitTree& tree);

struct TreeTopKResult {
  TopKResult topk;  // indices are leaf ordinals
  std::size_t expanded_nodes = 0;
};

/// Gumbel-top-k over the leaves without enumerating them: best-first search
/// where each popped inner node splits its perturbed maximum over its
/// children (argmax child inherits it, the rest get truncated Gumbels).
/// Subtree partition functions are computed once up front.
TreeTopKResult lazy_tree_topk(const LogitTree& tree, std::size_t k, RngState& rng);

template <typename F>
LogitTree LogitTree::complete(std::size_t branching, std::size_t depth,
                              F edge_logit) {
  LogitTree tree;
  tree.children.emplace_back();
  std::vector<std::size_t> frontier{0};
  for (std::size_t level = 0; level < depth; ++level) {
    std::vector<std::size_t> next;
    for (std::size_t parent : frontier) {
      for (std::size_t slot = 0; slot < branching; ++slot) {
        const std::size_t child = tree.children.size();
        tree.children.emplace_back();
        tree.children[parent].push_back({edge_logit(parent, slot), child});
        next.push_back(child);
      }
    }
    frontier = std::move(next);
  }
  return tree;
}

}  // namespace gumbel
