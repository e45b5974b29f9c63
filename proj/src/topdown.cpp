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

#include "gumbel/topdown.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace gumbel {

namespace {

double restricted_log_partition(std::span<const double> log_theta,
                                std::span<const std::size_t> domain) {
  std::vector<double> xs;
  xs.reserve(domain.size());
  for (std::size_t i : domain) xs.push_back(log_theta[i]);
  return log_sum_exp(xs);
}

std::size_t restricted_categorical(std::span<const double> log_theta,
                                   std::span<const std::size_t> domain, double u) {
  std::vector<double> xs;
  xs.reserve(domain.size());
  for (std::size_t i : domain) xs.push_back(log_theta[i]);
  return domain[inverse_transform_index(softmax(xs), u)];
}

}  // namespace

CompletedCondition complete_condition(const TopDownCondition& c, RngState& rng) {
  if (!c.index && !c.max_value) {
    throw std::invalid_argument("complete_condition: neither index nor maximum given");
  }
  validate(c.source);
  CompletedCondition out{};
  if (c.index) {
    if (*c.index >= c.source.size()) {
      throw std::out_of_range("complete_condition: index outside domain");
    }
    out.index = *c.index;
  } else {
    out.index = inverse_transform_sample(c.source, rng);
  }
  if (c.max_value) {
    out.max_value = *c.max_value;
  } else {
    out.max_value = gumbel_icdf(draw_uniform(rng), {log_partition(c.source), 1.0});
  }
  return out;
}

PerturbedLogits conditional_perturbed_logits(std::size_t index, double max_value,
                                             const CategoricalParams& c,
                                             RngState& rng) {
  validate(c);
  if (index >= c.size()) {
    throw std::out_of_range("conditional_perturbed_logits: index outside domain");
  }
  if (!std::isfinite(max_value)) {
    throw std::invalid_argument("conditional_perturbed_logits: maximum must be finite");
  }
  PerturbedLogits pl{scaled_logits(c), c};
  if (pl.values[index] == -kInf) {
    throw std::invalid_argument(
        "conditional_perturbed_logits: conditioning on a class without mass");
  }
  for (std::size_t i = 0; i < pl.values.size(); ++i) {
    if (i == index) {
      pl.values[i] = max_value;
      continue;
    }
    const double u = draw_uniform(rng);
    pl.values[i] = trunc_gumbel_icdf(u, {pl.values[i], 1.0, max_value});
  }
  return pl;
}

PerturbedLogits transform_to_truncated(const PerturbedLogits& pl, double target_max) {
  const std::size_t top = argmax(pl.values);
  const double q = pl.values[top];
  if (!std::isfinite(q)) {
    throw std::invalid_argument("transform_to_truncated: maximum must be finite");
  }
  PerturbedLogits out = pl;
  for (double& g : out.values) {
    if (g == -kInf) continue;
    if (g == q) {
      g = target_max;
      continue;
    }
    // F_m^{-1}(F_q(g)) with unit scale; the location cancels:
    // g - log(exp(g - m) + 1 - exp(g - q)).
    const double x = g - log_add_exp(g - target_max, std::log(-std::expm1(g - q)));
    g = std::min(x, target_max);
  }
  return out;
}

TopDownConstruction::TopDownConstruction(CategoricalParams c, RngState rng,
                                         PartitionRule rule,
                                         std::optional<CompletedCondition> root)
    : source_(std::move(c)), rng_(rng), rule_(rule), root_condition_(root) {
  validate(source_);
  log_theta_ = scaled_logits(source_);
  if (root_condition_) {
    if (root_condition_->index >= source_.size() ||
        log_theta_[root_condition_->index] == -kInf) {
      throw std::invalid_argument("TopDownConstruction: invalid root index");
    }
  }
}

TopDownNode TopDownConstruction::make_child(std::vector<std::size_t> domain,
                                            double parent_max) {
  const double log_z = restricted_log_partition(log_theta_, domain);
  TopDownNode node{std::move(domain), -kInf, 0, parent_max};
  if (log_z == -kInf || parent_max == -kInf) {
    node.index = node.domain.front();
    return node;
  }
  node.max_value = trunc_gumbel_icdf(draw_uniform(rng_), {log_z, 1.0, parent_max});
  node.index = restricted_categorical(log_theta_, node.domain, draw_uniform(rng_));
  return node;
}

void TopDownConstruction::expand(const TopDownNode& node) {
  std::vector<std::size_t> rest;
  rest.reserve(node.domain.size());
  for (std::size_t i : node.domain) {
    if (i != node.index) rest.push_back(i);
  }
  std::vector<std::size_t> left, right;
  if (rule_ == PartitionRule::kMedian) {
    const auto mid = rest.begin() + static_cast<std::ptrdiff_t>(rest.size() / 2);
    left.assign(rest.begin(), mid);
    right.assign(mid, rest.end());
  } else {
    for (std::size_t i : rest) {
      (draw_uniform(rng_) < 0.5 ? left : right).push_back(i);
    }
  }
  for (auto* part : {&left, &right}) {
    if (part->empty()) continue;
    TopDownNode child = make_child(std::move(*part), node.max_value);
    queue_.push_back(child);
    ready_.push_back(std::move(child));
  }
}

std::optional<TopDownNode> TopDownConstruction::next() {
  if (!started_) {
    started_ = true;
    TopDownNode root;
    root.domain.resize(source_.size());
    for (std::size_t i = 0; i < root.domain.size(); ++i) root.domain[i] = i;
    root.parent_max = kInf;
    if (root_condition_) {
      root.max_value = root_condition_->max_value;
      root.index = root_condition_->index;
    } else {
      root.max_value =
          gumbel_icdf(draw_uniform(rng_), {log_sum_exp(log_theta_), 1.0});
      root.index = inverse_transform_index(softmax(log_theta_), draw_uniform(rng_));
    }
    queue_.push_back(root);
    return root;
  }
  while (ready_.empty() && !queue_.empty()) {
    const TopDownNode node = std::move(queue_.front());
    queue_.pop_front();
    expand(node);
  }
  if (ready_.empty()) return std::nullopt;
  TopDownNode out = std::move(ready_.front());
  ready_.pop_front();
  return out;
}

std::vector<TopDownNode> top_down_construction(const CategoricalParams& c,
                                               RngState& rng, PartitionRule rule,
                                               std::optional<CompletedCondition> root) {
  TopDownConstruction construction(c, rng, rule, root);
  std::vector<TopDownNode> nodes;
  nodes.reserve(c.size());
  while (auto node = construction.next()) nodes.push_back(std::move(*node));
  rng = construction.rng();
  return nodes;
}

LeafEnumeration enumerate_leaves(const LogitTree& tree) {
  LeafEnumeration out;
  if (tree.node_count() == 0) return out;
  // Iterative DFS visiting children in edge order.
  std::vector<std::pair<std::size_t, double>> stack{{0, 0.0}};
  while (!stack.empty()) {
    const auto [node, weight] = stack.back();
    stack.pop_back();
    if (tree.is_leaf(node)) {
      out.nodes.push_back(node);
      out.log_weights.push_back(weight);
      continue;
    }
    const auto& edges = tree.children[node];
    for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
      stack.emplace_back(it->child, weight + it->logit);
    }
  }
  return out;
}

namespace {

std::vector<double> subtree_log_partition(const LogitTree& tree) {
  const std::size_t n = tree.node_count();
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    order.push_back(node);
    for (const auto& e : tree.children[node]) stack.push_back(e.child);
  }
  std::vector<double> log_z(n, 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& edges = tree.children[*it];
    if (edges.empty()) continue;
    std::vector<double> terms;
    terms.reserve(edges.size());
    for (const auto& e : edges) terms.push_back(e.logit + log_z[e.child]);
    log_z[*it] = log_sum_exp(terms);
  }
  return log_z;
}

}  // namespace

TreeTopKResult lazy_tree_topk(const LogitTree& tree, std::size_t k, RngState& rng) {
  const LeafEnumeration leaves = enumerate_leaves(tree);
  std::size_t reachable = 0;
  for (double w : leaves.log_weights) reachable += (w != -kInf);
  if (k > reachable) {
    throw std::invalid_argument("lazy_tree_topk: k exceeds the number of leaves");
  }
  std::vector<std::size_t> leaf_ordinal(tree.node_count(), 0);
  for (std::size_t i = 0; i < leaves.nodes.size(); ++i) {
    leaf_ordinal[leaves.nodes[i]] = i;
  }
  const auto log_z = subtree_log_partition(tree);
  // Path log-weight from the root down to each node.
  std::vector<double> prefix(tree.node_count(), 0.0);
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    for (const auto& e : tree.children[node]) {
      prefix[e.child] = prefix[node] + e.logit;
      stack.push_back(e.child);
    }
  }

  // (perturbed max of the subtree, -node) so ties pop the lower node first.
  using Entry = std::pair<double, std::ptrdiff_t>;
  std::priority_queue<Entry> frontier;
  TreeTopKResult out;
  if (k == 0) return out;
  frontier.emplace(gumbel_icdf(draw_uniform(rng), {log_z[0], 1.0}), 0);

  while (out.topk.indices.size() < k) {
    const auto [value, neg_node] = frontier.top();
    frontier.pop();
    const auto node = static_cast<std::size_t>(-neg_node);
    if (tree.is_leaf(node)) {
      out.topk.indices.push_back(leaf_ordinal[node]);
      out.topk.perturbed_values.push_back(value);
      continue;
    }
    ++out.expanded_nodes;
    const auto& edges = tree.children[node];
    std::vector<double> locations(edges.size());
    for (std::size_t j = 0; j < edges.size(); ++j) {
      locations[j] = prefix[edges[j].child] + log_z[edges[j].child];
    }
    const std::size_t winner = inverse_transform_index(softmax(locations), draw_uniform(rng));
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (locations[j] == -kInf) continue;
      const double child_value =
          j == winner ? value
                      : trunc_gumbel_icdf(draw_uniform(rng), {locations[j], 1.0, value});
      frontier.emplace(child_value, -static_cast<std::ptrdiff_t>(edges[j].child));
    }
  }
  return out;
}

}  // namespace gumbel
