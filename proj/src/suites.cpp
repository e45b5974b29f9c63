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

#include "gumbel/suites.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "gumbel/distributions.hpp"
#include "gumbel/estimators.hpp"
#include "gumbel/relax.hpp"
#include "gumbel/rng.hpp"
#include "gumbel/sampling.hpp"
#include "gumbel/topdown.hpp"
#include "gumbel/wor.hpp"

namespace gumbel::suites {

namespace {

constexpr std::size_t kDraws = 100000;

stats::GofResult boolean_check(bool ok, double statistic = 0.0) {
  return {statistic, ok ? 1.0 : 0.0, 0, ok};
}

CategoricalParams random_categorical(std::size_t n, RngState& rng) {
  CategoricalParams c;
  c.logits.resize(n);
  for (double& a : c.logits) a = 2.0 * gumbel_icdf(draw_uniform(rng), {});
  return c;
}

std::function<double(double)> gumbel_cdf_at(double mu) {
  return [mu](double x) { return gumbel_cdf(x, {mu, 1.0}); };
}

// Per-coordinate KS against Gumbel(log theta_i) and argmax chi-square
// against pi for a batch of reconstructed perturbed-logit vectors.
void check_reconstruction(const std::string& label, const CategoricalParams& c,
                          const std::vector<std::vector<double>>& vectors,
                          std::vector<Check>& out) {
  const auto log_theta = scaled_logits(c);
  std::vector<std::size_t> winners;
  winners.reserve(vectors.size());
  for (const auto& v : vectors) winners.push_back(argmax(v));
  for (std::size_t i = 0; i < log_theta.size(); ++i) {
    std::vector<double> column;
    column.reserve(vectors.size());
    for (const auto& v : vectors) column.push_back(v[i]);
    out.push_back({label + " coordinate " + std::to_string(i) + " KS",
                   stats::ks_one_sample(column, gumbel_cdf_at(log_theta[i]))});
  }
  out.push_back({label + " argmax chi-square",
                 stats::chi_square_gof(stats::histogram(winners, c.size()),
                                       categorical_probs(c))});
}

SuiteReport exactness(std::uint64_t seed) {
  SuiteReport report{"exactness", {}};
  RngState setup{seed, 0, 0};
  for (std::size_t trial = 0; trial < 5; ++trial) {
    const std::size_t n = 2 + trial * 2;
    const CategoricalParams c = random_categorical(n, setup);
    RngState rng = fork_stream(setup, 100 + trial);
    std::vector<std::size_t> draws(kDraws);
    for (auto& d : draws) d = gumbel_max(perturb(c, rng)).index;
    report.checks.push_back(
        {"gumbel-max N=" + std::to_string(n),
         stats::chi_square_gof(stats::histogram(draws, n), categorical_probs(c))});
  }
  const CategoricalParams c{{std::log(8.0), std::log(2.0)}, 1.0};
  RngState rng = fork_stream(setup, 200);
  std::vector<std::size_t> race(kDraws), inverse(kDraws);
  for (auto& d : race) d = exponential_race(c, rng).index;
  for (auto& d : inverse) d = inverse_transform_sample(c, rng);
  report.checks.push_back({"exponential race theta=(8,2)",
                           stats::chi_square_gof(stats::histogram(race, 2), {{0.8, 0.2}})});
  report.checks.push_back({"inverse transform theta=(8,2)",
                           stats::chi_square_gof(stats::histogram(inverse, 2), {{0.8, 0.2}})});
  return report;
}

SuiteReport max_stability(std::uint64_t seed) {
  SuiteReport report{"max-stability", {}};
  RngState rng{seed, 1, 0};
  const CategoricalParams c = random_categorical(5, rng);
  const double log_z = log_partition(c);
  std::vector<double> maxima(kDraws);
  for (double& m : maxima) m = gumbel_max(perturb(c, rng)).max_value;
  const Moments expected = gumbel_moments({log_z, 1.0});
  const auto moments = stats::moment_check(maxima, expected.mean, expected.variance, 3.0);
  report.checks.push_back({"moments of M vs Gumbel(log Z)",
                           boolean_check(moments.pass, moments.sample_mean - expected.mean)});
  report.checks.push_back({"KS of M vs Gumbel(log Z)",
                           stats::ks_one_sample(maxima, gumbel_cdf_at(log_z))});
  return report;
}

SuiteReport independence(std::uint64_t seed) {
  SuiteReport report{"independence", {}};
  RngState rng{seed, 2, 0};
  const CategoricalParams c{{0.0, 0.5, 1.0, -0.5}, 1.0};
  std::vector<std::vector<double>> by_index(c.size());
  for (std::size_t n = 0; n < kDraws; ++n) {
    const DrawResult d = gumbel_max(perturb(c, rng));
    by_index[d.index].push_back(d.max_value);
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      report.checks.push_back({"M | I=" + std::to_string(i) + " vs M | I=" + std::to_string(j),
                               stats::ks_two_sample(by_index[i], by_index[j])});
    }
  }
  return report;
}

SuiteReport topdown(std::uint64_t seed) {
  SuiteReport report{"topdown", {}};
  RngState rng{seed, 3, 0};
  const CategoricalParams c{{1.0, 0.2, -0.7, 0.0, 0.6}, 1.0};
  constexpr std::size_t kRuns = 50000;
  const double log_z = log_partition(c);

  std::vector<std::vector<double>> conditional, transformed, constructed;
  std::size_t violations = 0;
  for (std::size_t r = 0; r < kRuns; ++r) {
    // Index and maximum are independent, so draw them separately.
    const std::size_t omega = inverse_transform_sample(c, rng);
    const auto cond = complete_condition({omega, std::nullopt, c}, rng);
    auto pl = conditional_perturbed_logits(cond.index, cond.max_value, c, rng);
    if (pl.values[cond.index] != cond.max_value) ++violations;
    for (double v : pl.values) violations += v > cond.max_value;
    conditional.push_back(std::move(pl.values));

    const auto fresh = perturb(c, rng);
    const double m = gumbel_icdf(draw_uniform(rng), {log_z, 1.0});
    auto moved = transform_to_truncated(fresh, m);
    violations += *std::max_element(moved.values.begin(), moved.values.end()) != m;
    transformed.push_back(std::move(moved.values));

    std::vector<double> assembled(c.size(), -kInf);
    std::vector<int> seen(c.size(), 0);
    for (const auto& node : top_down_construction(c, rng)) {
      assembled[node.index] = node.max_value;
      ++seen[node.index];
      violations += !(node.max_value < node.parent_max);
      violations += !std::binary_search(node.domain.begin(), node.domain.end(), node.index);
    }
    violations += std::count_if(seen.begin(), seen.end(), [](int s) { return s != 1; });
    constructed.push_back(std::move(assembled));
  }
  check_reconstruction("conditional", c, conditional, report.checks);
  check_reconstruction("transformed", c, transformed, report.checks);
  check_reconstruction("construction", c, constructed, report.checks);
  report.checks.push_back({"structural invariants",
                           boolean_check(violations == 0, static_cast<double>(violations))});
  return report;
}

SuiteReport wor(std::uint64_t seed) {
  SuiteReport report{"wor", {}};
  RngState rng{seed, 4, 0};
  const CategoricalParams c{{std::log(0.4), std::log(0.3), std::log(0.2), std::log(0.1)}, 1.0};
  constexpr std::size_t k = 3;
  constexpr std::size_t kRuns = 200000;
  std::vector<std::vector<std::size_t>> sequences;
  std::vector<double> probs;
  std::vector<std::size_t> perm{0, 1, 2, 3};
  std::map<std::vector<std::size_t>, std::size_t> slot;
  do {
    std::vector<std::size_t> head(perm.begin(), perm.begin() + k);
    if (slot.emplace(head, sequences.size()).second) {
      probs.push_back(plackett_luce_prob(c, head));
      sequences.push_back(std::move(head));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::uint64_t> topk_counts(sequences.size(), 0);
  std::vector<std::uint64_t> seq_counts(sequences.size(), 0);
  for (std::size_t r = 0; r < kRuns; ++r) {
    ++topk_counts[slot.at(gumbel_topk(perturb(c, rng), k).indices)];
    ++seq_counts[slot.at(sequential_wor(c, k, rng))];
  }
  report.checks.push_back({"gumbel-top-k vs Plackett-Luce",
                           stats::chi_square_gof(topk_counts, probs)});
  report.checks.push_back({"sequential WOR vs Plackett-Luce",
                           stats::chi_square_gof(seq_counts, probs)});
  return report;
}

SuiteReport gradients(std::uint64_t seed) {
  SuiteReport report{"gradients", {}};
  const CategoricalParams c{{std::log(0.5), std::log(0.3), std::log(0.2)}, 1.0};
  const Objective obj{PayoffKind::kLinear, {1.0, 2.0, 3.0}, "linear"};

  RngState rng{seed, 5, 0};
  const auto reinforce = reinforce_grad(c, obj, kDraws, rng);
  bool within = true;
  for (std::size_t j = 0; j < c.size(); ++j) {
    within = within && std::abs(reinforce.grad_mean[j] - reinforce.oracle_grad[j]) <=
                           3.0 * reinforce.grad_std_err[j];
  }
  report.checks.push_back({"REINFORCE within 3 SE of analytic gradient",
                           boolean_check(within, reinforce.max_abs_bias)});

  std::vector<std::vector<double>> noise_set(512);
  for (auto& g : noise_set) g = standard_gumbel_noise(c.size(), rng);
  const GumbelSoftmaxParams p{c, 0.5};
  const auto pathwise = gs_grad_frozen(p, obj, noise_set);
  constexpr double h = 1e-4;
  double worst = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    GumbelSoftmaxParams plus = p, minus = p;
    plus.base.logits[j] += h;
    minus.base.logits[j] -= h;
    const double fd = (relaxed_objective_frozen(plus, obj, noise_set) -
                       relaxed_objective_frozen(minus, obj, noise_set)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - pathwise[j]) / std::max(std::abs(fd), 1e-12));
  }
  report.checks.push_back({"GS pathwise gradient vs frozen-noise finite differences",
                           boolean_check(worst <= 1e-5, worst)});

  RngState low = fork_stream(rng, 51), high = fork_stream(rng, 52);
  const double bias_low = gs_grad({c, 0.1}, obj, kDraws, low).max_abs_bias;
  const double bias_high = gs_grad({c, 2.0}, obj, kDraws, high).max_abs_bias;
  report.checks.push_back({"GS bias smaller at lambda 0.1 than at 2.0",
                           boolean_check(bias_low < bias_high, bias_low - bias_high)});
  return report;
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.result.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "exactness", "max-stability", "independence", "topdown", "wor", "gradients"};
  return names;
}

std::vector<SuiteReport> run(const std::string& name, std::uint64_t seed) {
  using Runner = SuiteReport (*)(std::uint64_t);
  static const std::map<std::string, Runner> runners{
      {"exactness", exactness}, {"max-stability", max_stability},
      {"independence", independence}, {"topdown", topdown},
      {"wor", wor}, {"gradients", gradients}};
  if (name == "all") {
    std::vector<SuiteReport> out;
    for (const auto& n : suite_names()) out.push_back(runners.at(n)(seed));
    return out;
  }
  const auto it = runners.find(name);
  if (it == runners.end()) throw std::invalid_argument("unknown suite '" + name + "'");
  return {it->second(seed)};
}

}  // namespace gumbel::suites
