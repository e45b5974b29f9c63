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

#include "gumbel/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gumbel/relax.hpp"
#include "gumbel/sampling.hpp"

namespace gumbel {

namespace {

void check_objective(const Objective& obj, std::size_t n) {
  if (obj.payoff.size() != n) {
    throw std::invalid_argument("objective: payoff length must equal class count");
  }
  for (double v : obj.payoff) {
    if (!std::isfinite(v)) throw std::invalid_argument("objective: payoff must be finite");
  }
}

// Summation over a balanced binary tree; the result depends only on the
// values and their order.
double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

// Collects per-sample gradient vectors column-wise.
class GradientSamples {
 public:
  GradientSamples(std::size_t dim, std::size_t n) : columns_(dim) {
    for (auto& col : columns_) col.reserve(n);
  }

  void add(std::span<const double> g) {
    for (std::size_t j = 0; j < columns_.size(); ++j) columns_[j].push_back(g[j]);
  }

  EstimatorReport report(std::vector<double> oracle) const {
    EstimatorReport r;
    const std::size_t dim = columns_.size();
    r.n_samples = dim ? columns_[0].size() : 0;
    r.grad_mean.resize(dim);
    r.grad_std_err.resize(dim);
    const double n = static_cast<double>(r.n_samples);
    std::vector<double> sq;
    for (std::size_t j = 0; j < dim; ++j) {
      const double mean = pairwise_sum(columns_[j]) / n;
      sq.resize(columns_[j].size());
      for (std::size_t i = 0; i < sq.size(); ++i) {
        const double d = columns_[j][i] - mean;
        sq[i] = d * d;
      }
      const double var = r.n_samples > 1 ? pairwise_sum(sq) / (n - 1.0) : 0.0;
      r.grad_mean[j] = mean;
      r.grad_std_err[j] = std::sqrt(var / n);
    }
    r.max_abs_bias = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      r.max_abs_bias = std::max(r.max_abs_bias, std::abs(r.grad_mean[j] - oracle[j]));
    }
    r.oracle_grad = std::move(oracle);
    return r;
  }

 private:
  std::vector<std::vector<double>> columns_;
};

// J^T d for the tempered softmax S = softmax((a / T + g) / lambda):
// dS_i/da_j = S_i (1{i=j} - S_j) / (lambda T).
std::vector<double> softmax_vjp(std::span<const double> s, std::span<const double> d,
                                double lambda, double temperature) {
  double inner = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) inner += d[i] * s[i];
  const double scale = 1.0 / (lambda * temperature);
  std::vector<double> out(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) out[j] = scale * s[j] * (d[j] - inner);
  return out;
}

void check_samples(std::size_t n) {
  if (n == 0) throw std::invalid_argument("estimator: n_samples must be at least 1");
}

}  // namespace

double Objective::hard_value(std::size_t index) const { return payoff.at(index); }

double Objective::soft_value(std::span<const double> s) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    acc += kind == PayoffKind::kLinear ? payoff[i] * s[i] : payoff[i] * s[i] * s[i];
  }
  return acc;
}

std::vector<double> Objective::soft_gradient(std::span<const double> s) const {
  std::vector<double> g(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    g[i] = kind == PayoffKind::kLinear ? payoff[i] : 2.0 * payoff[i] * s[i];
  }
  return g;
}

const char* to_string(Estimator e) {
  switch (e) {
    case Estimator::kReinforce: return "reinforce";
    case Estimator::kGumbelSoftmax: return "gs";
    case Estimator::kStraightThrough: return "stgs";
  }
  return "unknown";
}

Estimator parse_estimator(const std::string& name) {
  if (name == "reinforce") return Estimator::kReinforce;
  if (name == "gs") return Estimator::kGumbelSoftmax;
  if (name == "stgs") return Estimator::kStraightThrough;
  throw std::invalid_argument("unknown estimator '" + name + "'");
}

std::vector<double> analytic_grad(const CategoricalParams& c, const Objective& obj) {
  const auto probs = categorical_probs(c);
  check_objective(obj, probs.size());
  double expected = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) expected += probs[i] * obj.hard_value(i);
  std::vector<double> g(probs.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    g[j] = probs[j] * (obj.hard_value(j) - expected) / c.temperature;
  }
  return g;
}

std::vector<double> reinforce_sample_grad(const CategoricalParams& c,
                                          const Objective& obj, std::size_t index) {
  const auto probs = categorical_probs(c);
  check_objective(obj, probs.size());
  const double f = obj.hard_value(index);
  std::vector<double> g(probs.size());
  // d log pi_w / d a_j = (1{j=w} - pi_j) / T
  for (std::size_t j = 0; j < g.size(); ++j) {
    g[j] = f * ((j == index ? 1.0 : 0.0) - probs[j]) / c.temperature;
  }
  return g;
}

std::vector<double> gs_sample_grad(const GumbelSoftmaxParams& p, const Objective& obj,
                                   std::span<const double> noise) {
  check_objective(obj, p.base.size());
  const SoftSample s = gs_from_noise(p, noise);
  return softmax_vjp(s.weights, obj.soft_gradient(s.weights), p.lambda,
                     p.base.temperature);
}

std::vector<double> st_gs_sample_grad(const GumbelSoftmaxParams& p, const Objective& obj,
                                      std::span<const double> noise) {
  check_objective(obj, p.base.size());
  const SoftSample s = gs_from_noise(p, noise);
  std::vector<double> hard(s.weights.size(), 0.0);
  hard[s.argmax()] = 1.0;
  return softmax_vjp(s.weights, obj.soft_gradient(hard), p.lambda, p.base.temperature);
}

EstimatorReport reinforce_grad(const CategoricalParams& c, const Objective& obj,
                               std::size_t n_samples, RngState& rng) {
  check_samples(n_samples);
  const auto probs = categorical_probs(c);
  check_objective(obj, probs.size());
  GradientSamples samples(probs.size(), n_samples);
  std::vector<double> g(probs.size());
  for (std::size_t n = 0; n < n_samples; ++n) {
    const std::size_t w = inverse_transform_index(probs, draw_uniform(rng));
    const double f = obj.hard_value(w);
    for (std::size_t j = 0; j < g.size(); ++j) {
      g[j] = f * ((j == w ? 1.0 : 0.0) - probs[j]) / c.temperature;
    }
    samples.add(g);
  }
  return samples.report(analytic_grad(c, obj));
}

namespace {

template <typename PerSample>
EstimatorReport pathwise_report(const GumbelSoftmaxParams& p, const Objective& obj,
                                std::size_t n_samples, RngState& rng,
                                PerSample per_sample) {
  check_samples(n_samples);
  validate(p.base);
  check_objective(obj, p.base.size());
  GradientSamples samples(p.base.size(), n_samples);
  for (std::size_t n = 0; n < n_samples; ++n) {
    const auto noise = standard_gumbel_noise(p.base.size(), rng);
    samples.add(per_sample(p, obj, noise));
  }
  return samples.report(analytic_grad(p.base, obj));
}

}  // namespace

EstimatorReport gs_grad(const GumbelSoftmaxParams& p, const Objective& obj,
                        std::size_t n_samples, RngState& rng) {
  return pathwise_report(p, obj, n_samples, rng, gs_sample_grad);
}

EstimatorReport st_gs_grad(const GumbelSoftmaxParams& p, const Objective& obj,
                           std::size_t n_samples, RngState& rng) {
  return pathwise_report(p, obj, n_samples, rng, st_gs_sample_grad);
}

EstimatorReport estimate(Estimator e, const GumbelSoftmaxParams& p,
                         const Objective& obj, std::size_t n_samples, RngState& rng) {
  switch (e) {
    case Estimator::kReinforce: return reinforce_grad(p.base, obj, n_samples, rng);
    case Estimator::kGumbelSoftmax: return gs_grad(p, obj, n_samples, rng);
    case Estimator::kStraightThrough: return st_gs_grad(p, obj, n_samples, rng);
  }
  throw std::invalid_argument("estimate: unknown estimator");
}

double relaxed_objective_frozen(const GumbelSoftmaxParams& p, const Objective& obj,
                                std::span<const std::vector<double>> noise_set) {
  check_objective(obj, p.base.size());
  std::vector<double> values;
  values.reserve(noise_set.size());
  for (const auto& noise : noise_set) {
    values.push_back(obj.soft_value(gs_from_noise(p, noise).weights));
  }
  return pairwise_sum(values) / static_cast<double>(noise_set.size());
}

std::vector<double> gs_grad_frozen(const GumbelSoftmaxParams& p, const Objective& obj,
                                   std::span<const std::vector<double>> noise_set) {
  GradientSamples samples(p.base.size(), noise_set.size());
  for (const auto& noise : noise_set) samples.add(gs_sample_grad(p, obj, noise));
  return samples.report(std::vector<double>(p.base.size(), 0.0)).grad_mean;
}

std::vector<VarianceRow> variance_report(const VarianceConfig& cfg) {
  if (cfg.n_reps < 2) throw std::invalid_argument("variance_report: n_reps must be >= 2");
  const auto oracle = analytic_grad(cfg.categorical, cfg.objective);
  const std::size_t dim = oracle.size();
  std::vector<VarianceRow> rows;
  const RngState root{cfg.seed, 0, 0};
  std::uint64_t stream = 0;
  for (Estimator e : cfg.estimators) {
    for (double lambda : cfg.lambdas) {
      RngState rng = fork_stream(root, ++stream);
      const GumbelSoftmaxParams p{cfg.categorical, lambda};
      GradientSamples reps(dim, cfg.n_reps);
      for (std::size_t r = 0; r < cfg.n_reps; ++r) {
        reps.add(estimate(e, p, cfg.objective, cfg.n_samples, rng).grad_mean);
      }
      const EstimatorReport summary = reps.report(oracle);
      VarianceRow row{e, lambda, summary.grad_mean, 0.0, {}, {}, summary.max_abs_bias};
      const double n = static_cast<double>(cfg.n_reps);
      for (std::size_t j = 0; j < dim; ++j) {
        // std_err^2 * n recovers the across-replicate variance.
        const double var_j = summary.grad_std_err[j] * summary.grad_std_err[j] * n;
        row.variance += var_j;
        row.bias.push_back(summary.grad_mean[j] - oracle[j]);
        row.bias_std_err.push_back(summary.grad_std_err[j]);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace gumbel
