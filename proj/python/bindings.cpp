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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "gumbel/gumbel.hpp"
#include "gumbel/json_io.hpp"
#include "gumbel/suites.hpp"

namespace py = pybind11;

namespace gumbel {
namespace {

CategoricalParams cat(std::vector<double> logits, double temperature) {
  CategoricalParams c{std::move(logits), temperature};
  validate(c);
  return c;
}

PartitionRule parse_rule(const std::string& name) {
  if (name == "median") return PartitionRule::kMedian;
  if (name == "random") return PartitionRule::kRandom;
  throw std::invalid_argument("partition: expected 'median' or 'random'");
}

PayoffKind parse_payoff_kind(const std::string& name) {
  if (name == "linear") return PayoffKind::kLinear;
  if (name == "quadratic") return PayoffKind::kQuadratic;
  throw std::invalid_argument("payoff_kind: expected 'linear' or 'quadratic'");
}

py::dict node_dict(const TopDownNode& n) {
  py::dict d;
  d["domain"] = n.domain;
  d["omega"] = n.index;
  d["m"] = n.max_value;
  d["parent_m"] = n.parent_max;
  return d;
}

}  // namespace
}  // namespace gumbel

PYBIND11_MODULE(_core, m) {
  using namespace gumbel;
  m.doc() = "Gumbel-max sampling, relaxations and gradient estimators";

  py::class_<RngState>(m, "RngState")
      .def(py::init([](std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter) {
             return RngState{seed, stream_id, counter};
           }),
           py::arg("seed"), py::arg("stream_id") = 0, py::arg("counter") = 0)
      .def_readwrite("seed", &RngState::seed)
      .def_readwrite("stream_id", &RngState::stream_id)
      .def_readwrite("counter", &RngState::counter)
      .def("uniform", [](RngState& s) { return draw_uniform(s); },
           "Next uniform on (0, 1); advances the counter.")
      .def("fork", [](const RngState& s, std::uint64_t id) { return fork_stream(s, id); },
           py::arg("stream_id"))
      .def("__eq__", [](const RngState& a, const RngState& b) { return a == b; })
      .def("__repr__", [](const RngState& s) {
        return "RngState(seed=" + std::to_string(s.seed) + ", stream_id=" +
               std::to_string(s.stream_id) + ", counter=" + std::to_string(s.counter) + ")";
      });

  m.def("categorical_probs",
        [](std::vector<double> logits, double t) { return categorical_probs(cat(std::move(logits), t)); },
        py::arg("logits"), py::arg("temperature") = 1.0);

  m.def("perturb",
        [](std::vector<double> logits, RngState& rng, double t) {
          return perturb(cat(std::move(logits), t), rng).values;
        },
        py::arg("logits"), py::arg("rng"), py::arg("temperature") = 1.0,
        "Perturbed logits a_i / T + G_i.");

  m.def("gumbel_max",
        [](std::vector<double> logits, RngState& rng, double t) {
          const auto r = gumbel_max(perturb(cat(std::move(logits), t), rng));
          return py::make_tuple(r.index, r.max_value);
        },
        py::arg("logits"), py::arg("rng"), py::arg("temperature") = 1.0,
        "Returns (index, max_value).");

  m.def("gumbel_max_scaled",
        [](std::vector<double> logits, RngState& rng, double t, double loc, double scale) {
          const auto r = gumbel_max_scaled(cat(std::move(logits), t), {loc, scale}, rng);
          return py::make_tuple(r.draw.index, r.draw.max_value);
        },
        py::arg("logits"), py::arg("rng"), py::arg("temperature") = 1.0,
        py::arg("noise_loc") = 0.0, py::arg("noise_scale") = 1.0);

  m.def("exponential_race",
        [](std::vector<double> logits, RngState& rng, double t) {
          const auto r = exponential_race(cat(std::move(logits), t), rng);
          return py::make_tuple(r.index, r.min_time);
        },
        py::arg("logits"), py::arg("rng"), py::arg("temperature") = 1.0,
        "Returns (index, min_time).");

  m.def("gumbel_topk",
        [](std::vector<double> logits, std::size_t k, RngState& rng, double t) {
          const auto r = gumbel_topk(perturb(cat(std::move(logits), t), rng), k);
          return py::make_tuple(r.indices, r.perturbed_values);
        },
        py::arg("logits"), py::arg("k"), py::arg("rng"), py::arg("temperature") = 1.0);

  m.def("sequential_wor",
        [](std::vector<double> logits, std::size_t k, RngState& rng, double t) {
          return sequential_wor(cat(std::move(logits), t), k, rng);
        },
        py::arg("logits"), py::arg("k"), py::arg("rng"), py::arg("temperature") = 1.0);

  m.def("plackett_luce_prob",
        [](std::vector<double> logits, std::vector<std::size_t> seq, double t) {
          return plackett_luce_prob(cat(std::move(logits), t), seq);
        },
        py::arg("logits"), py::arg("sequence"), py::arg("temperature") = 1.0);

  m.def("unordered_set_prob",
        [](std::vector<double> logits, std::vector<std::size_t> set, double t) {
          return unordered_set_prob(cat(std::move(logits), t), set);
        },
        py::arg("logits"), py::arg("members"), py::arg("temperature") = 1.0);

  m.def("top_down",
        [](std::vector<double> logits, RngState& rng, double t, const std::string& partition,
           std::optional<std::size_t> condition_index, std::optional<double> condition_max) {
          const auto c = cat(std::move(logits), t);
          std::optional<CompletedCondition> root;
          if (condition_index || condition_max) {
            if (condition_index && *condition_index >= c.size()) {
              throw std::out_of_range("condition_index: out of range for the logits");
            }
            root = complete_condition({condition_index, condition_max, c}, rng);
          }
          py::list out;
          for (const auto& n : top_down_construction(c, rng, parse_rule(partition), root)) {
            out.append(node_dict(n));
          }
          return out;
        },
        py::arg("logits"), py::arg("rng"), py::arg("temperature") = 1.0,
        py::arg("partition") = "median", py::arg("condition_index") = py::none(),
        py::arg("condition_max") = py::none(),
        "Top-down construction; one dict per node in yield order.");

  m.def("gs_sample",
        [](std::vector<double> logits, double lambda, RngState& rng, double t) {
          return gs_sample({cat(std::move(logits), t), lambda}, rng).weights;
        },
        py::arg("logits"), py::arg("lam"), py::arg("rng"), py::arg("temperature") = 1.0);

  m.def("st_gs_sample",
        [](std::vector<double> logits, double lambda, RngState& rng, double t) {
          const auto s = st_gs_sample({cat(std::move(logits), t), lambda}, rng);
          return py::make_tuple(s.hard, s.soft.weights);
        },
        py::arg("logits"), py::arg("lam"), py::arg("rng"), py::arg("temperature") = 1.0,
        "Returns (hard, soft).");

  m.def("analytic_grad",
        [](std::vector<double> logits, std::vector<double> payoff, double t) {
          return analytic_grad(cat(std::move(logits), t), {PayoffKind::kLinear, std::move(payoff), ""});
        },
        py::arg("logits"), py::arg("payoff"), py::arg("temperature") = 1.0);

  m.def("estimate",
        [](const std::string& estimator, std::vector<double> logits, std::vector<double> payoff,
           RngState& rng, double lambda, std::size_t n_samples, const std::string& payoff_kind,
           double t) {
          const Objective obj{parse_payoff_kind(payoff_kind), std::move(payoff), payoff_kind};
          const auto r = estimate(parse_estimator(estimator), {cat(std::move(logits), t), lambda},
                                  obj, n_samples, rng);
          py::dict d;
          d["grad_mean"] = r.grad_mean;
          d["grad_std_err"] = r.grad_std_err;
          d["n_samples"] = r.n_samples;
          d["oracle_grad"] = r.oracle_grad;
          d["max_abs_bias"] = r.max_abs_bias;
          return d;
        },
        py::arg("estimator"), py::arg("logits"), py::arg("payoff"), py::arg("rng"),
        py::arg("lam") = 1.0, py::arg("n_samples") = 10000, py::arg("payoff_kind") = "linear",
        py::arg("temperature") = 1.0);

  m.def("log_convexity_bound", &log_convexity_bound, py::arg("n_classes"));
  m.def("effective_gs_temperature", &effective_gs_temperature,
        py::arg("temperature"), py::arg("lam"));

  m.def("suite_names", &suites::suite_names);
  m.def("_verify_json",
        [](const std::string& suite, std::uint64_t seed) {
          return nlohmann::json(suites::run(suite, seed)).dump();
        },
        py::arg("suite"), py::arg("seed"));
}
