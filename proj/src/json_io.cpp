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

#include "gumbel/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace gumbel {

namespace {

nlohmann::json real_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

void to_json(nlohmann::json& j, const CategoricalParams& c) {
  auto logits = nlohmann::json::array();
  for (double a : c.logits) logits.push_back(real_or_null(a));
  j = {{"logits", logits}, {"temperature", c.temperature}};
}

void from_json(const nlohmann::json& j, CategoricalParams& c) {
  if (!j.is_object()) throw std::invalid_argument("categorical: expected a JSON object");
  if (!j.contains("logits") || !j.at("logits").is_array()) {
    throw std::invalid_argument("logits: expected an array of numbers");
  }
  c.logits.clear();
  for (const auto& v : j.at("logits")) {
    if (v.is_null() || (v.is_string() && v.get<std::string>() == "-inf")) {
      c.logits.push_back(-kInf);
    } else if (v.is_number()) {
      c.logits.push_back(v.get<double>());
    } else {
      throw std::invalid_argument("logits: entries must be numbers, null or \"-inf\"");
    }
  }
  c.temperature = 1.0;
  if (j.contains("temperature")) {
    if (!j.at("temperature").is_number()) {
      throw std::invalid_argument("temperature: expected a number");
    }
    c.temperature = j.at("temperature").get<double>();
  }
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    throw std::invalid_argument(
        (what.find("temperature") != std::string::npos ? "temperature: " : "logits: ") + what);
  }
}

void to_json(nlohmann::json& j, const TopDownNode& node) {
  j = {{"domain", node.domain}, {"omega", node.index}, {"m", real_or_null(node.max_value)}};
}

void to_json(nlohmann::json& j, const EstimatorReport& r) {
  j = {{"grad_mean", r.grad_mean},
       {"grad_std_err", r.grad_std_err},
       {"n_samples", r.n_samples},
       {"oracle_grad", r.oracle_grad},
       {"max_abs_bias", r.max_abs_bias}};
}

void to_json(nlohmann::json& j, const VarianceRow& r) {
  j = {{"estimator", to_string(r.estimator)},
       {"lambda", r.lambda},
       {"mean", r.mean},
       {"variance", r.variance},
       {"bias", r.bias},
       {"bias_std_err", r.bias_std_err},
       {"max_abs_bias", r.max_abs_bias}};
}

namespace stats {

void to_json(nlohmann::json& j, const GofResult& r) {
  j = {{"statistic", real_or_null(r.statistic)},
       {"p_value", r.p_value},
       {"dof", r.dof},
       {"pass", r.pass}};
}

}  // namespace stats

namespace suites {

void to_json(nlohmann::json& j, const SuiteReport& r) {
  auto checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json entry = c.result;
    entry["name"] = c.name;
    checks.push_back(std::move(entry));
  }
  j = {{"suite", r.name}, {"pass", r.pass()}, {"checks", std::move(checks)}};
}

}  // namespace suites

}  // namespace gumbel
