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

#include <json.hpp>

#include "gumbel/distributions.hpp"
#include "gumbel/estimators.hpp"
#include "gumbel/stats.hpp"
#include "gumbel/suites.hpp"
#include "gumbel/topdown.hpp"

// JSON mappings. -inf logits are written as null (JSON has no infinities)
// and read back from null or the string "-inf".

namespace gumbel {

void to_json(nlohmann::json& j, const CategoricalParams& c);
/// {"logits": [...], "temperature": 1.0}; temperature defaults to 1.
/// Throws std::invalid_argument naming the offending field.
void from_json(const nlohmann::json& j, CategoricalParams& c);

void to_json(nlohmann::json& j, const TopDownNode& node);
void to_json(nlohmann::json& j, const EstimatorReport& r);
void to_json(nlohmann::json& j, const VarianceRow& r);

namespace stats {
void to_json(nlohmann::json& j, const GofResult& r);
}

namespace suites {
void to_json(nlohmann::json& j, const SuiteReport& r);
}

}  // namespace gumbel
