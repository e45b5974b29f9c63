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

#include <cstdint>
#include <string>
#include <vector>

#include "gumbel/stats.hpp"

// Named invariant suites run by `gumbel_cli verify`.

namespace gumbel::suites {

struct Check {
  std::string name;
  stats::GofResult result;
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;

  bool pass() const;
};

/// exactness, max-stability, independence, topdown, wor, gradients.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws std::invalid_argument
/// for an unknown name. Deterministic in (name, seed).
std::vector<SuiteReport> run(const std::string& name, std::uint64_t seed);

}  // namespace gumbel::suites
