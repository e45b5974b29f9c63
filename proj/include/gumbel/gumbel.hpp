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

#include "gumbel/distributions.hpp"
#include "gumbel/estimators.hpp"
#include "gumbel/relax.hpp"
#include "gumbel/rng.hpp"
#include "gumbel/sampling.hpp"
#include "gumbel/stats.hpp"
#include "gumbel/topdown.hpp"
#include "gumbel/wor.hpp"
