// Copyright 2026 The typical-worlds Authors
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

/**
 * @file
 * JSON encoding of matrices, spaces and reports, and the scenario file
 * loader. Parse failures surface as InvalidArgument.
 */
#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "typical/battery.hpp"
#include "typical/bb84.hpp"
#include "typical/mixedstate.hpp"
#include "typical/scenarios.hpp"

namespace typical::io {

using nlohmann::json;

/// {"re": [...], "im": [...]}
json to_json(const linalg::Vector &v);
/// Accepts {"re", "im"}, an array of reals, or an array of [re, im] pairs.
linalg::Vector vector_from_json(const json &j);

/// {"rows", "cols", "re", "im"}, row-major.
json to_json(const linalg::Matrix &m);
/// Accepts the object form or a nested array of reals / [re, im] pairs.
linalg::Matrix matrix_from_json(const json &j);

/// Comma-separated complex entries such as "0.6,0.8i" or "1,-0.5+0.5i".
linalg::Vector parse_vector(std::string_view text);

json to_json(const measure::FiniteProbabilitySpace &p);
json to_json(const scenarios::OutcomeDistribution &d);
json to_json(const worlds::FrequencyReport &f);
json to_json(const worlds::BatteryReport &b);
json to_json(const mixedstate::IndependenceReport &r);
json to_json(const scenarios::BB84Report &r);
/// Governing alphabet plus the symbol indices.
json to_json(const worlds::WorldPrefix &w);

/// Like json::dump(indent) but floats carry 17 significant digits, so a
/// report round-trips every double bit for bit. Non-finite floats become null.
std::string dump(const json &j, int indent = 2);

scenarios::Scenario scenario_from_json(const json &j);
scenarios::Scenario load_scenario(const std::string &path);

} // namespace typical::io
