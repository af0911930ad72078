// Copyright 2026 The risscma Authors
// SPDX-License-Identifier: Apache-2.0
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

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "risscma/sim_harness.hpp"

namespace risscma {

struct OutputOptions {
  std::string directory = "results";
  std::vector<std::string> formats{"csv", "json"};  // subset of {csv, json}
  bool plots = false;      // also emit per-series plot files
  bool timestamp = false;  // record wall-clock time in JSON output

  bool operator==(const OutputOptions&) const = default;
};

struct RunConfig {
  Campaign campaign;
  OutputOptions output;
  unsigned workers = 1;  // 0 = one per hardware thread
  int verbosity = 1;     // 0 quiet, 1 normal, 2 verbose

  bool operator==(const RunConfig&) const = default;
};

/// Parses a JSON config document. Missing keys take their defaults; an empty
/// or whitespace-only document yields the default RunConfig. When a scenario
/// is given without a sweep, the scenario's default axis and grid are used.
/// Throws ConfigError carrying line/column for syntax errors, the dotted key
/// for unknown keys, and the field name for domain violations.
RunConfig parse_config(std::string_view text);

/// Every field written explicitly; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);
nlohmann::json campaign_to_json(const Campaign& campaign);
/// Reads a campaign object (validated). Unknown keys are rejected.
Campaign campaign_from_json(const nlohmann::json& j);

/// Applies a `dotted.key=value` override; the value is read as JSON if it
/// parses, as a string otherwise. Example: "ris.elements=32".
void apply_override(RunConfig& config, std::string_view assignment);

}  // namespace risscma
