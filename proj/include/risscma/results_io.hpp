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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "risscma/sim_harness.hpp"

namespace risscma {

/// Shortest decimal text that parses back to exactly `x`.
std::string format_number(double x);

/// FNV-1a (64-bit) of the canonical campaign JSON, as 16 hex digits.
std::string config_hash(const Campaign& campaign);

/// One row per grid point and algorithm, series-major then sweep-ascending:
/// [series axis,] sweep axis, algorithm, mean_snr_db, stderr_db, real_adds,
/// real_mults, predicted_adds, predicted_mults, trials
std::string results_csv(const CampaignResult& result);

nlohmann::json results_json(const CampaignResult& result);
std::string results_json_text(const CampaignResult& result);

/// Inverse of results_json. Throws ConfigError if the stored hash does not
/// match the embedded campaign.
CampaignResult results_from_json(const nlohmann::json& j);

/// Writes `<stem>.csv` and/or `<stem>.json` into `directory` (created if
/// missing) and returns the paths written. Throws IoError naming the path.
std::vector<std::filesystem::path> write_results(const CampaignResult& result, const std::vector<std::string>& formats,
                                                 const std::filesystem::path& directory,
                                                 std::string_view stem = "results");

/// One CSV per plotted curve, named `<figure>[_<series><value>]_<algorithm>.csv`.
/// SNR figures: columns <axis>, snr_db, stderr_db. Complexity figures:
/// <axis>, real_adds, real_mults, predicted_adds, predicted_mults.
/// Throws ConfigError if the campaign does not match the figure or has no
/// algorithms or grid points.
std::vector<std::filesystem::path> emit_plot_data(const CampaignResult& result, FigureId figure,
                                                  const std::filesystem::path& directory);

}  // namespace risscma
