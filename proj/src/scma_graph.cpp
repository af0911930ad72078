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

#include "risscma/scma_graph.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "risscma/errors.hpp"

namespace risscma {

namespace {

// C(n, k) without overflow for the small sizes used here; saturates.
std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
  }
  return out;
}

}  // namespace

void ScmaConfig::validate() const {
  if (num_users == 0) throw ConfigError("scma.users", "must be positive");
  if (num_ores == 0) throw ConfigError("scma.ores", "must be positive");
  if (codebook_size == 0) throw ConfigError("scma.codebook_size", "must be positive");
  if (nonzero_per_user == 0) throw ConfigError("scma.nonzero_per_user", "must be positive");
  if (nonzero_per_ore == 0) throw ConfigError("scma.nonzero_per_ore", "must be positive");
  if (nonzero_per_ore > num_users) {
    throw ConfigError("scma.nonzero_per_ore", "d_f exceeds the number of users");
  }
  if (nonzero_per_user > num_ores) {
    throw ConfigError("scma.nonzero_per_user", "d_v exceeds the number of OREs");
  }
  if (num_users * nonzero_per_user != num_ores * nonzero_per_ore) {
    throw ConfigError("scma", "edge count mismatch: U*d_v = " +
                                  std::to_string(num_users * nonzero_per_user) + " but R*d_f = " +
                                  std::to_string(num_ores * nonzero_per_ore));
  }
}

FactorGraph::FactorGraph(std::size_t num_ores, std::size_t num_users,
                         std::vector<std::uint8_t> incidence)
    : num_ores_(num_ores), num_users_(num_users), incidence_(std::move(incidence)) {
  if (num_ores_ == 0 || num_users_ == 0) throw ConfigError("factor_graph", "empty graph");
  if (incidence_.size() != num_ores_ * num_users_) {
    throw ConfigError("factor_graph", "incidence size does not match R x U");
  }
  for (auto& x : incidence_) {
    if (x > 1) throw ConfigError("factor_graph", "incidence entries must be 0 or 1");
  }

  sets_.resize(num_ores_);
  for (std::size_t r = 0; r < num_ores_; ++r) {
    for (std::size_t u = 0; u < num_users_; ++u) {
      if (at(r, u)) sets_[r].push_back(u);
    }
  }
  df_ = sets_[0].size();
  for (std::size_t r = 0; r < num_ores_; ++r) {
    if (sets_[r].size() != df_) throw ConfigError("factor_graph", "row weights differ (irregular graph)");
  }

  std::set<std::vector<std::uint8_t>> columns;
  for (std::size_t u = 0; u < num_users_; ++u) {
    std::vector<std::uint8_t> col(num_ores_);
    std::size_t weight = 0;
    for (std::size_t r = 0; r < num_ores_; ++r) {
      col[r] = incidence_[r * num_users_ + u];
      weight += col[r];
    }
    if (u == 0) dv_ = weight;
    if (weight != dv_) throw ConfigError("factor_graph", "column weights differ (irregular graph)");
    if (!columns.insert(col).second) {
      throw ConfigError("factor_graph", "user " + std::to_string(u) + " duplicates another codebook pattern");
    }
  }
  if (df_ == 0 || dv_ == 0) throw ConfigError("factor_graph", "zero degree");
}

nlohmann::json FactorGraph::to_json() const {
  auto rows = nlohmann::json::array();
  for (std::size_t r = 0; r < num_ores_; ++r) {
    auto row = nlohmann::json::array();
    for (std::size_t u = 0; u < num_users_; ++u) row.push_back(at(r, u) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

FactorGraph FactorGraph::from_json(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
    throw ConfigError("factor_graph", "expected a non-empty array of rows");
  }
  const std::size_t r_count = rows.size();
  const std::size_t u_count = rows[0].size();
  std::vector<std::uint8_t> incidence;
  incidence.reserve(r_count * u_count);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != u_count) throw ConfigError("factor_graph", "ragged rows");
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw ConfigError("factor_graph", "entries must be integers");
      incidence.push_back(static_cast<std::uint8_t>(v.get<int>()));
    }
  }
  return FactorGraph(r_count, u_count, std::move(incidence));
}

FactorGraph build_factor_graph(const ScmaConfig& cfg) {
  cfg.validate();
  const std::size_t R = cfg.num_ores;
  const std::size_t U = cfg.num_users;
  const std::size_t dv = cfg.nonzero_per_user;
  if (binomial(R, dv) != U) {
    throw ConfigError("scma", "canonical construction needs U = C(R, d_v) = " +
                                  std::to_string(binomial(R, dv)) + ", got U = " + std::to_string(U));
  }

  // Lexicographic enumeration of d_v-subsets of {0..R-1}.
  std::vector<std::uint8_t> incidence(R * U, 0);
  std::vector<std::size_t> subset(dv);
  for (std::size_t i = 0; i < dv; ++i) subset[i] = i;
  for (std::size_t u = 0; u < U; ++u) {
    for (auto r : subset) incidence[r * U + u] = 1;
    // advance to the next subset
    std::size_t i = dv;
    while (i > 0 && subset[i - 1] == R - dv + (i - 1)) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < dv; ++j) subset[j] = subset[j - 1] + 1;
  }
  return FactorGraph(R, U, std::move(incidence));
}

}  // namespace risscma
