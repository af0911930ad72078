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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

namespace risscma {

/// Dimensions of an SCMA codebook set: U users spread over R orthogonal
/// resource elements (OREs), each user occupying d_v of them and each ORE
/// carrying d_f users.
///
/// The defaults are the six-user, four-ORE system. d_v = 2 is not quoted
/// directly; it is the only value consistent with U = 6 = C(4, 2), R = 4,
/// d_f = 3.
struct ScmaConfig {
  std::size_t num_users = 6;
  std::size_t num_ores = 4;
  std::size_t codebook_size = 2;
  std::size_t nonzero_per_user = 2;  // d_v
  std::size_t nonzero_per_ore = 3;   // d_f

  /// Throws ConfigError on a non-positive dimension, U*d_v != R*d_f,
  /// d_f > U or d_v > R.
  void validate() const;

  /// Code-domain overloading (U > R). Reported, not required: the degenerate
  /// single-user configuration is a legal factor graph.
  bool overloaded() const noexcept { return num_users > num_ores; }

  bool operator==(const ScmaConfig&) const = default;
};

/// R x U binary incidence matrix of a regular SCMA factor graph together with
/// the per-ORE interference sets (ascending user indices).
class FactorGraph {
 public:
  /// Validates regularity and column distinctness; throws ConfigError.
  FactorGraph(std::size_t num_ores, std::size_t num_users, std::vector<std::uint8_t> incidence);

  std::size_t num_ores() const noexcept { return num_ores_; }
  std::size_t num_users() const noexcept { return num_users_; }
  std::size_t nonzero_per_ore() const noexcept { return df_; }
  std::size_t nonzero_per_user() const noexcept { return dv_; }

  bool at(std::size_t ore, std::size_t user) const { return incidence_[ore * num_users_ + user] != 0; }
  std::span<const std::size_t> interference_set(std::size_t ore) const { return sets_.at(ore); }

  /// Row-major 0/1 matrix, e.g. [[1,1,1,0,0,0],...].
  nlohmann::json to_json() const;
  static FactorGraph from_json(const nlohmann::json& rows);

  bool operator==(const FactorGraph&) const = default;

 private:
  std::size_t num_ores_;
  std::size_t num_users_;
  std::size_t df_ = 0;
  std::size_t dv_ = 0;
  std::vector<std::uint8_t> incidence_;
  std::vector<std::vector<std::size_t>> sets_;
};

/// Canonical regular graph: the columns are all d_v-subsets of the R OREs in
/// lexicographic order, which requires U = C(R, d_v).
FactorGraph build_factor_graph(const ScmaConfig& cfg);

}  // namespace risscma
