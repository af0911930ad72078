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

#include <doctest.h>

#include <set>
#include <vector>

#include "oracles.hpp"
#include "risscma/errors.hpp"
#include "risscma/scma_graph.hpp"

using namespace risscma;

namespace {

std::vector<std::uint8_t> column(const FactorGraph& g, std::size_t u) {
  std::vector<std::uint8_t> c(g.num_ores());
  for (std::size_t r = 0; r < g.num_ores(); ++r) c[r] = g.at(r, u);
  return c;
}

void check_regular(const FactorGraph& g, std::size_t df, std::size_t dv) {
  for (std::size_t r = 0; r < g.num_ores(); ++r) {
    std::size_t sum = 0;
    for (std::size_t u = 0; u < g.num_users(); ++u) sum += g.at(r, u);
    CHECK(sum == df);
    CHECK(g.interference_set(r).size() == df);
    for (auto u : g.interference_set(r)) CHECK(g.at(r, u));
  }
  std::set<std::vector<std::uint8_t>> distinct;
  for (std::size_t u = 0; u < g.num_users(); ++u) {
    const auto c = column(g, u);
    std::size_t sum = 0;
    for (auto x : c) sum += x;
    CHECK(sum == dv);
    distinct.insert(c);
  }
  CHECK(distinct.size() == g.num_users());
}

}  // namespace

TEST_CASE("six users on four OREs use every 2-of-4 pattern in lexicographic order") {
  const ScmaConfig cfg;
  CHECK(cfg.num_users == 6);
  CHECK(cfg.num_ores == 4);
  CHECK(cfg.codebook_size == 2);
  CHECK(cfg.nonzero_per_ore == 3);
  CHECK(cfg.nonzero_per_user == 2);
  const auto g = build_factor_graph(cfg);

  // pairs {a<b} from {0..3} in lexicographic order
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) pairs.emplace_back(a, b);
  REQUIRE(pairs.size() == 6);
  for (std::size_t u = 0; u < 6; ++u) {
    for (std::size_t r = 0; r < 4; ++r) {
      const bool expected = static_cast<int>(r) == pairs[u].first || static_cast<int>(r) == pairs[u].second;
      CHECK(g.at(r, u) == expected);
    }
  }
  check_regular(g, 3, 2);
  const std::vector<std::size_t> lambda0(g.interference_set(0).begin(), g.interference_set(0).end());
  CHECK(lambda0 == std::vector<std::size_t>{0, 1, 2});
  const std::vector<std::size_t> lambda3(g.interference_set(3).begin(), g.interference_set(3).end());
  CHECK(lambda3 == std::vector<std::size_t>{2, 4, 5});
}

TEST_CASE("single user on a single ORE") {
  const ScmaConfig cfg{1, 1, 1, 1, 1};
  const auto g = build_factor_graph(cfg);
  CHECK(g.num_ores() == 1);
  CHECK(g.num_users() == 1);
  CHECK(g.at(0, 0));
  CHECK_FALSE(cfg.overloaded());
  CHECK(ScmaConfig{}.overloaded());
}

TEST_CASE("edge-count violation is rejected") {
  const ScmaConfig cfg{6, 4, 2, 1, 3};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_THROWS_AS(build_factor_graph(cfg), ConfigError);
}

TEST_CASE("domain checks name the field") {
  auto field_of = [](const ScmaConfig& c) {
    try {
      c.validate();
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string();
  };
  CHECK(field_of(ScmaConfig{0, 4, 2, 2, 3}) == "scma.users");
  CHECK(field_of(ScmaConfig{6, 0, 2, 2, 3}) == "scma.ores");
  CHECK(field_of(ScmaConfig{2, 4, 2, 2, 3}) == "scma.nonzero_per_ore");
  CHECK(field_of(ScmaConfig{6, 4, 2, 5, 3}) == "scma.nonzero_per_user");
}

TEST_CASE("canonical construction needs U = C(R, d_v)") {
  // consistent edge count but U != C(4,2)
  CHECK_THROWS_AS(build_factor_graph(ScmaConfig{4, 4, 2, 2, 2}), ConfigError);
}

TEST_CASE("property: every canonical graph is regular with distinct columns") {
  for (std::size_t R = 1; R <= 7; ++R) {
    for (std::size_t dv = 1; dv <= R; ++dv) {
      const std::size_t U = oracle::choose(R, dv);
      const std::size_t df = oracle::choose(R - 1, dv - 1);
      CAPTURE(R);
      CAPTURE(dv);
      const ScmaConfig cfg{U, R, 2, dv, df};
      const auto g = build_factor_graph(cfg);
      CHECK(g.nonzero_per_ore() == df);
      CHECK(g.nonzero_per_user() == dv);
      check_regular(g, df, dv);
      CHECK(build_factor_graph(cfg) == g);
    }
  }
}

TEST_CASE("irregular or duplicated incidence matrices are rejected") {
  // row weights 2 and 1
  CHECK_THROWS_AS(FactorGraph(2, 2, {1, 1, 0, 1}), ConfigError);
  // regular but users 0 and 1 share a pattern
  CHECK_THROWS_AS(FactorGraph(2, 2, {1, 1, 1, 1}), ConfigError);
  CHECK_THROWS_AS(FactorGraph(2, 2, {1, 0, 0}), ConfigError);
  CHECK_THROWS_AS(FactorGraph(1, 2, {1, 2}), ConfigError);
  CHECK_NOTHROW(FactorGraph(2, 2, {1, 0, 0, 1}));
}

TEST_CASE("JSON form is the row-major 0/1 matrix and round-trips") {
  const auto g = build_factor_graph(ScmaConfig{});
  const auto j = g.to_json();
  CHECK(j.dump() == "[[1,1,1,0,0,0],[1,0,0,1,1,0],[0,1,0,1,0,1],[0,0,1,0,1,1]]");
  CHECK(FactorGraph::from_json(j) == g);
  CHECK_THROWS_AS(FactorGraph::from_json(nlohmann::json::parse("[[1,0],[1]]")), ConfigError);
}
