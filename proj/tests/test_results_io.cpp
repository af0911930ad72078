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

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "risscma/config.hpp"
#include "risscma/errors.hpp"
#include "risscma/results_io.hpp"

using namespace risscma;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("risscma_io_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(p);
  return p;
}

CampaignResult n_sweep_result() {
  Campaign c;
  c.sweep.values = {4, 8, 12};
  c.num_trials = 10;
  c.algorithms = {Algorithm::no_ris, Algorithm::blind, Algorithm::ao};
  return run_campaign(c);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("numbers are written in shortest round-trip form") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(gen) * std::pow(10.0, static_cast<int>(gen() % 40) - 20);
    const std::string s = format_number(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
  }
  CHECK(format_number(16.0) == "16");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(NAN) == "nan");
}

TEST_CASE("CSV layout for an N sweep") {
  const auto r = n_sweep_result();
  const auto rows = lines(results_csv(r));
  REQUIRE(rows.size() == 1 + 3 * 3);
  CHECK(rows[0] ==
        "N,algorithm,mean_snr_db,stderr_db,real_adds,real_mults,predicted_adds,predicted_mults,trials");
  std::vector<double> n_column;
  for (std::size_t i = 1; i < rows.size(); ++i) n_column.push_back(std::stod(rows[i].substr(0, rows[i].find(','))));
  CHECK(std::is_sorted(n_column.begin(), n_column.end()));
  CHECK(rows[1].rfind("4,no_ris,", 0) == 0);
  CHECK(rows[3].find(",ao," + format_number(r.points[0].summary(Algorithm::ao).snr_db) + ",") != std::string::npos);
  CHECK(rows[3].substr(rows[3].rfind(',') + 1) == "10");
}

TEST_CASE("CSV with a series column") {
  Campaign c;
  c.scenario = Scenario::bits_sweep;
  c.sweep = {SweepAxis::bits, {1, 2}};
  c.series = SweepSpec{SweepAxis::elements, {4, 8}};
  c.num_trials = 3;
  c.algorithms = {Algorithm::ao};
  const auto rows = lines(results_csv(run_campaign(c)));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].rfind("N,b,algorithm,", 0) == 0);
  CHECK(rows[1].rfind("4,1,ao,", 0) == 0);
  CHECK(rows[4].rfind("8,2,ao,", 0) == 0);
}

TEST_CASE("writing is byte-stable and JSON round-trips") {
  const auto r = n_sweep_result();
  const auto dir = scratch("stable");
  const auto first = write_results(r, {"csv", "json"}, dir);
  REQUIRE(first.size() == 2);
  const std::string csv1 = slurp(first[0]), json1 = slurp(first[1]);
  write_results(r, {"csv", "json"}, dir);
  CHECK(slurp(first[0]) == csv1);
  CHECK(slurp(first[1]) == json1);

  const auto j = nlohmann::json::parse(json1);
  CHECK(j.at("seed") == r.campaign.master_seed);
  CHECK(j.at("config_hash") == config_hash(r.campaign));
  CHECK(results_from_json(j) == r);
  fs::remove_all(dir);
}

TEST_CASE("timestamps survive the round trip and do not touch the hash") {
  auto r = n_sweep_result();
  const auto hash = config_hash(r.campaign);
  r.timestamp = "2026-01-01T00:00:00Z";
  CHECK(results_from_json(results_json(r)) == r);
  CHECK(results_json(r).at("config_hash") == hash);
}

TEST_CASE("tampered provenance is rejected") {
  const auto r = n_sweep_result();
  auto j = results_json(r);
  j["campaign"]["trials"] = 11;
  CHECK_THROWS_AS(results_from_json(j), ConfigError);
  j = results_json(r);
  j["seed"] = 5;
  CHECK_THROWS_AS(results_from_json(j), ConfigError);
  j = results_json(r);
  j.erase("points");
  CHECK_THROWS_AS(results_from_json(j), ConfigError);
}

TEST_CASE("config hash tracks the campaign") {
  Campaign a, b;
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  b.master_seed = 2;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("I/O failures name the path") {
  const auto dir = scratch("blocked");
  fs::create_directories(dir);
  const fs::path file = dir / "plain_file";
  std::ofstream(file) << "x";
  try {
    write_results(n_sweep_result(), {"csv"}, file / "sub");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(file.string()) != std::string::npos);
  }
  CHECK_THROWS_AS(write_results(n_sweep_result(), {"xml"}, dir), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("plot data for the convergence figure is indexed by T") {
  Campaign c;
  c.scenario = Scenario::convergence;
  c.sweep = {SweepAxis::iterations, {1, 2, 3}};
  c.series = SweepSpec{SweepAxis::elements, {4, 8}};
  c.num_trials = 5;
  const auto r = run_campaign(c);
  const auto dir = scratch("fig5a");
  const auto files = emit_plot_data(r, FigureId::fig5a, dir);
  CHECK(files.size() == 2 * 3);
  const auto rows = lines(slurp(dir / "fig5a_N8_lc_ao.csv"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "T,snr_db,stderr_db");
  CHECK(rows[1].rfind("1,", 0) == 0);
  CHECK(rows[3] == "3," + format_number(r.points[5].summary(Algorithm::lc_ao).snr_db) + "," +
                       format_number(r.points[5].summary(Algorithm::lc_ao).stderr_db));
  CHECK_THROWS_AS(emit_plot_data(r, FigureId::fig2, dir), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("complexity figure: two curves against N") {
  Campaign c = preset_campaign(FigureId::fig6a);
  c.sweep.values = {8, 16};
  const auto r = run_campaign(c);
  const auto dir = scratch("fig6a");
  const auto files = emit_plot_data(r, FigureId::fig6a, dir);
  REQUIRE(files.size() == 2);
  CHECK(files[0].filename() == "fig6a_ao.csv");
  CHECK(files[1].filename() == "fig6a_lc_ao.csv");
  const auto rows = lines(slurp(files[0]));
  CHECK(rows[0] == "N,real_adds,real_mults,predicted_adds,predicted_mults");
  const auto p = predicted_ao(4, 16, 3, 3, 3);
  CHECK(rows[2] == "16," + std::to_string(p.real_additions) + "," + std::to_string(p.real_multiplications) + "," +
                       std::to_string(p.real_additions) + "," + std::to_string(p.real_multiplications));
  CHECK_THROWS_AS(emit_plot_data(r, FigureId::fig6b, dir), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("empty campaigns produce an error, not empty files") {
  auto r = n_sweep_result();
  r.campaign.algorithms.clear();
  const auto dir = scratch("empty");
  CHECK_THROWS_AS(emit_plot_data(r, FigureId::fig5b, dir), ConfigError);
  auto no_points = n_sweep_result();
  no_points.points.clear();
  CHECK_THROWS_AS(emit_plot_data(no_points, FigureId::fig5b, dir), ConfigError);
  CHECK_FALSE(fs::exists(dir));
}
