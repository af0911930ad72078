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

#include "risscma/results_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "risscma/config.hpp"
#include "risscma/errors.hpp"

namespace risscma {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json ops_json(const OpCount& ops) {
  return {{"real_additions", ops.real_additions}, {"real_multiplications", ops.real_multiplications}};
}

OpCount ops_from_json(const json& j) {
  return {j.at("real_additions").get<std::uint64_t>(), j.at("real_multiplications").get<std::uint64_t>()};
}

// NaN and infinities have no JSON literal; they are stored as strings.
json number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  throw ConfigError("results", "bad number '" + s + "'");
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

void ensure_directory(const fs::path& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec || !fs::is_directory(directory)) {
    throw IoError("cannot create directory " + directory.string() + (ec ? ": " + ec.message() : ""));
  }
}

std::string label(double v) {
  std::string s = format_number(v);
  for (auto& ch : s) {
    if (ch == '.') ch = 'p';
  }
  return s;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string config_hash(const Campaign& campaign) {
  const std::string canonical = campaign_to_json(campaign).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

std::string results_csv(const CampaignResult& result) {
  const auto& c = result.campaign;
  std::string out;
  if (c.series) out += std::string(to_string(c.series->axis)) + ",";
  out += std::string(to_string(c.sweep.axis)) +
         ",algorithm,mean_snr_db,stderr_db,real_adds,real_mults,predicted_adds,predicted_mults,trials\n";
  for (const auto& p : result.points) {
    for (const auto& s : p.summaries) {
      if (c.series) out += (p.series_value ? format_number(*p.series_value) : std::string()) + ",";
      out += format_number(p.axis_value) + "," + std::string(to_string(s.algorithm)) + "," +
             format_number(s.snr_db) + "," + format_number(s.stderr_db) + "," +
             std::to_string(s.ops.real_additions) + "," + std::to_string(s.ops.real_multiplications) + "," +
             std::to_string(s.predicted.real_additions) + "," + std::to_string(s.predicted.real_multiplications) +
             "," + std::to_string(s.trials) + "\n";
    }
  }
  return out;
}

json results_json(const CampaignResult& result) {
  json points = json::array();
  for (const auto& p : result.points) {
    json summaries = json::array();
    for (const auto& s : p.summaries) {
      summaries.push_back({{"algorithm", std::string(to_string(s.algorithm))},
                           {"mean_linear", number_json(s.mean_linear)},
                           {"snr_db", number_json(s.snr_db)},
                           {"stderr_db", number_json(s.stderr_db)},
                           {"ops", ops_json(s.ops)},
                           {"predicted", ops_json(s.predicted)},
                           {"trials", s.trials}});
    }
    points.push_back({{"series_value", p.series_value ? json(*p.series_value) : json(nullptr)},
                      {"axis_value", p.axis_value},
                      {"ordering_violations", p.ordering_violations},
                      {"summaries", summaries}});
  }
  json j;
  j["campaign"] = campaign_to_json(result.campaign);
  j["config_hash"] = config_hash(result.campaign);
  j["seed"] = result.campaign.master_seed;
  j["points"] = points;
  if (result.timestamp) j["timestamp"] = *result.timestamp;
  return j;
}

std::string results_json_text(const CampaignResult& result) { return results_json(result).dump(2) + "\n"; }

CampaignResult results_from_json(const json& j) {
  CampaignResult r;
  try {
    r.campaign = campaign_from_json(j.at("campaign"));
    if (j.at("config_hash").get<std::string>() != config_hash(r.campaign)) {
      throw ConfigError("config_hash", "does not match the embedded campaign");
    }
    if (j.at("seed").get<std::uint64_t>() != r.campaign.master_seed) {
      throw ConfigError("seed", "does not match the embedded campaign");
    }
    for (const auto& pj : j.at("points")) {
      GridPoint p;
      if (!pj.at("series_value").is_null()) p.series_value = pj.at("series_value").get<double>();
      p.axis_value = pj.at("axis_value").get<double>();
      p.ordering_violations = pj.at("ordering_violations").get<std::uint64_t>();
      for (const auto& sj : pj.at("summaries")) {
        AlgorithmSummary s;
        const auto alg = parse_algorithm(sj.at("algorithm").get<std::string>());
        if (!alg) throw ConfigError("points.summaries.algorithm", "unknown algorithm");
        s.algorithm = *alg;
        s.mean_linear = number_from_json(sj.at("mean_linear"));
        s.snr_db = number_from_json(sj.at("snr_db"));
        s.stderr_db = number_from_json(sj.at("stderr_db"));
        s.ops = ops_from_json(sj.at("ops"));
        s.predicted = ops_from_json(sj.at("predicted"));
        s.trials = sj.at("trials").get<std::uint64_t>();
        p.summaries.push_back(s);
      }
      r.points.push_back(std::move(p));
    }
    if (j.contains("timestamp")) r.timestamp = j.at("timestamp").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError("results", e.what());
  }
  return r;
}

std::vector<fs::path> write_results(const CampaignResult& result, const std::vector<std::string>& formats,
                                    const fs::path& directory, std::string_view stem) {
  ensure_directory(directory);
  std::vector<fs::path> written;
  for (const auto& format : formats) {
    const fs::path path = directory / (std::string(stem) + "." + format);
    if (format == "csv") {
      write_file(path, results_csv(result));
    } else if (format == "json") {
      write_file(path, results_json_text(result));
    } else {
      throw ConfigError("output.formats", "unsupported format '" + format + "'");
    }
    written.push_back(path);
  }
  return written;
}

std::vector<fs::path> emit_plot_data(const CampaignResult& result, FigureId figure, const fs::path& directory) {
  const auto& c = result.campaign;
  if (!figure_matches(figure, c)) {
    throw ConfigError("scenario", "campaign scenario " + std::string(to_string(c.scenario)) + " cannot produce " +
                                      std::string(to_string(figure)));
  }
  if (c.algorithms.empty()) throw ConfigError("algorithms", "no algorithms to plot");
  if (result.points.empty()) throw ConfigError("sweep.values", "no grid points to plot");

  const bool complexity = c.scenario == Scenario::complexity_grid;
  const std::string axis(to_string(c.sweep.axis));
  std::vector<std::optional<double>> curves;
  for (const auto& p : result.points) {
    if (std::find(curves.begin(), curves.end(), p.series_value) == curves.end()) curves.push_back(p.series_value);
  }

  ensure_directory(directory);
  std::vector<fs::path> written;
  for (const auto& curve : curves) {
    for (auto alg : c.algorithms) {
      if (complexity && alg != Algorithm::ao && alg != Algorithm::lc_ao) continue;
      std::string name(to_string(figure));
      if (curve && c.series) name += "_" + std::string(to_string(c.series->axis)) + label(*curve);
      name += "_" + std::string(to_string(alg)) + ".csv";

      std::string text = axis + (complexity ? ",real_adds,real_mults,predicted_adds,predicted_mults\n"
                                            : ",snr_db,stderr_db\n");
      for (const auto& p : result.points) {
        if (p.series_value != curve) continue;
        const auto& s = p.summary(alg);
        text += format_number(p.axis_value) + ",";
        if (complexity) {
          text += std::to_string(s.ops.real_additions) + "," + std::to_string(s.ops.real_multiplications) + "," +
                  std::to_string(s.predicted.real_additions) + "," +
                  std::to_string(s.predicted.real_multiplications) + "\n";
        } else {
          text += format_number(s.snr_db) + "," + format_number(s.stderr_db) + "\n";
        }
      }
      const fs::path path = directory / name;
      write_file(path, text);
      written.push_back(path);
    }
  }
  if (written.empty()) throw ConfigError("algorithms", "no plottable algorithm for " + std::string(to_string(figure)));
  return written;
}

}  // namespace risscma
