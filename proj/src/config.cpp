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

#include "risscma/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <set>
#include <string>

#include "risscma/errors.hpp"

namespace risscma {

using nlohmann::json;

namespace {

const json& empty_object() {
  static const json e = json::object();
  return e;
}

std::string join(std::string_view prefix, std::string_view key) {
  return prefix.empty() ? std::string(key) : std::string(prefix) + "." + std::string(key);
}

// Typed accessor over one JSON object: every key read is recorded so that
// anything left over can be reported as unknown.
class Section {
 public:
  Section(const json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
    if (!j_.is_object()) throw ConfigError(prefix_.empty() ? "<root>" : prefix_, "expected an object");
  }

  const json* find(std::string_view key) {
    seen_.emplace(key);
    auto it = j_.find(std::string(key));
    return it == j_.end() ? nullptr : &*it;
  }

  std::string field(std::string_view key) const { return join(prefix_, key); }

  double real(std::string_view key, double fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(field(key), "expected a number");
    return v->get<double>();
  }

  std::uint64_t count(std::string_view key, std::uint64_t fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (v->is_number_unsigned()) return v->get<std::uint64_t>();
    if (v->is_number_integer()) throw ConfigError(field(key), "must be non-negative");
    throw ConfigError(field(key), "expected an integer");
  }

  unsigned small(std::string_view key, unsigned fallback) {
    const std::uint64_t v = count(key, fallback);
    if (v > std::numeric_limits<unsigned>::max()) throw ConfigError(field(key), "value too large");
    return static_cast<unsigned>(v);
  }

  bool boolean(std::string_view key, bool fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(field(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(std::string_view key, std::string fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(field(key), "expected a string");
    return v->get<std::string>();
  }

  const json& object(std::string_view key) {
    const json* v = find(key);
    return v ? *v : empty_object();
  }

  void reject_unknown() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(field(key), "unknown key '" + field(key) + "'");
    }
  }

 private:
  const json& j_;
  std::string prefix_;
  std::set<std::string, std::less<>> seen_;
};

template <class E, class Parse>
E enum_value(Section& s, std::string_view key, E fallback, Parse parse) {
  const json* v = s.find(key);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError(s.field(key), "expected a string");
  const auto parsed = parse(v->get<std::string>());
  if (!parsed) throw ConfigError(s.field(key), "unknown value '" + v->get<std::string>() + "'");
  return *parsed;
}

std::optional<LosPhase> parse_los(std::string_view s) {
  if (s == "zero") return LosPhase::zero;
  if (s == "uniform") return LosPhase::uniform;
  return std::nullopt;
}

std::string_view los_name(LosPhase p) { return p == LosPhase::zero ? "zero" : "uniform"; }

SweepSpec read_sweep(const json& j, const std::string& prefix, SweepSpec fallback) {
  Section s(j, prefix);
  SweepSpec out = fallback;
  out.axis = enum_value(s, "axis", fallback.axis, parse_axis);
  if (const json* v = s.find("values")) {
    if (!v->is_array()) throw ConfigError(s.field("values"), "expected an array of numbers");
    out.values.clear();
    for (const auto& x : *v) {
      if (!x.is_number()) throw ConfigError(s.field("values"), "expected an array of numbers");
      out.values.push_back(x.get<double>());
    }
  } else if (out.axis != fallback.axis) {
    throw ConfigError(s.field("values"), "required when the axis is changed");
  }
  s.reject_unknown();
  return out;
}

json sweep_to_json(const SweepSpec& s) {
  json values = json::array();
  for (double v : s.values) values.push_back(v);
  return {{"axis", std::string(to_string(s.axis))}, {"values", values}};
}

Campaign read_campaign(Section& root) {
  Campaign c;
  c.scenario = enum_value(root, "scenario", c.scenario, parse_scenario);

  {
    Section s(root.object("scma"), "scma");
    c.scma.num_users = s.count("users", c.scma.num_users);
    c.scma.num_ores = s.count("ores", c.scma.num_ores);
    c.scma.codebook_size = s.count("codebook_size", c.scma.codebook_size);
    c.scma.nonzero_per_user = s.count("nonzero_per_user", c.scma.nonzero_per_user);
    c.scma.nonzero_per_ore = s.count("nonzero_per_ore", c.scma.nonzero_per_ore);
    s.reject_unknown();
  }
  {
    Section s(root.object("geometry"), "geometry");
    auto& g = c.geometry;
    g.bs_user_distance = s.real("bs_user_distance", g.bs_user_distance);
    g.ris_perpendicular_offset = s.real("ris_perpendicular_offset", g.ris_perpendicular_offset);
    g.ris_horizontal_offset = s.real("ris_horizontal_offset", g.ris_horizontal_offset);
    g.carrier_frequency = s.real("carrier_frequency", g.carrier_frequency);
    g.direct_path_exponent = s.real("direct_path_exponent", g.direct_path_exponent);
    s.reject_unknown();
  }
  {
    Section s(root.object("fading"), "fading");
    auto& f = c.fading;
    f.rician_factor = s.real("rician_factor", f.rician_factor);
    f.noise_variance = s.real("noise_variance", f.noise_variance);
    f.symbol_energy = s.real("symbol_energy", f.symbol_energy);
    f.los_phase = enum_value(s, "los_phase", f.los_phase, parse_los);
    s.reject_unknown();
  }
  {
    Section s(root.object("ris"), "ris");
    c.elements = s.count("elements", c.elements);
    c.bits = s.small("bits", c.bits);
    c.iterations = s.small("iterations", c.iterations);
    s.reject_unknown();
  }

  const SweepSpec scenario_default{default_axis(c.scenario), default_grid(c.scenario)};
  if (const json* v = root.find("sweep")) {
    c.sweep = read_sweep(*v, "sweep", scenario_default);
  } else {
    c.sweep = scenario_default;
  }
  if (const json* v = root.find("series"); v && !v->is_null()) {
    c.series = read_sweep(*v, "series", SweepSpec{SweepAxis::elements, {}});
  }

  c.num_trials = root.count("trials", c.num_trials);
  c.master_seed = root.count("seed", c.master_seed);
  if (const json* v = root.find("algorithms")) {
    if (!v->is_array()) throw ConfigError("algorithms", "expected an array of names");
    c.algorithms.clear();
    for (const auto& x : *v) {
      const auto a = x.is_string() ? parse_algorithm(x.get<std::string>()) : std::nullopt;
      if (!a) throw ConfigError("algorithms", "unknown algorithm " + x.dump());
      c.algorithms.push_back(*a);
    }
  }
  c.exhaustive_budget = root.count("exhaustive_budget", c.exhaustive_budget);
  c.average_mode = enum_value(root, "average_mode", c.average_mode, parse_average_mode);
  return c;
}

OutputOptions read_output(const json& j) {
  Section s(j, "output");
  OutputOptions o;
  o.directory = s.string("directory", o.directory);
  if (const json* v = s.find("formats")) {
    if (!v->is_array()) throw ConfigError("output.formats", "expected an array of strings");
    o.formats.clear();
    for (const auto& x : *v) {
      if (!x.is_string() || (x != "csv" && x != "json")) {
        throw ConfigError("output.formats", "unsupported format " + x.dump() + " (csv, json)");
      }
      if (std::find(o.formats.begin(), o.formats.end(), x.get<std::string>()) != o.formats.end()) {
        throw ConfigError("output.formats", "duplicate format " + x.dump());
      }
      o.formats.push_back(x.get<std::string>());
    }
  }
  o.plots = s.boolean("plots", o.plots);
  o.timestamp = s.boolean("timestamp", o.timestamp);
  s.reject_unknown();
  if (o.directory.empty()) throw ConfigError("output.directory", "must not be empty");
  return o;
}

// 1-based line and column of the byte at `offset` (1-based, as reported by the parser).
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  const std::size_t end = std::min(offset > 0 ? offset - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json parse_document(std::string_view text) {
  if (std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); })) {
    return json::object();
  }
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = locate(text, e.byte);
    std::string what = e.what();
    if (const auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ConfigError("", what, line, column);
  }
}

RunConfig from_document(const json& doc) {
  Section root(doc, "");
  RunConfig rc;
  rc.campaign = read_campaign(root);
  rc.output = read_output(root.object("output"));
  rc.workers = root.small("workers", rc.workers);
  const json* v = root.find("verbosity");
  if (v) {
    if (!v->is_number_integer() || v->get<long long>() < 0 || v->get<long long>() > 2) {
      throw ConfigError("verbosity", "expected 0, 1 or 2");
    }
    rc.verbosity = v->get<int>();
  }
  root.reject_unknown();
  rc.campaign.validate();
  return rc;
}

}  // namespace

json campaign_to_json(const Campaign& c) {
  json algorithms = json::array();
  for (auto a : c.algorithms) algorithms.push_back(std::string(to_string(a)));
  json j;
  j["scenario"] = std::string(to_string(c.scenario));
  j["scma"] = {{"users", c.scma.num_users},
               {"ores", c.scma.num_ores},
               {"codebook_size", c.scma.codebook_size},
               {"nonzero_per_user", c.scma.nonzero_per_user},
               {"nonzero_per_ore", c.scma.nonzero_per_ore}};
  j["geometry"] = {{"bs_user_distance", c.geometry.bs_user_distance},
                   {"ris_perpendicular_offset", c.geometry.ris_perpendicular_offset},
                   {"ris_horizontal_offset", c.geometry.ris_horizontal_offset},
                   {"carrier_frequency", c.geometry.carrier_frequency},
                   {"direct_path_exponent", c.geometry.direct_path_exponent}};
  j["fading"] = {{"rician_factor", c.fading.rician_factor},
                 {"noise_variance", c.fading.noise_variance},
                 {"symbol_energy", c.fading.symbol_energy},
                 {"los_phase", std::string(los_name(c.fading.los_phase))}};
  j["ris"] = {{"elements", c.elements}, {"bits", c.bits}, {"iterations", c.iterations}};
  j["sweep"] = sweep_to_json(c.sweep);
  j["series"] = c.series ? sweep_to_json(*c.series) : json(nullptr);
  j["trials"] = c.num_trials;
  j["seed"] = c.master_seed;
  j["algorithms"] = algorithms;
  j["exhaustive_budget"] = c.exhaustive_budget;
  j["average_mode"] = std::string(to_string(c.average_mode));
  return j;
}

Campaign campaign_from_json(const json& j) {
  Section root(j, "");
  Campaign c = read_campaign(root);
  root.reject_unknown();
  c.validate();
  return c;
}

json to_json(const RunConfig& config) {
  json j = campaign_to_json(config.campaign);
  j["output"] = {{"directory", config.output.directory},
                 {"formats", config.output.formats},
                 {"plots", config.output.plots},
                 {"timestamp", config.output.timestamp}};
  j["workers"] = config.workers;
  j["verbosity"] = config.verbosity;
  return j;
}

RunConfig parse_config(std::string_view text) { return from_document(parse_document(text)); }

std::string serialize_config(const RunConfig& config) { return to_json(config).dump(2) + "\n"; }

void apply_override(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError(std::string(assignment), "override must look like key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  json doc = to_json(config);
  // A changed scenario should pick up its own default sweep unless one is given.
  if (key == "scenario") doc.erase("sweep");
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError(key, "malformed key");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      break;
    }
    if (!node->contains(part) || (*node)[part].is_null()) (*node)[part] = json::object();
    node = &(*node)[part];
    if (!node->is_object()) throw ConfigError(key, "'" + part + "' is not a section");
    start = dot + 1;
  }
  config = from_document(doc);
}

}  // namespace risscma
