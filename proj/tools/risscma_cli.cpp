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

// risscma: Monte Carlo front end for RIS-assisted SCMA phase optimization.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "risscma/complexity.hpp"
#include "risscma/config.hpp"
#include "risscma/errors.hpp"
#include "risscma/phase_optimizer.hpp"
#include "risscma/results_io.hpp"
#include "risscma/sim_harness.hpp"

namespace {

using namespace risscma;
using nlohmann::json;

struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> workers;
};

int error_line(const std::string& kind, const std::string& message, json extra = json::object()) {
  json e = {{"error", kind}, {"message", message}};
  e.update(extra);
  std::cerr << e.dump() << "\n";
  return kind == "usage_error" ? 2 : 1;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Precedence: command-line flag, then environment, then config.
void apply_flags(RunConfig& rc, const GlobalFlags& flags) {
  if (const char* env = std::getenv("RISSCMA_OUTPUT_DIR"); env && *env) rc.output.directory = env;
  if (flags.out) rc.output.directory = *flags.out;
  if (flags.seed) rc.campaign.master_seed = *flags.seed;
  if (flags.workers) rc.workers = *flags.workers;
  rc.campaign.validate();
}

std::optional<FigureId> figure_for(const Campaign& c) {
  for (auto f : {FigureId::fig2, FigureId::fig4, FigureId::fig5a, FigureId::fig5b, FigureId::fig6a, FigureId::fig6b}) {
    if (figure_matches(f, c)) return f;
  }
  return std::nullopt;
}

void print_summary(const CampaignResult& r, std::ostream& os) {
  const auto& c = r.campaign;
  for (const auto& p : r.points) {
    os << "  ";
    if (p.series_value) os << to_string(c.series->axis) << "=" << format_number(*p.series_value) << " ";
    os << to_string(c.sweep.axis) << "=" << format_number(p.axis_value);
    for (const auto& s : p.summaries) {
      os << "  " << to_string(s.algorithm) << " " << std::fixed << std::setprecision(3) << s.snr_db << " dB";
      os.unsetf(std::ios::floatfield);
    }
    if (p.ordering_violations) os << "  [" << p.ordering_violations << " ordering violations]";
    os << "\n";
  }
}

int execute(RunConfig rc, std::optional<FigureId> figure) {
  if (rc.verbosity > 0) {
    std::cerr << "running " << to_string(rc.campaign.scenario) << " with " << rc.campaign.num_trials
              << " trials per point (seed " << rc.campaign.master_seed << ")\n";
  }
  CampaignResult result = run_campaign(rc.campaign, rc.workers);
  if (rc.output.timestamp) result.timestamp = utc_timestamp();

  auto written = write_results(result, rc.output.formats, rc.output.directory);
  if (!figure && rc.output.plots) figure = figure_for(rc.campaign);
  if (figure) {
    const auto plots = emit_plot_data(result, *figure, rc.output.directory);
    written.insert(written.end(), plots.begin(), plots.end());
  }
  if (rc.verbosity > 0) print_summary(result, std::cout);
  for (const auto& p : written) std::cout << "wrote " << p.string() << "\n";

  std::uint64_t violations = 0;
  for (const auto& p : result.points) violations += p.ordering_violations;
  if (violations > 0) {
    return error_line("ordering_violation", "optimizer ordering checks failed",
                      {{"count", violations}});
  }
  return 0;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Grid syntax: "default", or "R=1,4;N=1,2,8,16;b=1,2,3;df=1,3;T=1,3" with any
// key omitted taking its default list.
struct ComplexityGrid {
  std::vector<std::uint64_t> R{1, 4}, N{1, 2, 8, 16}, b{1, 2, 3}, df{1, 3}, T{1, 3};
};

ComplexityGrid parse_grid(const std::string& text) {
  ComplexityGrid g;
  if (text == "default") return g;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("grid", "expected key=v1,v2,... in '" + item + "'");
    const std::string key = item.substr(0, eq);
    std::vector<std::uint64_t>* list = key == "R" ? &g.R
                                       : key == "N" ? &g.N
                                       : key == "b" ? &g.b
                                       : key == "df" ? &g.df
                                       : key == "T" ? &g.T
                                                    : nullptr;
    if (!list) throw ConfigError("grid", "unknown key '" + key + "' (R, N, b, df, T)");
    list->clear();
    std::stringstream vs(item.substr(eq + 1));
    std::string v;
    while (std::getline(vs, v, ',')) {
      std::size_t used = 0;
      unsigned long long x = 0;
      try {
        x = std::stoull(v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != v.size() || x == 0) throw ConfigError("grid." + key, "expected positive integers, got '" + v + "'");
      list->push_back(x);
    }
    if (list->empty()) throw ConfigError("grid." + key, "empty list");
  }
  for (auto b : g.b) {
    if (b > 16) throw ConfigError("grid.b", "b larger than 16 is not supported");
  }
  return g;
}

int verify_complexity(const std::string& grid_text) {
  const ComplexityGrid g = parse_grid(grid_text);
  std::cout << "R,N,b,df,T,algorithm,measured_adds,predicted_adds,measured_mults,predicted_mults,add_delta\n";
  std::size_t rows = 0, unexplained = 0, leading_order_only = 0;
  for (auto R : g.R)
    for (auto N : g.N)
      for (auto b : g.b)
        for (auto df : g.df)
          for (auto T : g.T) {
            ComplexityInstance inst{R, N, static_cast<unsigned>(b), df, static_cast<unsigned>(T), 1};
            for (auto kind : {OptimizerKind::ao, OptimizerKind::lc_ao}) {
              const OpCount m = measured_run(kind, inst);
              const OpCount p = kind == OptimizerKind::ao ? predicted_ao(R, N, inst.bits, df, T)
                                                          : predicted_lc_ao(R, N, inst.bits, df, T);
              const auto delta = static_cast<std::int64_t>(m.real_additions) -
                                 static_cast<std::int64_t>(p.real_additions);
              const std::int64_t expected_delta = kind == OptimizerKind::ao ? 0 : lc_ao_addition_excess(R, N, T);
              const bool mults_ok = m.real_multiplications == p.real_multiplications;
              if (!mults_ok || delta != expected_delta) ++unexplained;
              if (delta != 0) ++leading_order_only;
              std::cout << R << "," << N << "," << b << "," << df << "," << T << ","
                        << (kind == OptimizerKind::ao ? "ao" : "lc_ao") << "," << m.real_additions << ","
                        << p.real_additions << "," << m.real_multiplications << "," << p.real_multiplications << ","
                        << delta << "\n";
              ++rows;
            }
          }
  std::cerr << rows << " rows: " << rows - leading_order_only << " exact, " << leading_order_only
            << " with the documented LC-AO addition delta R*T*N*(N-2), " << unexplained << " unexplained\n";
  if (unexplained > 0) {
    return error_line("complexity_mismatch", "measured counts differ from the closed forms",
                      {{"unexplained_rows", unexplained}});
  }
  return 0;
}

// Oracle-equivalence checks at small N on seeded random instances.
int selftest(std::uint64_t seed) {
  std::size_t failures = 0;
  auto report = [&](const char* name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "  " << detail << "\n";
    if (!ok) ++failures;
  };

  const Geometry geom;
  const FadingConfig fading;
  std::size_t instances = 0, ao_lc_mismatch = 0, oracle_breach = 0, ascent_breach = 0, decomposition_breach = 0;
  double worst_rel = 0.0;
  for (std::size_t N : {1, 2, 3, 4}) {
    for (unsigned b : {1u, 2u}) {
      for (std::size_t trial = 0; trial < 25; ++trial) {
        Rng rng(split_seed(seed, N * 16 + b, trial));
        const auto ch = draw_channels(rng, 2, 3, geom, fading, N);
        const PhaseAlphabet alphabet(b);
        double last = -1.0;
        std::size_t last_ore = SIZE_MAX;
        const auto ao = ao_optimize(ch, alphabet, 3, nullptr,
                                    [&](std::size_t ore, unsigned, std::size_t, double objective) {
                                      if (ore == last_ore && objective < last * (1.0 - 1e-12)) ++ascent_breach;
                                      last_ore = ore;
                                      last = objective;
                                    });
        const auto lc = lc_ao_optimize(ch, alphabet, 3);
        const auto ex = exhaustive_optimize(ch, alphabet);
        const auto blind = blind_phases(N, ch.num_ores(), alphabet);
        for (std::size_t r = 0; r < ch.num_ores(); ++r) {
          const auto& ore = ch.ores[r];
          if (ao.per_ore[r] != lc.per_ore[r]) ++ao_lc_mismatch;
          const double g_ex = composite_gain(ore, ex.per_ore[r], alphabet);
          const double g_ao = composite_gain(ore, ao.per_ore[r], alphabet);
          const double g_blind = composite_gain(ore, blind.per_ore[r], alphabet);
          if (g_ex < g_ao || g_ao < g_blind) ++oracle_breach;
          const double total = snr_decomposition(ore, ao.per_ore[r], alphabet).total();
          const double rel = std::abs(total - g_ao) / g_ao;
          worst_rel = std::max(worst_rel, rel);
          if (rel > 1e-10) ++decomposition_breach;
        }
        ++instances;
      }
    }
  }
  const std::string n = std::to_string(instances) + " instances";
  report("ao_equals_lc_ao", ao_lc_mismatch == 0, n + ", " + std::to_string(ao_lc_mismatch) + " mismatched OREs");
  report("exhaustive_ge_ao_ge_blind", oracle_breach == 0, n + ", " + std::to_string(oracle_breach) + " breaches");
  report("monotone_ascent", ascent_breach == 0, std::to_string(ascent_breach) + " decreasing updates");
  std::ostringstream rel;
  rel << "worst relative error " << worst_rel;
  report("decomposition", decomposition_breach == 0, rel.str());

  const bool spot = predicted_ao(4, 16, 3, 3).real_additions == 117248 &&
                    predicted_lc_ao(4, 16, 3, 3).real_additions == 26112;
  report("complexity_spot_values", spot, "RA_AO(4,16,3,3), RA_LC-AO(4,16,3,3)");
  const ComplexityInstance inst{4, 8, 2, 3, 1, seed};
  const bool ao_exact = measured_run(OptimizerKind::ao, inst) == predicted_ao(4, 8, 2, 3);
  report("complexity_ao_exact", ao_exact, "R=4 N=8 b=2 df=3 T=1");

  if (failures > 0) return error_line("selftest_failed", std::to_string(failures) + " check(s) failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"risscma: discrete RIS phase optimization for uplink SCMA"};
  app.require_subcommand(1);
  GlobalFlags flags;
  std::uint64_t seed = 0;
  std::string out;
  unsigned workers = 0;
  auto* seed_opt = app.add_option("--seed", seed, "override the master seed");
  auto* out_opt = app.add_option("--out", out, "output directory (overrides RISSCMA_OUTPUT_DIR)");
  auto* workers_opt = app.add_option("--workers", workers, "worker threads, 0 = all cores");

  std::string config_path;
  auto* run = app.add_subcommand("run", "run a campaign from a JSON config file");
  run->add_option("config", config_path, "config file")->required();

  std::string figure_name;
  std::vector<std::string> overrides;
  auto* sweep = app.add_subcommand("sweep", "run a figure preset, optionally with key=value overrides");
  sweep->add_option("figure", figure_name, "fig2, fig4, fig5a, fig5b, fig6a or fig6b")->required();
  sweep->add_option("overrides", overrides, "dotted config keys, e.g. trials=500 ris.bits=2");

  std::string grid = "default";
  auto* verify = app.add_subcommand("verify-complexity", "compare counted operations with the closed forms");
  verify->add_option("grid", grid, "'default' or e.g. 'R=4;N=8,16;b=3;df=3;T=1'");

  auto* self = app.add_subcommand("selftest", "oracle-equivalence checks at small N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return error_line("usage_error", e.what());
  }
  if (*seed_opt) flags.seed = seed;
  if (*out_opt) flags.out = out;
  if (*workers_opt) flags.workers = workers;

  try {
    if (*run) {
      RunConfig rc = parse_config(read_text(config_path));
      apply_flags(rc, flags);
      return execute(rc, std::nullopt);
    }
    if (*sweep) {
      const auto figure = parse_figure(figure_name);
      if (!figure) return error_line("usage_error", "unknown figure '" + figure_name + "'");
      RunConfig rc;
      rc.campaign = preset_campaign(*figure);
      for (const auto& o : overrides) apply_override(rc, o);
      apply_flags(rc, flags);
      if (!figure_matches(*figure, rc.campaign)) {
        return error_line("config_error", "overrides changed the scenario away from " + figure_name,
                          {{"field", "scenario"}});
      }
      return execute(rc, figure);
    }
    if (*verify) return verify_complexity(grid);
    if (*self) return selftest(flags.seed.value_or(1));
  } catch (const ConfigError& e) {
    json extra = {{"field", e.field()}};
    if (e.line() > 0) {
      extra["line"] = e.line();
      extra["column"] = e.column();
    }
    return error_line(e.kind(), e.what(), extra);
  } catch (const Error& e) {
    return error_line(e.kind(), e.what());
  } catch (const std::exception& e) {
    return error_line("internal_error", e.what());
  }
  return 0;
}
