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

#include "risscma/sim_harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <utility>

#include "risscma/errors.hpp"

namespace risscma {

namespace {

template <class E, std::size_t K>
using NameTable = std::array<std::pair<E, std::string_view>, K>;

constexpr NameTable<Scenario, 5> kScenarioNames{{{Scenario::deploy_sweep, "deploy_sweep"},
                                                 {Scenario::bits_sweep, "bits_sweep"},
                                                 {Scenario::n_sweep, "n_sweep"},
                                                 {Scenario::convergence, "convergence"},
                                                 {Scenario::complexity_grid, "complexity_grid"}}};
constexpr NameTable<Algorithm, 5> kAlgorithmNames{{{Algorithm::blind, "blind"},
                                                   {Algorithm::ao, "ao"},
                                                   {Algorithm::lc_ao, "lc_ao"},
                                                   {Algorithm::exhaustive, "exhaustive"},
                                                   {Algorithm::no_ris, "no_ris"}}};
constexpr NameTable<SweepAxis, 4> kAxisNames{{{SweepAxis::ris_offset, "d0"},
                                              {SweepAxis::bits, "b"},
                                              {SweepAxis::elements, "N"},
                                              {SweepAxis::iterations, "T"}}};
constexpr NameTable<AverageMode, 2> kAverageNames{
    {{AverageMode::db_of_mean, "db_of_mean"}, {AverageMode::mean_of_db, "mean_of_db"}}};
constexpr NameTable<FigureId, 6> kFigureNames{{{FigureId::fig2, "fig2"},
                                               {FigureId::fig4, "fig4"},
                                               {FigureId::fig5a, "fig5a"},
                                               {FigureId::fig5b, "fig5b"},
                                               {FigureId::fig6a, "fig6a"},
                                               {FigureId::fig6b, "fig6b"}}};

template <class E, std::size_t K>
std::string_view name_of(const NameTable<E, K>& table, E e) {
  for (const auto& [value, name] : table) {
    if (value == e) return name;
  }
  return "?";
}

template <class E, std::size_t K>
std::optional<E> value_of(const NameTable<E, K>& table, std::string_view s) {
  for (const auto& [value, name] : table) {
    if (name == s) return value;
  }
  return std::nullopt;
}

bool has(const std::vector<Algorithm>& algs, Algorithm a) { return std::find(algs.begin(), algs.end(), a) != algs.end(); }

void check_grid(const SweepSpec& spec, const std::string& field) {
  if (spec.values.empty()) throw ConfigError(field + ".values", "grid must not be empty");
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    const double v = spec.values[i];
    if (!std::isfinite(v)) throw ConfigError(field + ".values", "non-finite grid value");
    if (i > 0 && !(v > spec.values[i - 1])) throw ConfigError(field + ".values", "grid must be strictly increasing");
    if (spec.axis != SweepAxis::ris_offset) {
      if (v < 1.0 || v != std::floor(v)) {
        throw ConfigError(field + ".values", "axis " + std::string(to_string(spec.axis)) + " needs integers >= 1");
      }
    }
  }
}

// Runs fn(i) for i in [0, count) on `workers` threads; first exception wins.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct TrialOutcome {
  std::vector<double> value;  // per algorithm: ORE-average linear SNR
  std::vector<OpCount> ops;
  std::uint64_t violations = 0;
};

TrialOutcome run_trial(const Campaign& c, const FactorGraph& graph, const PointParameters& p,
                       const PhaseAlphabet& alphabet, std::size_t trial) {
  Rng rng(trial_seed(c.master_seed, p.elements, trial));
  const auto ch = draw_channels(rng, graph, p.geometry, c.fading, p.elements);

  TrialOutcome out;
  out.value.resize(c.algorithms.size());
  out.ops.resize(c.algorithms.size());
  std::optional<PhaseAssignment> ao, lc, ex, blind;
  for (std::size_t a = 0; a < c.algorithms.size(); ++a) {
    SnrReport report;
    switch (c.algorithms[a]) {
      case Algorithm::blind:
        blind = blind_phases(p.elements, ch.num_ores(), alphabet);
        report = received_snr(ch, *blind, alphabet, c.fading);
        break;
      case Algorithm::ao:
        ao = ao_optimize(ch, alphabet, p.iterations, &out.ops[a]);
        report = received_snr(ch, *ao, alphabet, c.fading);
        break;
      case Algorithm::lc_ao:
        lc = lc_ao_optimize(ch, alphabet, p.iterations, &out.ops[a]);
        report = received_snr(ch, *lc, alphabet, c.fading);
        break;
      case Algorithm::exhaustive:
        ex = exhaustive_optimize(ch, alphabet, c.exhaustive_budget);
        report = received_snr(ch, *ex, alphabet, c.fading);
        break;
      case Algorithm::no_ris:
        report = direct_only_snr(ch, c.fading);
        break;
    }
    out.value[a] = report.mean_linear();
  }

  // Paired ordering on this draw; all gains come from the same evaluation
  // routine, so the comparisons are exact.
  const PhaseAssignment* optimized = lc ? &*lc : (ao ? &*ao : nullptr);
  for (std::size_t r = 0; r < ch.num_ores(); ++r) {
    const auto& ore = ch.ores[r];
    if (ao && lc && ao->per_ore[r] != lc->per_ore[r]) ++out.violations;
    if (optimized) {
      const double g_opt = composite_gain(ore, optimized->per_ore[r], alphabet);
      if (ex && composite_gain(ore, ex->per_ore[r], alphabet) < g_opt) ++out.violations;
      if (blind && g_opt < composite_gain(ore, blind->per_ore[r], alphabet)) ++out.violations;
    }
  }
  return out;
}

AlgorithmSummary summarize(const Campaign& c, const PointParameters& p, std::size_t a,
                           const std::vector<TrialOutcome>& trials) {
  AlgorithmSummary s;
  s.algorithm = c.algorithms[a];
  s.trials = trials.size();
  const double n = static_cast<double>(trials.size());

  double sum = 0.0;
  for (const auto& t : trials) sum += t.value[a];
  s.mean_linear = sum / n;

  if (c.average_mode == AverageMode::db_of_mean) {
    double ss = 0.0;
    for (const auto& t : trials) ss += (t.value[a] - s.mean_linear) * (t.value[a] - s.mean_linear);
    const double se = trials.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    s.snr_db = to_db(s.mean_linear);
    s.stderr_db = 10.0 / std::log(10.0) * se / s.mean_linear;
  } else {
    double mean_db = 0.0;
    for (const auto& t : trials) mean_db += to_db(t.value[a]);
    mean_db /= n;
    double ss = 0.0;
    for (const auto& t : trials) ss += (to_db(t.value[a]) - mean_db) * (to_db(t.value[a]) - mean_db);
    s.snr_db = mean_db;
    s.stderr_db = trials.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  }

  s.ops = trials.front().ops[a];
  const std::uint64_t R = c.scma.num_ores;
  const std::uint64_t df = c.scma.nonzero_per_ore;
  if (s.algorithm == Algorithm::ao) s.predicted = predicted_ao(R, p.elements, p.bits, df, p.iterations);
  if (s.algorithm == Algorithm::lc_ao) s.predicted = predicted_lc_ao(R, p.elements, p.bits, df, p.iterations);
  return s;
}

}  // namespace

std::string_view to_string(Scenario s) { return name_of(kScenarioNames, s); }
std::string_view to_string(Algorithm a) { return name_of(kAlgorithmNames, a); }
std::string_view to_string(SweepAxis a) { return name_of(kAxisNames, a); }
std::string_view to_string(AverageMode m) { return name_of(kAverageNames, m); }
std::string_view to_string(FigureId f) { return name_of(kFigureNames, f); }
std::optional<Scenario> parse_scenario(std::string_view s) { return value_of(kScenarioNames, s); }
std::optional<Algorithm> parse_algorithm(std::string_view s) { return value_of(kAlgorithmNames, s); }
std::optional<SweepAxis> parse_axis(std::string_view s) { return value_of(kAxisNames, s); }
std::optional<AverageMode> parse_average_mode(std::string_view s) { return value_of(kAverageNames, s); }
std::optional<FigureId> parse_figure(std::string_view s) { return value_of(kFigureNames, s); }

SweepAxis default_axis(Scenario s) {
  switch (s) {
    case Scenario::deploy_sweep: return SweepAxis::ris_offset;
    case Scenario::bits_sweep: return SweepAxis::bits;
    case Scenario::n_sweep: return SweepAxis::elements;
    case Scenario::convergence: return SweepAxis::iterations;
    case Scenario::complexity_grid: return SweepAxis::elements;
  }
  return SweepAxis::elements;
}

std::vector<double> default_grid(Scenario s) {
  switch (s) {
    case Scenario::deploy_sweep: return {2, 5, 10, 20, 30, 35, 38};
    case Scenario::bits_sweep: return {1, 2, 3, 4};
    case Scenario::n_sweep: return {16, 32, 64};
    case Scenario::convergence: return {1, 2, 3, 4, 5, 6};
    case Scenario::complexity_grid: return {8, 16, 24, 32, 40, 48, 56, 64};
  }
  return {};
}

void Campaign::validate() const {
  scma.validate();
  build_factor_graph(scma);
  geometry.validate();
  fading.validate();
  if (elements == 0) throw ConfigError("ris.elements", "N must be at least 1");
  PhaseAlphabet check_bits(bits);
  if (iterations == 0) throw ConfigError("ris.iterations", "T must be at least 1");
  if (num_trials == 0) throw ConfigError("trials", "must be at least 1");
  if (algorithms.empty()) throw ConfigError("algorithms", "at least one algorithm is required");
  for (std::size_t i = 0; i < algorithms.size(); ++i) {
    for (std::size_t j = i + 1; j < algorithms.size(); ++j) {
      if (algorithms[i] == algorithms[j]) {
        throw ConfigError("algorithms", "duplicate entry " + std::string(to_string(algorithms[i])));
      }
    }
  }

  check_grid(sweep, "sweep");
  const bool axis_ok = scenario == Scenario::complexity_grid
                           ? (sweep.axis == SweepAxis::elements || sweep.axis == SweepAxis::bits)
                           : sweep.axis == default_axis(scenario);
  if (!axis_ok) {
    throw ConfigError("sweep.axis", "axis " + std::string(to_string(sweep.axis)) + " does not fit scenario " +
                                        std::string(to_string(scenario)));
  }
  if (series) {
    check_grid(*series, "series");
    if (series->axis == sweep.axis) throw ConfigError("series.axis", "must differ from the sweep axis");
  }

  const std::vector<double> series_values = series ? series->values : std::vector<double>{0.0};
  for (double sv : series_values) {
    for (double v : sweep.values) {
      const auto p = point_parameters(*this, series ? std::optional<double>(sv) : std::nullopt, v);
      p.geometry.validate();
      PhaseAlphabet check(p.bits);
      if (has(algorithms, Algorithm::exhaustive)) {
        const std::uint64_t bits_total = static_cast<std::uint64_t>(p.bits) * p.elements;
        if (bits_total >= 64 || (std::uint64_t{1} << bits_total) > exhaustive_budget) {
          throw BudgetError("exhaustive search at N=" + std::to_string(p.elements) + ", b=" +
                            std::to_string(p.bits) + " exceeds the budget of " +
                            std::to_string(exhaustive_budget) + " evaluations per ORE");
        }
      }
    }
  }
}

const AlgorithmSummary& GridPoint::summary(Algorithm a) const {
  for (const auto& s : summaries) {
    if (s.algorithm == a) return s;
  }
  throw std::out_of_range("algorithm " + std::string(to_string(a)) + " not in grid point");
}

PointParameters point_parameters(const Campaign& c, std::optional<double> series_value, double axis_value) {
  PointParameters p{c.geometry, c.elements, c.bits, c.iterations};
  auto apply = [&p](SweepAxis axis, double v) {
    switch (axis) {
      case SweepAxis::ris_offset: p.geometry.ris_horizontal_offset = v; break;
      case SweepAxis::bits: p.bits = static_cast<unsigned>(v); break;
      case SweepAxis::elements: p.elements = static_cast<std::size_t>(v); break;
      case SweepAxis::iterations: p.iterations = static_cast<unsigned>(v); break;
    }
  };
  if (c.series && series_value) apply(c.series->axis, *series_value);
  apply(c.sweep.axis, axis_value);
  return p;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t elements, std::size_t trial) {
  return split_seed(master_seed, elements, trial);
}

CampaignResult run_campaign(const Campaign& c, unsigned workers) {
  c.validate();
  const FactorGraph graph = build_factor_graph(c.scma);
  CampaignResult result;
  result.campaign = c;

  std::vector<std::optional<double>> series_values;
  if (c.series) {
    for (double v : c.series->values) series_values.emplace_back(v);
  } else {
    series_values.emplace_back(std::nullopt);
  }

  for (const auto& sv : series_values) {
    for (double v : c.sweep.values) {
      const PointParameters p = point_parameters(c, sv, v);
      const PhaseAlphabet alphabet(p.bits);
      std::vector<TrialOutcome> trials(c.num_trials);
      parallel_for(c.num_trials, workers,
                   [&](std::size_t t) { trials[t] = run_trial(c, graph, p, alphabet, t); });

      GridPoint point;
      point.series_value = sv;
      point.axis_value = v;
      for (std::size_t a = 0; a < c.algorithms.size(); ++a) point.summaries.push_back(summarize(c, p, a, trials));
      for (const auto& t : trials) point.ordering_violations += t.violations;
      result.points.push_back(std::move(point));
    }
  }
  return result;
}

DeployProfile deploy_sweep_profile(const CampaignResult& result, Algorithm algorithm,
                                   std::optional<double> series_value) {
  if (result.campaign.scenario != Scenario::deploy_sweep) {
    throw ConfigError("scenario", "deploy profile needs a deploy_sweep campaign");
  }
  DeployProfile prof;
  for (const auto& p : result.points) {
    if (series_value && p.series_value != series_value) continue;
    if (!series_value && result.campaign.series && p.series_value != result.points.front().series_value) continue;
    prof.offsets.push_back(p.axis_value);
    prof.snr_db.push_back(p.summary(algorithm).snr_db);
  }
  if (prof.offsets.size() < 3) throw ConfigError("sweep.values", "degenerate grid: need at least three d0 values");

  const auto [lo, hi] = std::minmax_element(prof.snr_db.begin(), prof.snr_db.end());
  const auto imin = static_cast<std::size_t>(lo - prof.snr_db.begin());
  prof.argmin_offset = prof.offsets[imin];
  for (std::size_t i = 0; i < prof.snr_db.size(); ++i) {
    if (prof.snr_db[i] == *hi) prof.argmax_offsets.push_back(prof.offsets[i]);
  }
  prof.u_shaped = imin > 0 && imin + 1 < prof.snr_db.size() && prof.snr_db.front() > *lo && prof.snr_db.back() > *lo;
  return prof;
}

std::vector<cplx> synthesize_received_signal(const ChannelRealization& ch, const PhaseAssignment& phases,
                                             const PhaseAlphabet& alphabet,
                                             std::span<const std::vector<cplx>> codewords, double noise_variance,
                                             Rng& rng) {
  if (codewords.size() != ch.num_ores()) throw DimensionError("one codeword vector per ORE required");
  if (phases.per_ore.size() != ch.num_ores()) throw DimensionError("assignment/ORE count mismatch");
  if (noise_variance < 0.0) throw std::invalid_argument("noise variance must be non-negative");
  std::vector<cplx> y(ch.num_ores());
  for (std::size_t r = 0; r < ch.num_ores(); ++r) {
    const auto composite = composite_channel(ch.ores[r], phases.per_ore[r], alphabet);
    if (codewords[r].size() != composite.size()) {
      throw DimensionError("ORE " + std::to_string(r) + ": expected " + std::to_string(composite.size()) +
                           " codeword symbols");
    }
    cplx acc;
    for (std::size_t i = 0; i < composite.size(); ++i) acc += composite[i] * codewords[r][i];
    y[r] = acc + std::sqrt(noise_variance) * rng.circular_gaussian();
  }
  return y;
}

Campaign preset_campaign(FigureId figure) {
  Campaign c;
  c.num_trials = 2000;
  switch (figure) {
    case FigureId::fig2:
      c.scenario = Scenario::deploy_sweep;
      c.sweep = {SweepAxis::ris_offset, default_grid(c.scenario)};
      c.series = SweepSpec{SweepAxis::elements, {16, 32, 64}};
      break;
    case FigureId::fig4:
      c.scenario = Scenario::bits_sweep;
      c.sweep = {SweepAxis::bits, {1, 2, 3, 4, 5}};
      c.series = SweepSpec{SweepAxis::elements, {16, 32, 64}};
      break;
    case FigureId::fig5a:
      c.scenario = Scenario::convergence;
      c.sweep = {SweepAxis::iterations, default_grid(c.scenario)};
      c.series = SweepSpec{SweepAxis::elements, {16, 32, 64}};
      break;
    case FigureId::fig5b:
      c.scenario = Scenario::n_sweep;
      c.sweep = {SweepAxis::elements, {8, 16, 24, 32, 40, 48, 56, 64}};
      c.algorithms = {Algorithm::no_ris, Algorithm::blind, Algorithm::ao, Algorithm::lc_ao};
      break;
    case FigureId::fig6a:
      c.scenario = Scenario::complexity_grid;
      c.sweep = {SweepAxis::elements, default_grid(c.scenario)};
      c.algorithms = {Algorithm::ao, Algorithm::lc_ao};
      c.num_trials = 1;
      break;
    case FigureId::fig6b:
      c.scenario = Scenario::complexity_grid;
      c.elements = 32;
      c.sweep = {SweepAxis::bits, {1, 2, 3, 4, 5}};
      c.algorithms = {Algorithm::ao, Algorithm::lc_ao};
      c.num_trials = 1;
      break;
  }
  return c;
}

bool figure_matches(FigureId figure, const Campaign& c) {
  switch (figure) {
    case FigureId::fig2: return c.scenario == Scenario::deploy_sweep;
    case FigureId::fig4: return c.scenario == Scenario::bits_sweep;
    case FigureId::fig5a: return c.scenario == Scenario::convergence;
    case FigureId::fig5b: return c.scenario == Scenario::n_sweep;
    case FigureId::fig6a: return c.scenario == Scenario::complexity_grid && c.sweep.axis == SweepAxis::elements;
    case FigureId::fig6b: return c.scenario == Scenario::complexity_grid && c.sweep.axis == SweepAxis::bits;
  }
  return false;
}

}  // namespace risscma
