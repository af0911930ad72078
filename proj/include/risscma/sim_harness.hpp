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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "risscma/channel_model.hpp"
#include "risscma/complexity.hpp"
#include "risscma/phase_optimizer.hpp"
#include "risscma/scma_graph.hpp"

namespace risscma {

enum class Scenario { deploy_sweep, bits_sweep, n_sweep, convergence, complexity_grid };
enum class Algorithm { blind, ao, lc_ao, exhaustive, no_ris };
enum class SweepAxis { ris_offset, bits, elements, iterations };  // d0, b, N, T
enum class AverageMode { db_of_mean, mean_of_db };
enum class FigureId { fig2, fig4, fig5a, fig5b, fig6a, fig6b };

std::string_view to_string(Scenario s);
std::string_view to_string(Algorithm a);
std::string_view to_string(SweepAxis a);  // "d0", "b", "N", "T"
std::string_view to_string(AverageMode m);
std::string_view to_string(FigureId f);
// Parsers return nullopt on unknown names.
std::optional<Scenario> parse_scenario(std::string_view s);
std::optional<Algorithm> parse_algorithm(std::string_view s);
std::optional<SweepAxis> parse_axis(std::string_view s);
std::optional<AverageMode> parse_average_mode(std::string_view s);
std::optional<FigureId> parse_figure(std::string_view s);

struct SweepSpec {
  SweepAxis axis = SweepAxis::elements;
  std::vector<double> values;

  bool operator==(const SweepSpec&) const = default;
};

/// One Monte Carlo experiment: a base parameter set, a sweep axis (and an
/// optional second axis whose values label separate curves), and the
/// algorithms compared on shared channel draws.
struct Campaign {
  Scenario scenario = Scenario::n_sweep;
  ScmaConfig scma;
  Geometry geometry;
  FadingConfig fading;
  std::size_t elements = 16;  // N
  unsigned bits = 3;          // b
  unsigned iterations = 3;    // T
  SweepSpec sweep{SweepAxis::elements, {16, 32, 64}};
  std::optional<SweepSpec> series;
  std::size_t num_trials = 10000;
  std::uint64_t master_seed = 1;
  std::vector<Algorithm> algorithms{Algorithm::blind, Algorithm::ao, Algorithm::lc_ao};
  std::uint64_t exhaustive_budget = kDefaultExhaustiveBudget;
  AverageMode average_mode = AverageMode::db_of_mean;

  /// Throws ConfigError (or BudgetError for exhaustive) naming the field.
  void validate() const;

  bool operator==(const Campaign&) const = default;
};

/// Axis a scenario sweeps by default, and the default grid for it.
SweepAxis default_axis(Scenario s);
std::vector<double> default_grid(Scenario s);

struct AlgorithmSummary {
  Algorithm algorithm = Algorithm::blind;
  double mean_linear = 0.0;  // mean over trials of the per-trial ORE-average SNR
  double snr_db = 0.0;       // Gamma
  double stderr_db = 0.0;
  OpCount ops;               // one optimizer run (all OREs), measured
  OpCount predicted;         // closed form for AO / LC-AO, zero otherwise
  std::uint64_t trials = 0;

  bool operator==(const AlgorithmSummary&) const = default;
};

struct GridPoint {
  std::optional<double> series_value;
  double axis_value = 0.0;
  std::vector<AlgorithmSummary> summaries;  // same order as Campaign::algorithms
  /// Per-ORE breaches of exhaustive >= lc_ao, ao == lc_ao (indices), ao >= blind.
  std::uint64_t ordering_violations = 0;

  const AlgorithmSummary& summary(Algorithm a) const;
  bool operator==(const GridPoint&) const = default;
};

struct CampaignResult {
  Campaign campaign;
  std::vector<GridPoint> points;  // series-major, then sweep values ascending
  std::optional<std::string> timestamp;

  bool operator==(const CampaignResult&) const = default;
};

/// Parameters in force at one grid point.
struct PointParameters {
  Geometry geometry;
  std::size_t elements;
  unsigned bits;
  unsigned iterations;
};
PointParameters point_parameters(const Campaign& c, std::optional<double> series_value, double axis_value);

/// Channel seed of one trial: split_seed(master_seed, N, trial). All grid
/// points with the same element count reuse the same small-scale draws.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t elements, std::size_t trial);

/// Runs every trial of every grid point on `workers` threads (0 = one per
/// hardware thread). Results depend only on the campaign, never on the
/// worker count or scheduling.
CampaignResult run_campaign(const Campaign& c, unsigned workers = 1);

struct DeployProfile {
  std::vector<double> offsets;
  std::vector<double> snr_db;
  std::vector<double> argmax_offsets;
  double argmin_offset = 0.0;
  /// Minimum strictly inside the grid with both endpoints above it.
  bool u_shaped = false;
};

/// Shape of Gamma(d0) for one algorithm (and one curve when the campaign has
/// a series axis). Throws ConfigError for a non-deploy campaign or fewer
/// than three grid points.
DeployProfile deploy_sweep_profile(const CampaignResult& result, Algorithm algorithm,
                                   std::optional<double> series_value = std::nullopt);

/// y^r = (gbar Phi G + h) c^r + w^r with w^r ~ CN(0, sigma^2). `codewords`
/// holds d_f symbols per ORE.
std::vector<cplx> synthesize_received_signal(const ChannelRealization& ch, const PhaseAssignment& phases,
                                             const PhaseAlphabet& alphabet,
                                             std::span<const std::vector<cplx>> codewords, double noise_variance,
                                             Rng& rng);

/// Campaign reproducing one figure at desk scale.
Campaign preset_campaign(FigureId figure);

/// Scenario (and axis, for the complexity figures) a figure is drawn from.
bool figure_matches(FigureId figure, const Campaign& c);

}  // namespace risscma
