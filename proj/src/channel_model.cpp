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

#include "risscma/channel_model.hpp"

#include <cmath>
#include <string>

#include "risscma/errors.hpp"

namespace risscma {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

OreChannel draw_ore(Rng& rng, std::vector<std::size_t> users, double direct_amp, double cascaded_amp,
                    const FadingConfig& fading, std::size_t num_elements) {
  const double k = fading.rician_factor;
  OreChannel ch;
  ch.users = std::move(users);
  const std::size_t df = ch.users.size();
  ch.direct.resize(df);
  for (auto& h : ch.direct) h = direct_amp * rician_coefficient(rng, k, fading.los_phase);
  // The whole cascaded loss rides on gbar so each g * gbar product carries it once.
  ch.ris_to_bs.resize(num_elements);
  for (auto& g : ch.ris_to_bs) g = cascaded_amp * rician_coefficient(rng, k, fading.los_phase);
  ch.user_to_ris = CMatrix(num_elements, df);
  for (std::size_t n = 0; n < num_elements; ++n) {
    for (std::size_t i = 0; i < df; ++i) ch.user_to_ris(n, i) = rician_coefficient(rng, k, fading.los_phase);
  }
  return ch;
}

}  // namespace

double Geometry::bs_ris_distance() const noexcept { return std::hypot(ris_perpendicular_offset, ris_horizontal_offset); }

double Geometry::ris_user_distance() const noexcept {
  return std::hypot(ris_perpendicular_offset, bs_user_distance - ris_horizontal_offset);
}

void Geometry::validate() const {
  if (!(bs_user_distance > 0.0)) throw ConfigError("geometry.bs_user_distance", "must be positive");
  if (!(ris_perpendicular_offset > 0.0)) throw ConfigError("geometry.ris_perpendicular_offset", "must be positive");
  if (!(ris_horizontal_offset > 0.0 && ris_horizontal_offset < bs_user_distance)) {
    throw ConfigError("geometry.ris_horizontal_offset", "must satisfy 0 < d_0 < d (d = " +
                                                            std::to_string(bs_user_distance) + ")");
  }
  if (!(carrier_frequency > 0.0) || !std::isfinite(carrier_frequency)) {
    throw ConfigError("geometry.carrier_frequency", "must be positive");
  }
  if (!(direct_path_exponent > 0.0)) throw ConfigError("geometry.direct_path_exponent", "must be positive");
}

void FadingConfig::validate() const {
  if (!(rician_factor >= 0.0)) throw ConfigError("fading.rician_factor", "must be >= 0");
  if (!(noise_variance > 0.0)) throw ConfigError("fading.noise_variance", "must be positive");
  if (!(symbol_energy > 0.0)) throw ConfigError("fading.symbol_energy", "must be positive");
}

void OreChannel::check() const {
  const std::size_t n = num_elements();
  const std::size_t df = num_users();
  if (users.size() != df) throw DimensionError("ORE channel: users/direct length mismatch");
  if (user_to_ris.rows() != n || user_to_ris.cols() != df) {
    throw DimensionError("ORE channel: G is " + std::to_string(user_to_ris.rows()) + "x" +
                         std::to_string(user_to_ris.cols()) + ", expected " + std::to_string(n) + "x" +
                         std::to_string(df));
  }
  auto finite = [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  for (const auto& z : direct) if (!finite(z)) throw DimensionError("ORE channel: non-finite direct coefficient");
  for (const auto& z : ris_to_bs) if (!finite(z)) throw DimensionError("ORE channel: non-finite RIS coefficient");
  for (const auto& z : user_to_ris.data()) if (!finite(z)) throw DimensionError("ORE channel: non-finite G entry");
}

double cascaded_path_loss(const Geometry& geom) {
  const double lambda = geom.wavelength();
  const double d1 = geom.bs_ris_distance();
  const double d2 = geom.ris_user_distance();
  const double l2 = lambda * lambda;
  return (l2 * l2) / (256.0 * kPi * kPi * d1 * d1 * d2 * d2);
}

double direct_path_loss(const Geometry& geom) {
  const double a = geom.wavelength() / (4.0 * kPi);
  return a * a * std::pow(geom.bs_user_distance, -geom.direct_path_exponent);
}

cplx Rng::circular_gaussian() {
  // Box-Muller in polar form: |z|^2 = -ln(u1) ~ Exp(1), arg uniform.
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::polar(std::sqrt(-std::log(u1)), 2.0 * kPi * u2);
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return mix(mix(mix(master) ^ stream) ^ index);
}

cplx rician_coefficient(Rng& rng, double k_factor, LosPhase los_phase) {
  const bool los_only = std::isinf(k_factor);
  const double los_amp = los_only ? 1.0 : std::sqrt(k_factor / (k_factor + 1.0));
  const double nlos_amp = los_only ? 0.0 : std::sqrt(1.0 / (k_factor + 1.0));
  cplx los = los_amp;
  if (los_phase == LosPhase::uniform) los = std::polar(los_amp, -kPi + 2.0 * kPi * rng.uniform());
  if (los_only) return los;
  return los + nlos_amp * rng.circular_gaussian();
}

ChannelRealization draw_channels(Rng& rng, const FactorGraph& graph, const Geometry& geom,
                                 const FadingConfig& fading, std::size_t num_elements) {
  if (num_elements == 0) throw ConfigError("ris.elements", "N must be at least 1");
  const double direct_amp = std::sqrt(direct_path_loss(geom));
  const double cascaded_amp = std::sqrt(cascaded_path_loss(geom));
  ChannelRealization out;
  out.ores.reserve(graph.num_ores());
  for (std::size_t r = 0; r < graph.num_ores(); ++r) {
    auto set = graph.interference_set(r);
    out.ores.push_back(draw_ore(rng, {set.begin(), set.end()}, direct_amp, cascaded_amp, fading, num_elements));
  }
  return out;
}

ChannelRealization draw_channels(Rng& rng, std::size_t num_ores, std::size_t users_per_ore,
                                 const Geometry& geom, const FadingConfig& fading,
                                 std::size_t num_elements) {
  if (num_elements == 0) throw ConfigError("ris.elements", "N must be at least 1");
  const double direct_amp = std::sqrt(direct_path_loss(geom));
  const double cascaded_amp = std::sqrt(cascaded_path_loss(geom));
  std::vector<std::size_t> users(users_per_ore);
  for (std::size_t i = 0; i < users_per_ore; ++i) users[i] = i;
  ChannelRealization out;
  out.ores.reserve(num_ores);
  for (std::size_t r = 0; r < num_ores; ++r) {
    out.ores.push_back(draw_ore(rng, users, direct_amp, cascaded_amp, fading, num_elements));
  }
  return out;
}

}  // namespace risscma
