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
#include <random>
#include <vector>

#include "risscma/scma_graph.hpp"
#include "risscma/types.hpp"

namespace risscma {

inline constexpr double kSpeedOfLight = 299'792'458.0;
inline constexpr double kPi = 3.14159265358979323846;

/// Line geometry: BS at the origin, users at distance d, RIS displaced d_0
/// along the BS-user axis (measured from the BS) and d_p off-axis.
struct Geometry {
  double bs_user_distance = 40.0;          // d [m]
  double ris_perpendicular_offset = 1.5;   // d_p [m]
  double ris_horizontal_offset = 2.0;      // d_0 [m]
  double carrier_frequency = 2.4e9;        // [Hz]
  double direct_path_exponent = 3.5;       // user->BS path-loss exponent, 1 m reference

  double wavelength() const noexcept { return kSpeedOfLight / carrier_frequency; }
  /// d_1 = sqrt(d_p^2 + d_0^2)
  double bs_ris_distance() const noexcept;
  /// d_2 = sqrt(d_p^2 + (d - d_0)^2)
  double ris_user_distance() const noexcept;

  /// Throws ConfigError unless 0 < d_0 < d, d_p > 0, f > 0, exponent > 0.
  void validate() const;

  bool operator==(const Geometry&) const = default;
};

enum class LosPhase {
  zero,     // deterministic LoS with phase 0 on every coefficient
  uniform,  // LoS phase drawn uniformly on [-pi, pi) per coefficient
};

struct FadingConfig {
  double rician_factor = 1.0;     // K
  double noise_variance = 1e-10;  // sigma_r^2, shared by all OREs [W]
  double symbol_energy = 1.0;     // E [J]
  LosPhase los_phase = LosPhase::zero;

  void validate() const;
  double snr_scale() const noexcept { return symbol_energy / noise_variance; }

  bool operator==(const FadingConfig&) const = default;
};

/// Channel seen on one ORE. `direct[i]` and column i of `user_to_ris`
/// belong to users[i] (ascending user index). Path loss is already applied.
struct OreChannel {
  std::vector<std::size_t> users;
  std::vector<cplx> direct;     // h^r, length d_f
  std::vector<cplx> ris_to_bs;  // gbar^r, length N
  CMatrix user_to_ris;          // G^r, N x d_f

  std::size_t num_elements() const noexcept { return ris_to_bs.size(); }
  std::size_t num_users() const noexcept { return direct.size(); }

  /// Throws DimensionError on inconsistent sizes or non-finite entries.
  void check() const;

  bool operator==(const OreChannel&) const = default;
};

struct ChannelRealization {
  std::vector<OreChannel> ores;

  std::size_t num_ores() const noexcept { return ores.size(); }
  std::size_t num_elements() const { return ores.empty() ? 0 : ores.front().num_elements(); }

  bool operator==(const ChannelRealization&) const = default;
};

/// Path loss of the cascaded user->RIS->BS link,
/// lambda^4 / (256 pi^2 d_1^2 d_2^2), applied to every product g * gbar.
double cascaded_path_loss(const Geometry& geom);

/// Direct user->BS power gain (lambda / 4pi)^2 * d^-alpha with alpha =
/// geom.direct_path_exponent. For alpha = 2 this is free space, (lambda / (4 pi d))^2.
double direct_path_loss(const Geometry& geom);

/// 64-bit generator with platform-independent uniform and Gaussian
/// transforms (the std:: distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Circularly-symmetric complex Gaussian with E|z|^2 = 1.
  cplx circular_gaussian();

 private:
  std::mt19937_64 engine_;
};

/// Deterministic child seed for (master, stream, index). Each step is the
/// splitmix64 finalizer: s = mix(mix(mix(master) ^ stream) ^ index), where
/// mix(x) adds 0x9e3779b97f4a7c15 and applies the 30/27/31 xor-shift-multiply.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

/// One unit-power small-scale coefficient sqrt(K/(K+1)) e^{j theta} + sqrt(1/(K+1)) z.
cplx rician_coefficient(Rng& rng, double k_factor, LosPhase los_phase);

/// Draws one realization for every ORE of the factor graph. Per ORE the draw
/// order is: direct (users ascending), ris_to_bs (n ascending), user_to_ris
/// (row-major n, then user).
ChannelRealization draw_channels(Rng& rng, const FactorGraph& graph, const Geometry& geom,
                                 const FadingConfig& fading, std::size_t num_elements);

/// Same as above without a factor graph: `num_ores` OREs of `users_per_ore`
/// users labelled 0..d_f-1.
ChannelRealization draw_channels(Rng& rng, std::size_t num_ores, std::size_t users_per_ore,
                                 const Geometry& geom, const FadingConfig& fading,
                                 std::size_t num_elements);

}  // namespace risscma
