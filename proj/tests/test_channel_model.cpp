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

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "risscma/channel_model.hpp"
#include "risscma/errors.hpp"

using namespace risscma;

namespace {

Geometry lambda_eighth() {
  Geometry g;
  g.carrier_frequency = kSpeedOfLight / 0.125;
  return g;
}

double mean_power(double k, LosPhase los, std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  double acc = 0.0;
  for (std::size_t i = 0; i < samples; ++i) acc += std::norm(rician_coefficient(rng, k, los));
  return acc / static_cast<double>(samples);
}

}  // namespace

TEST_CASE("geometry distances") {
  const Geometry g;
  CHECK(g.bs_ris_distance() == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(g.ris_user_distance() == doctest::Approx(std::sqrt(1.5 * 1.5 + 38.0 * 38.0)).epsilon(1e-15));
  CHECK(lambda_eighth().wavelength() == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(Geometry{}.wavelength() == doctest::Approx(299792458.0 / 2.4e9).epsilon(1e-15));
}

TEST_CASE("cascaded path loss at lambda = 0.125 m") {
  const Geometry g = lambda_eighth();
  const double expected = std::pow(0.125, 4) / (256.0 * oracle::pi * oracle::pi * 6.25 * (1.5 * 1.5 + 38.0 * 38.0));
  CHECK(cascaded_path_loss(g) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(cascaded_path_loss(g) == doctest::Approx(1.0689981460751997e-11).epsilon(1e-13));
}

TEST_CASE("cascaded path loss scaling and symmetry") {
  Geometry g = lambda_eighth();
  const double base = cascaded_path_loss(g);
  Geometry twice = g;
  twice.bs_user_distance *= 2;
  twice.ris_perpendicular_offset *= 2;
  twice.ris_horizontal_offset *= 2;
  CHECK(cascaded_path_loss(twice) == doctest::Approx(base / 16.0).epsilon(1e-13));

  for (double d0 : {2.0, 7.5, 13.0, 30.0}) {
    Geometry a = g, b = g;
    a.ris_horizontal_offset = d0;
    b.ris_horizontal_offset = g.bs_user_distance - d0;
    CHECK(cascaded_path_loss(a) == doctest::Approx(cascaded_path_loss(b)).epsilon(1e-13));
  }
}

TEST_CASE("cascaded path gain is smallest mid-span for a nearly on-axis RIS") {
  Geometry g = lambda_eighth();
  g.ris_perpendicular_offset = 1e-3;
  double best_d0 = 0.0, lowest = INFINITY;
  for (int i = 1; i < 400; ++i) {
    g.ris_horizontal_offset = 0.1 * i;
    const double v = cascaded_path_loss(g);
    if (v < lowest) {
      lowest = v;
      best_d0 = g.ris_horizontal_offset;
    }
  }
  CHECK(best_d0 == doctest::Approx(20.0).epsilon(1e-9));
}

TEST_CASE("direct path loss") {
  Geometry g = lambda_eighth();
  g.direct_path_exponent = 2.0;
  const double fs = (0.125 / (160.0 * oracle::pi)) * (0.125 / (160.0 * oracle::pi));
  CHECK(direct_path_loss(g) == doctest::Approx(fs).epsilon(1e-13));
  CHECK(direct_path_loss(g) == doctest::Approx(6.18415427504503e-08).epsilon(1e-13));

  Geometry far = g;
  far.bs_user_distance = 80.0;
  CHECK(direct_path_loss(far) == doctest::Approx(fs / 4.0).epsilon(1e-13));
  Geometry longer = g;
  longer.carrier_frequency /= 2.0;
  CHECK(direct_path_loss(longer) == doctest::Approx(4.0 * fs).epsilon(1e-13));

  Geometry steep = g;
  steep.direct_path_exponent = 3.5;
  const double a = 0.125 / (4.0 * oracle::pi);
  CHECK(direct_path_loss(steep) == doctest::Approx(a * a * std::pow(40.0, -3.5)).epsilon(1e-13));
}

TEST_CASE("geometry validation") {
  Geometry g;
  g.ris_horizontal_offset = 45.0;
  CHECK_THROWS_AS(g.validate(), ConfigError);
  g.ris_horizontal_offset = 0.0;
  CHECK_THROWS_AS(g.validate(), ConfigError);
  g = Geometry{};
  g.ris_perpendicular_offset = 0.0;
  CHECK_THROWS_AS(g.validate(), ConfigError);
  g = Geometry{};
  g.carrier_frequency = -1.0;
  CHECK_THROWS_AS(g.validate(), ConfigError);
  CHECK_NOTHROW(Geometry{}.validate());

  FadingConfig f;
  f.rician_factor = -1.0;
  CHECK_THROWS_AS(f.validate(), ConfigError);
  f = FadingConfig{};
  f.noise_variance = 0.0;
  CHECK_THROWS_AS(f.validate(), ConfigError);
  f = FadingConfig{};
  f.symbol_energy = 0.0;
  CHECK_THROWS_AS(f.validate(), ConfigError);
}

TEST_CASE("small-scale coefficients have unit power for every K") {
  for (double k : {0.0, 1.0, 4.0, 100.0}) {
    CAPTURE(k);
    CHECK(mean_power(k, LosPhase::zero, 100000, 11) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(mean_power(k, LosPhase::uniform, 100000, 12) == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_CASE("LoS-only limit is deterministic in magnitude") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    CHECK(std::abs(rician_coefficient(rng, INFINITY, LosPhase::uniform)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rician_coefficient(rng, INFINITY, LosPhase::zero) == cplx(1.0, 0.0));
  }
}

TEST_CASE("K = 0 gives mean power equal to the applied path gain") {
  FadingConfig f;
  f.rician_factor = 0.0;
  const Geometry g;
  Rng rng(5);
  const auto ch = draw_channels(rng, 100000, 1, g, f, 1);
  double ph = 0.0, pg = 0.0, pG = 0.0;
  for (const auto& o : ch.ores) {
    ph += std::norm(o.direct[0]);
    pg += std::norm(o.ris_to_bs[0]);
    pG += std::norm(o.user_to_ris(0, 0));
  }
  const double n = static_cast<double>(ch.num_ores());
  CHECK(ph / n == doctest::Approx(direct_path_loss(g)).epsilon(0.02));
  CHECK(pg / n == doctest::Approx(cascaded_path_loss(g)).epsilon(0.02));
  CHECK(pG / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("K = infinity channels carry exactly the path-loss amplitudes") {
  FadingConfig f;
  f.rician_factor = INFINITY;
  f.los_phase = LosPhase::uniform;
  const Geometry g;
  Rng rng(9);
  const auto ch = draw_channels(rng, build_factor_graph(ScmaConfig{}), g, f, 4);
  for (const auto& o : ch.ores) {
    for (auto h : o.direct) CHECK(std::abs(h) == doctest::Approx(std::sqrt(direct_path_loss(g))).epsilon(1e-12));
    for (auto x : o.ris_to_bs) CHECK(std::abs(x) == doctest::Approx(std::sqrt(cascaded_path_loss(g))).epsilon(1e-12));
    for (auto x : o.user_to_ris.data()) CHECK(std::abs(x) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("realization layout follows the factor graph") {
  const auto graph = build_factor_graph(ScmaConfig{});
  Rng rng(1);
  const auto ch = draw_channels(rng, graph, Geometry{}, FadingConfig{}, 5);
  REQUIRE(ch.num_ores() == 4);
  CHECK(ch.num_elements() == 5);
  for (std::size_t r = 0; r < 4; ++r) {
    const auto& o = ch.ores[r];
    CHECK(o.direct.size() == 3);
    CHECK(o.ris_to_bs.size() == 5);
    CHECK(o.user_to_ris.rows() == 5);
    CHECK(o.user_to_ris.cols() == 3);
    CHECK(std::vector<std::size_t>(graph.interference_set(r).begin(), graph.interference_set(r).end()) == o.users);
    CHECK_NOTHROW(o.check());
  }
  Rng again(1);
  CHECK(draw_channels(again, graph, Geometry{}, FadingConfig{}, 5) == ch);
  Rng other(2);
  CHECK_FALSE(draw_channels(other, graph, Geometry{}, FadingConfig{}, 5) == ch);
  Rng zero(1);
  CHECK_THROWS_AS(draw_channels(zero, graph, Geometry{}, FadingConfig{}, 0), ConfigError);
}

TEST_CASE("draws on different OREs are uncorrelated") {
  FadingConfig f;
  f.los_phase = LosPhase::uniform;
  Rng rng(21);
  const std::size_t n = 100000;
  std::vector<cplx> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ch = draw_channels(rng, 2, 1, Geometry{}, f, 1);
    a[i] = ch.ores[0].user_to_ris(0, 0);
    b[i] = ch.ores[1].user_to_ris(0, 0);
  }
  cplx ma, mb;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  cplx cov;
  double va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cov += (a[i] - ma) * std::conj(b[i] - mb);
    va += std::norm(a[i] - ma);
    vb += std::norm(b[i] - mb);
  }
  CHECK(std::abs(cov) / std::sqrt(va * vb) < 0.02);
}

TEST_CASE("circular Gaussian moments") {
  Rng rng(8);
  const std::size_t n = 200000;
  cplx mean, pseudo;
  double power = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx z = rng.circular_gaussian();
    mean += z;
    pseudo += z * z;
    power += std::norm(z);
  }
  const double dn = static_cast<double>(n);
  CHECK(power / dn == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(mean / dn) < 0.01);
  CHECK(std::abs(pseudo / dn) < 0.01);
}

TEST_CASE("uniform draws lie in [0, 1)") {
  Rng rng(4);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("seed splitting is three chained splitmix64 steps") {
  for (std::uint64_t m : {0ULL, 1ULL, 0xdeadbeefULL}) {
    for (std::uint64_t s : {0ULL, 16ULL, 64ULL}) {
      for (std::uint64_t i : {0ULL, 1ULL, 9999ULL}) {
        CHECK(split_seed(m, s, i) == oracle::splitmix(oracle::splitmix(oracle::splitmix(m) ^ s) ^ i));
      }
    }
  }
  CHECK(oracle::splitmix(0) == 0xe220a8397b1dcdafULL);
  CHECK(split_seed(1, 16, 0) != split_seed(1, 16, 1));
  CHECK(split_seed(1, 16, 0) != split_seed(1, 32, 0));
}
