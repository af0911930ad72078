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

#include "risscma/complexity.hpp"

#include "risscma/channel_model.hpp"
#include "risscma/phase_optimizer.hpp"

namespace risscma {

OpCount predicted_ao(std::uint64_t ores, std::uint64_t elements, unsigned bits, std::uint64_t users_per_ore,
                     std::uint64_t iterations) {
  const std::uint64_t R = ores, N = elements, df = users_per_ore;
  const std::uint64_t L = std::uint64_t{1} << bits;
  OpCount c;
  c.real_additions = R * N * L * (2 * N * (2 * df + 1) + 2 * df - 1);
  c.real_multiplications = R * N * L * (4 * N * (df + 1) + 2 * df);
  return c * iterations;
}

OpCount predicted_lc_ao(std::uint64_t ores, std::uint64_t elements, unsigned bits, std::uint64_t users_per_ore,
                        std::uint64_t iterations) {
  const std::uint64_t R = ores, N = elements, df = users_per_ore;
  OpCount c;
  c.real_additions = R * N * ((std::uint64_t{1} << (bits + 1)) + N * (8 * df + 1) - 2 * (df + 1));
  c.real_multiplications = R * N * ((std::uint64_t{1} << (bits + 2)) + 4 * N * (3 * df + 1) - 4 * (df + 1));
  return c * iterations;
}

std::int64_t lc_ao_addition_excess(std::uint64_t ores, std::uint64_t elements, std::uint64_t iterations) {
  const auto R = static_cast<std::int64_t>(ores);
  const auto N = static_cast<std::int64_t>(elements);
  const auto T = static_cast<std::int64_t>(iterations);
  return R * T * N * (N - 2);
}

OpCount measured_run(OptimizerKind kind, const ComplexityInstance& instance) {
  Rng rng(instance.seed);
  Geometry geom;
  FadingConfig fading;
  const auto ch = draw_channels(rng, instance.ores, instance.users_per_ore, geom, fading, instance.elements);
  const PhaseAlphabet alphabet(instance.bits);
  OpCount ops;
  if (kind == OptimizerKind::ao) {
    ao_optimize(ch, alphabet, instance.iterations, &ops);
  } else {
    lc_ao_optimize(ch, alphabet, instance.iterations, &ops);
  }
  return ops;
}

}  // namespace risscma
