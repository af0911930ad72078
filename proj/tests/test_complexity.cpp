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

#include <cstdint>

#include "oracles.hpp"
#include "risscma/complexity.hpp"
#include "risscma/phase_optimizer.hpp"

using namespace risscma;

TEST_CASE("closed-form spot values") {
  CHECK(predicted_ao(4, 16, 3, 3).real_additions == 117248);
  CHECK(predicted_lc_ao(4, 16, 3, 3).real_additions == 26112);
  CHECK(predicted_ao(1, 1, 1, 1) == OpCount{14, 20});
  CHECK(predicted_lc_ao(1, 1, 1, 1).real_additions == 9);
  // 2^(b+2) + 4N(3d_f+1) - 4(d_f+1) at N = b = d_f = 1
  CHECK(predicted_lc_ao(1, 1, 1, 1).real_multiplications == 8 + 16 - 8);
}

TEST_CASE("AO closed form equals the per-candidate hand count") {
  for (std::uint64_t R : {1, 4})
    for (std::uint64_t N : {1, 2, 5, 8, 16, 33})
      for (unsigned b : {1u, 2u, 3u, 5u})
        for (std::uint64_t df : {1, 2, 3, 6})
          for (std::uint64_t T : {1, 3}) {
            const auto ref = oracle::ao_total(R, N, b, df, T);
            CHECK(predicted_ao(R, N, b, df, T) == OpCount{ref.ra, ref.rm});
          }
}

TEST_CASE("closed forms scale linearly in R and T") {
  for (std::uint64_t N : {1, 4, 9}) {
    for (unsigned b : {1u, 3u}) {
      CHECK(predicted_ao(2, N, b, 3) == predicted_ao(1, N, b, 3) * 2);
      CHECK(predicted_lc_ao(2, N, b, 3) == predicted_lc_ao(1, N, b, 3) * 2);
      CHECK(predicted_ao(1, N, b, 3, 3) == predicted_ao(1, N, b, 3) * 3);
      CHECK(predicted_lc_ao(1, N, b, 3, 3) == predicted_lc_ao(1, N, b, 3) * 3);
    }
  }
}

TEST_CASE("LC-AO needs fewer additions than AO for N >= 2") {
  for (std::uint64_t R : {1, 4})
    for (std::uint64_t N : {2, 4, 8, 16, 32, 64})
      for (unsigned b : {1u, 2u, 3u, 4u, 5u})
        for (std::uint64_t df : {1, 3}) {
          CHECK(predicted_lc_ao(R, N, b, df).real_additions < predicted_ao(R, N, b, df).real_additions);
        }
}

TEST_CASE("growth: AO quadratic in N, LC-AO additive in 2^b") {
  const double r = static_cast<double>(predicted_ao(4, 1024, 3, 3).real_additions) /
                   static_cast<double>(predicted_ao(4, 512, 3, 3).real_additions);
  CHECK(r == doctest::Approx(4.0).epsilon(0.01));
  // the b-dependence of LC-AO is R T N 2^(b+1) additions, independent of the N^2 part
  for (std::uint64_t N : {8, 16, 64}) {
    for (unsigned b = 1; b < 5; ++b) {
      const auto lo = predicted_lc_ao(4, N, b, 3);
      const auto hi = predicted_lc_ao(4, N, b + 1, 3);
      CHECK(hi.real_additions - lo.real_additions == 4 * N * (std::uint64_t{1} << (b + 1)));
      CHECK(hi.real_multiplications - lo.real_multiplications == 4 * N * (std::uint64_t{1} << (b + 2)));
    }
  }
}

TEST_CASE("counting arithmetic charges the cost model") {
  OpCount ops;
  CountingArithmetic ar(ops);
  const cplx a(1.0, 2.0), b(-3.0, 0.5);
  CHECK(ar.add(a, b) == a + b);
  CHECK(ops == OpCount{2, 0});
  CHECK(ar.mul(a, b) == a * b);
  CHECK(ops == OpCount{4, 4});
  CHECK(ar.abs2(a) == std::norm(a));
  CHECK(ops == OpCount{5, 6});
  CHECK(ar.add(1.5, 2.5) == 4.0);
  CHECK(ops == OpCount{6, 6});
  CHECK(PlainArithmetic::mul(a, b) == a * b);
}

TEST_CASE("OpCount merge is component-wise") {
  const OpCount a{3, 5}, b{7, 11};
  CHECK(a + b == OpCount{10, 16});
  OpCount c = a;
  c += b;
  CHECK(c == OpCount{10, 16});
  CHECK(a * 4 == OpCount{12, 20});
}

TEST_CASE("instrumented AO matches its closed form on the full grid") {
  for (std::size_t R : {1, 4})
    for (std::size_t N : {1, 2, 8, 16})
      for (unsigned b : {1u, 2u, 3u})
        for (std::size_t df : {1, 3})
          for (unsigned T : {1u, 3u}) {
            CAPTURE(R);
            CAPTURE(N);
            CAPTURE(b);
            CAPTURE(df);
            CAPTURE(T);
            const ComplexityInstance inst{R, N, b, df, T, 42};
            CHECK(measured_run(OptimizerKind::ao, inst) == predicted_ao(R, N, b, df, T));
          }
}

TEST_CASE("instrumented LC-AO: multiplications exact, additions off by R T N (N - 2)") {
  for (std::size_t R : {1, 4})
    for (std::size_t N : {1, 2, 8, 16})
      for (unsigned b : {1u, 2u, 3u})
        for (std::size_t df : {1, 3})
          for (unsigned T : {1u, 3u}) {
            const ComplexityInstance inst{R, N, b, df, T, 42};
            const OpCount m = measured_run(OptimizerKind::lc_ao, inst);
            const OpCount p = predicted_lc_ao(R, N, b, df, T);
            CHECK(m.real_multiplications == p.real_multiplications);
            const auto delta = static_cast<std::int64_t>(m.real_additions) - static_cast<std::int64_t>(p.real_additions);
            const auto expected = static_cast<std::int64_t>(R * T * N) * (static_cast<std::int64_t>(N) - 2);
            CHECK(delta == expected);
            CHECK(lc_ao_addition_excess(R, N, T) == expected);
          }
}

TEST_CASE("measured counts are exactly linear in T and independent of the draw") {
  for (auto kind : {OptimizerKind::ao, OptimizerKind::lc_ao}) {
    const OpCount one = measured_run(kind, {4, 8, 2, 3, 1, 1});
    CHECK(measured_run(kind, {4, 8, 2, 3, 3, 1}) == one * 3);
    CHECK(measured_run(kind, {4, 8, 2, 3, 1, 99}) == one);
  }
}

TEST_CASE("counter accumulates across calls") {
  Rng rng(1);
  const auto ch = draw_channels(rng, 2, 3, Geometry{}, FadingConfig{}, 4);
  const PhaseAlphabet a(2);
  OpCount ops;
  ao_optimize(ch, a, 1, &ops);
  const OpCount first = ops;
  ao_optimize(ch, a, 1, &ops);
  CHECK(ops == first * 2);
  CHECK(first == predicted_ao(2, 4, 2, 3));
}
