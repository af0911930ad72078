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

#include "risscma/types.hpp"

namespace risscma {

/// Tally of real additions (subtractions included) and real multiplications.
struct OpCount {
  std::uint64_t real_additions = 0;
  std::uint64_t real_multiplications = 0;

  OpCount& operator+=(const OpCount& o) noexcept {
    real_additions += o.real_additions;
    real_multiplications += o.real_multiplications;
    return *this;
  }
  friend OpCount operator+(OpCount a, const OpCount& b) noexcept { return a += b; }
  friend OpCount operator*(OpCount a, std::uint64_t k) noexcept {
    a.real_additions *= k;
    a.real_multiplications *= k;
    return a;
  }
  bool operator==(const OpCount&) const = default;
};

/// Arithmetic that performs the operation and charges it to an OpCount:
///   complex add       2 RA
///   complex multiply  4 RM + 2 RA
///   |z|^2             2 RM + 1 RA
///   real add          1 RA
/// Conjugation, table lookups and comparisons are free.
class CountingArithmetic {
 public:
  explicit CountingArithmetic(OpCount& sink) noexcept : ops_(sink) {}

  cplx add(const cplx& a, const cplx& b) noexcept {
    ops_.real_additions += 2;
    return {a.real() + b.real(), a.imag() + b.imag()};
  }
  cplx mul(const cplx& a, const cplx& b) noexcept {
    ops_.real_multiplications += 4;
    ops_.real_additions += 2;
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
  }
  double abs2(const cplx& a) noexcept {
    ops_.real_multiplications += 2;
    ops_.real_additions += 1;
    return a.real() * a.real() + a.imag() * a.imag();
  }
  double add(double a, double b) noexcept {
    ops_.real_additions += 1;
    return a + b;
  }

 private:
  OpCount& ops_;
};

/// Same operations, same evaluation order, nothing counted. Objectives
/// computed through either layer are bitwise identical.
struct PlainArithmetic {
  static cplx add(const cplx& a, const cplx& b) noexcept { return {a.real() + b.real(), a.imag() + b.imag()}; }
  static cplx mul(const cplx& a, const cplx& b) noexcept {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
  }
  static double abs2(const cplx& a) noexcept { return a.real() * a.real() + a.imag() * a.imag(); }
  static double add(double a, double b) noexcept { return a + b; }
};

/// Closed-form AO cost for T iterations:
/// RA = T R N 2^b (2N(2d_f+1) + 2d_f - 1), RM = T R N 2^b (4N(d_f+1) + 2d_f).
OpCount predicted_ao(std::uint64_t ores, std::uint64_t elements, unsigned bits, std::uint64_t users_per_ore,
                     std::uint64_t iterations = 1);

/// Closed-form LC-AO cost for T iterations:
/// RA = T R N (2^(b+1) + N(8d_f+1) - 2(d_f+1)), RM = T R N (2^(b+2) + 4N(3d_f+1) - 4(d_f+1)).
OpCount predicted_lc_ao(std::uint64_t ores, std::uint64_t elements, unsigned bits, std::uint64_t users_per_ore,
                        std::uint64_t iterations = 1);

/// Additions the LC-AO implementation performs beyond predicted_lc_ao:
/// R T N (N - 2), negative for N = 1.
///
/// Term 3 = dbar_n + sum_{k != n} e^{j phi_k} conj(d_{k,n}) sums N complex
/// terms, i.e. N - 1 complex additions at 2 RA each. The closed form books
/// N additions at 1 RA each. Its Term-3 count N(8d_f+1) - 2(d_f+1) is odd for
/// odd N, which no sequence of complex operations (all even in RA) can
/// produce. Multiplications agree exactly.
std::int64_t lc_ao_addition_excess(std::uint64_t ores, std::uint64_t elements, std::uint64_t iterations = 1);

enum class OptimizerKind { ao, lc_ao };

/// Random problem instance for an instrumented optimizer run.
struct ComplexityInstance {
  std::size_t ores = 4;
  std::size_t elements = 8;
  unsigned bits = 2;
  std::size_t users_per_ore = 3;
  unsigned iterations = 1;
  std::uint64_t seed = 1;
};

/// Runs one optimizer over a freshly drawn instance and returns its tally.
OpCount measured_run(OptimizerKind kind, const ComplexityInstance& instance);

}  // namespace risscma
