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
#include <functional>
#include <span>
#include <vector>

#include "risscma/channel_model.hpp"
#include "risscma/complexity.hpp"
#include "risscma/types.hpp"

namespace risscma {

/// The 2^b uniformly spaced RIS phases -pi + l * 2pi / 2^b, l = 0..2^b-1.
class PhaseAlphabet {
 public:
  /// Throws ConfigError for b = 0 (fewer than two phases) or b > 16.
  explicit PhaseAlphabet(unsigned bits);

  unsigned bits() const noexcept { return bits_; }
  std::size_t size() const noexcept { return values_.size(); }
  double step() const noexcept;

  double value(std::size_t l) const { return values_.at(l); }
  /// e^{-j phi_l}, the diagonal entry of Phi.
  const cplx& rotation(std::size_t l) const { return rotations_[l]; }
  /// Index of the 0 rad phase, 2^(b-1).
  std::uint32_t zero_index() const noexcept { return static_cast<std::uint32_t>(values_.size() / 2); }

 private:
  unsigned bits_;
  std::vector<double> values_;
  std::vector<cplx> rotations_;
};

using PhaseIndices = std::vector<std::uint32_t>;

/// Per-ORE phase index vectors (one index per RIS element).
struct PhaseAssignment {
  std::vector<PhaseIndices> per_ore;

  bool operator==(const PhaseAssignment&) const = default;
};

/// Single place where linear power ratios become decibels.
double to_db(double linear);

struct SnrReport {
  std::vector<double> per_ore_linear;  // Gamma^r
  double average_db = 0.0;             // 10 log10(mean_r Gamma^r)

  double mean_linear() const;
};

/// Composite row vector gbar Phi G + h of one ORE (length d_f).
std::vector<cplx> composite_channel(const OreChannel& ch, const PhaseIndices& phases, const PhaseAlphabet& alphabet);

/// ||gbar Phi G + h||^2, the objective maximized on each ORE.
double composite_gain(const OreChannel& ch, const PhaseIndices& phases, const PhaseAlphabet& alphabet);

/// Gamma^r = (E / sigma^2) ||gbar Phi G + h||^2 for every ORE. Throws
/// DimensionError when the assignment does not match the channel.
SnrReport received_snr(const ChannelRealization& ch, const PhaseAssignment& phases, const PhaseAlphabet& alphabet,
                       const FadingConfig& fading);

/// Received SNR with the RIS removed (direct links only).
SnrReport direct_only_snr(const ChannelRealization& ch, const FadingConfig& fading);

/// All phases 0 rad.
PhaseAssignment blind_phases(std::size_t num_elements, std::size_t num_ores, const PhaseAlphabet& alphabet);

/// Called after every single-coordinate update with the objective
/// ||.||^2 of the ORE at the updated phases. `iteration` is 1-based.
using UpdateObserver =
    std::function<void(std::size_t ore, unsigned iteration, std::size_t element, double objective)>;

/// Alternating optimization. Per ORE: start from all-zero phases, then T
/// sweeps over n = 1..N; each step scores all 2^b phases of element n by
/// the full norm (recomputed from scratch for every candidate) and keeps
/// the first maximizer. Throws std::invalid_argument for T = 0.
PhaseAssignment ao_optimize(const ChannelRealization& ch, const PhaseAlphabet& alphabet, unsigned iterations,
                            OpCount* counter = nullptr, const UpdateObserver& observer = {});

/// Low-complexity AO. Same schedule and tie rule; step n computes
///   Term3 = dbar_n + sum_{k != n} e^{j phi_k} conj(d_{k,n})
/// once and scores candidate l by Re{e^{-j phi_l} Term3}.
PhaseAssignment lc_ao_optimize(const ChannelRealization& ch, const PhaseAlphabet& alphabet, unsigned iterations,
                               OpCount* counter = nullptr, const UpdateObserver& observer = {});

inline constexpr std::uint64_t kDefaultExhaustiveBudget = std::uint64_t{1} << 20;

/// Global maximizer per ORE by enumerating all 2^(bN) assignments; ties go
/// to the lexicographically smallest index vector. Throws BudgetError if
/// 2^(bN) exceeds `budget`.
PhaseAssignment exhaustive_optimize(const ChannelRealization& ch, const PhaseAlphabet& alphabet,
                                    std::uint64_t budget = kDefaultExhaustiveBudget);

/// Precomputed coupling terms of one ORE: with Xi = diag(gbar) G,
/// D = Xi Xi^H (N x N, Hermitian) and dbar = Xi h^H (N).
struct LcAoWorkspace {
  CMatrix coupling;
  std::vector<cplx> direct_coupling;

  static LcAoWorkspace build(const OreChannel& ch);
};

/// ||v Xi + h||^2 = v D v^H + 2 Re{v dbar} + ||h||^2 with v_n = e^{-j phi_n}.
struct SnrTerms {
  double quadratic = 0.0;       // Term 1 (real part)
  double quadratic_imag = 0.0;  // imaginary residue of Term 1, zero up to rounding
  double linear = 0.0;          // Term 2
  double direct = 0.0;          // ||h||^2

  double total() const noexcept { return quadratic + linear + direct; }
};

SnrTerms snr_decomposition(const OreChannel& ch, const PhaseIndices& phases, const PhaseAlphabet& alphabet);

/// Split of Term 1 and Term 2 into the part that depends on phi_n and the
/// rest: a1_phi + a1_rest = Term 1, a2_phi + a2_rest = Term 2.
struct TermSplit {
  double a1_phi = 0.0;
  double a1_rest = 0.0;
  double a2_phi = 0.0;
  double a2_rest = 0.0;
};

/// `element` is 0-based. Throws std::out_of_range if element >= N.
TermSplit term_split(const OreChannel& ch, const PhaseIndices& phases, const PhaseAlphabet& alphabet,
                     std::size_t element);

}  // namespace risscma
