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

#include "risscma/phase_optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "risscma/errors.hpp"

namespace risscma {

namespace {

// ||gbar diag(v) G + h||^2 in the operation order the complexity model
// charges for: N products gbar_n v_n, then per user an N-term inner product
// plus h, then the squared norm. `scratch` holds N values.
template <class Arith>
double rotated_norm(const OreChannel& ch, std::span<const cplx> v, std::span<cplx> scratch, Arith& ar) {
  const std::size_t N = ch.num_elements();
  const std::size_t df = ch.num_users();
  for (std::size_t n = 0; n < N; ++n) scratch[n] = ar.mul(ch.ris_to_bs[n], v[n]);
  double norm = 0.0;
  for (std::size_t i = 0; i < df; ++i) {
    cplx acc;
    for (std::size_t n = 0; n < N; ++n) {
      const cplx p = ar.mul(scratch[n], ch.user_to_ris(n, i));
      acc = (n == 0) ? p : ar.add(acc, p);
    }
    acc = (N == 0) ? ch.direct[i] : ar.add(acc, ch.direct[i]);
    const double m = ar.abs2(acc);
    norm = (i == 0) ? m : ar.add(norm, m);
  }
  return norm;
}

std::vector<cplx> rotations_of(const PhaseIndices& phases, const PhaseAlphabet& alphabet) {
  std::vector<cplx> v(phases.size());
  for (std::size_t n = 0; n < phases.size(); ++n) v[n] = alphabet.rotation(phases[n]);
  return v;
}

void check_phases(const OreChannel& ch, const PhaseIndices& phases, const PhaseAlphabet& alphabet) {
  ch.check();
  if (phases.size() != ch.num_elements()) {
    throw DimensionError("phase vector has " + std::to_string(phases.size()) + " entries, channel has " +
                         std::to_string(ch.num_elements()) + " RIS elements");
  }
  for (auto l : phases) {
    if (l >= alphabet.size()) {
      throw DimensionError("phase index " + std::to_string(l) + " outside alphabet of size " +
                           std::to_string(alphabet.size()));
    }
  }
}

void check_assignment(const ChannelRealization& ch, const PhaseAssignment& phases, const PhaseAlphabet& alphabet) {
  if (phases.per_ore.size() != ch.num_ores()) {
    throw DimensionError("assignment covers " + std::to_string(phases.per_ore.size()) + " OREs, channel has " +
                         std::to_string(ch.num_ores()));
  }
  for (std::size_t r = 0; r < ch.num_ores(); ++r) check_phases(ch.ores[r], phases.per_ore[r], alphabet);
}

void check_for_optimizer(const ChannelRealization& ch, unsigned iterations) {
  if (iterations == 0) throw std::invalid_argument("iteration count T must be at least 1");
  for (const auto& ore : ch.ores) {
    ore.check();
    if (ore.num_elements() == 0) throw DimensionError("optimizer needs at least one RIS element");
  }
}

}  // namespace

PhaseAlphabet::PhaseAlphabet(unsigned bits) : bits_(bits) {
  if (bits == 0) throw ConfigError("ris.bits", "b must be at least 1 (alphabet needs two or more phases)");
  if (bits > 16) throw ConfigError("ris.bits", "b larger than 16 is not supported");
  const std::size_t count = std::size_t{1} << bits;
  const double delta = 2.0 * kPi / static_cast<double>(count);
  values_.resize(count);
  rotations_.resize(count);
  for (std::size_t l = 0; l < count; ++l) {
    values_[l] = -kPi + static_cast<double>(l) * delta;
    rotations_[l] = std::polar(1.0, -values_[l]);
  }
  // Exact values on the axes so equal phases in nested alphabets agree bitwise.
  rotations_[0] = cplx(-1.0, 0.0);
  rotations_[count / 2] = cplx(1.0, 0.0);
  values_[count / 2] = 0.0;
  if (count >= 4) {
    rotations_[count / 4] = cplx(0.0, 1.0);       // phi = -pi/2
    rotations_[3 * count / 4] = cplx(0.0, -1.0);  // phi = +pi/2
  }
}

double PhaseAlphabet::step() const noexcept { return 2.0 * kPi / static_cast<double>(values_.size()); }

double to_db(double linear) { return 10.0 * std::log10(linear); }

double SnrReport::mean_linear() const {
  if (per_ore_linear.empty()) return 0.0;
  double sum = 0.0;
  for (double g : per_ore_linear) sum += g;
  return sum / static_cast<double>(per_ore_linear.size());
}

std::vector<cplx> composite_channel(const OreChannel& ch, const PhaseIndices& phases, const PhaseAlphabet& alphabet) {
  check_phases(ch, phases, alphabet);
  PlainArithmetic ar;
  const std::size_t N = ch.num_elements();
  std::vector<cplx> w(N);
  for (std::size_t n = 0; n < N; ++n) w[n] = ar.mul(ch.ris_to_bs[n], alphabet.rotation(phases[n]));
  std::vector<cplx> out(ch.num_users());
  for (std::size_t i = 0; i < out.size(); ++i) {
    cplx acc;
    for (std::size_t n = 0; n < N; ++n) {
      const cplx p = ar.mul(w[n], ch.user_to_ris(n, i));
      acc = (n == 0) ? p : ar.add(acc, p);
    }
    out[i] = (N == 0) ? ch.direct[i] : ar.add(acc, ch.direct[i]);
  }
  return out;
}

double composite_gain(const OreChannel& ch, const PhaseIndices& phases, const PhaseAlphabet& alphabet) {
  check_phases(ch, phases, alphabet);
  const auto v = rotations_of(phases, alphabet);
  std::vector<cplx> scratch(ch.num_elements());
  PlainArithmetic ar;
  return rotated_norm(ch, v, scratch, ar);
}

SnrReport received_snr(const ChannelRealization& ch, const PhaseAssignment& phases, const PhaseAlphabet& alphabet,
                       const FadingConfig& fading) {
  check_assignment(ch, phases, alphabet);
  SnrReport report;
  report.per_ore_linear.reserve(ch.num_ores());
  for (std::size_t r = 0; r < ch.num_ores(); ++r) {
    report.per_ore_linear.push_back(fading.snr_scale() * composite_gain(ch.ores[r], phases.per_ore[r], alphabet));
  }
  report.average_db = to_db(report.mean_linear());
  return report;
}

SnrReport direct_only_snr(const ChannelRealization& ch, const FadingConfig& fading) {
  SnrReport report;
  for (const auto& ore : ch.ores) {
    double g = 0.0;
    for (const auto& h : ore.direct) g += std::norm(h);
    report.per_ore_linear.push_back(fading.snr_scale() * g);
  }
  report.average_db = to_db(report.mean_linear());
  return report;
}

PhaseAssignment blind_phases(std::size_t num_elements, std::size_t num_ores, const PhaseAlphabet& alphabet) {
  return PhaseAssignment{std::vector<PhaseIndices>(num_ores, PhaseIndices(num_elements, alphabet.zero_index()))};
}

PhaseAssignment ao_optimize(const ChannelRealization& ch, const PhaseAlphabet& alphabet, unsigned iterations,
                            OpCount* counter, const UpdateObserver& observer) {
  check_for_optimizer(ch, iterations);
  OpCount ops;
  CountingArithmetic ar(ops);
  PhaseAssignment out;
  out.per_ore.reserve(ch.num_ores());

  for (std::size_t r = 0; r < ch.num_ores(); ++r) {
    const OreChannel& ore = ch.ores[r];
    const std::size_t N = ore.num_elements();
    PhaseIndices idx(N, alphabet.zero_index());
    std::vector<cplx> v = rotations_of(idx, alphabet);
    std::vector<cplx> scratch(N);

    for (unsigned t = 1; t <= iterations; ++t) {
      for (std::size_t n = 0; n < N; ++n) {
        double best = -std::numeric_limits<double>::infinity();
        std::uint32_t best_l = 0;
        for (std::uint32_t l = 0; l < alphabet.size(); ++l) {
          v[n] = alphabet.rotation(l);
          const double score = rotated_norm(ore, v, scratch, ar);
          if (score > best) {
            best = score;
            best_l = l;
          }
        }
        idx[n] = best_l;
        v[n] = alphabet.rotation(best_l);
        if (observer) observer(r, t, n, best);
      }
    }
    out.per_ore.push_back(std::move(idx));
  }
  if (counter) *counter += ops;
  return out;
}

PhaseAssignment lc_ao_optimize(const ChannelRealization& ch, const PhaseAlphabet& alphabet, unsigned iterations,
                               OpCount* counter, const UpdateObserver& observer) {
  check_for_optimizer(ch, iterations);
  OpCount ops;
  CountingArithmetic ar(ops);
  PhaseAssignment out;
  out.per_ore.reserve(ch.num_ores());

  for (std::size_t r = 0; r < ch.num_ores(); ++r) {
    const OreChannel& ore = ch.ores[r];
    const std::size_t N = ore.num_elements();
    const std::size_t df = ore.num_users();
    const auto& G = ore.user_to_ris;
    const auto& gbar = ore.ris_to_bs;
    PhaseIndices idx(N, alphabet.zero_index());

    // sum_i (g_{a,i} gbar_a)(g_{b,i} gbar_b)^*, recomputed on every use
    auto cross = [&](std::size_t a, std::size_t b) {
      cplx acc;
      for (std::size_t i = 0; i < df; ++i) {
        const cplx xa = ar.mul(G(a, i), gbar[a]);
        const cplx xb = ar.mul(G(b, i), gbar[b]);
        const cplx p = ar.mul(xa, std::conj(xb));
        acc = (i == 0) ? p : ar.add(acc, p);
      }
      return acc;
    };

    for (unsigned t = 1; t <= iterations; ++t) {
      for (std::size_t n = 0; n < N; ++n) {
        cplx psi;
        bool have_psi = false;
        for (std::size_t k = 0; k < N; ++k) {
          if (k == n) continue;
          const cplx d_kn = cross(k, n);
          const cplx term = ar.mul(std::conj(alphabet.rotation(idx[k])), std::conj(d_kn));
          psi = have_psi ? ar.add(psi, term) : term;
          have_psi = true;
        }
        cplx dbar;
        for (std::size_t i = 0; i < df; ++i) {
          const cplx xn = ar.mul(G(n, i), gbar[n]);
          const cplx p = ar.mul(xn, std::conj(ore.direct[i]));
          dbar = (i == 0) ? p : ar.add(dbar, p);
        }
        const cplx term3 = have_psi ? ar.add(dbar, psi) : dbar;

        double best = -std::numeric_limits<double>::infinity();
        std::uint32_t best_l = 0;
        for (std::uint32_t l = 0; l < alphabet.size(); ++l) {
          const double score = ar.mul(alphabet.rotation(l), term3).real();
          if (score > best) {
            best = score;
            best_l = l;
          }
        }
        idx[n] = best_l;
        if (observer) observer(r, t, n, composite_gain(ore, idx, alphabet));
      }
    }
    out.per_ore.push_back(std::move(idx));
  }
  if (counter) *counter += ops;
  return out;
}

PhaseAssignment exhaustive_optimize(const ChannelRealization& ch, const PhaseAlphabet& alphabet,
                                    std::uint64_t budget) {
  PhaseAssignment out;
  for (const auto& ore : ch.ores) {
    ore.check();
    const std::size_t N = ore.num_elements();
    const std::uint64_t bits_total = static_cast<std::uint64_t>(alphabet.bits()) * N;
    if (bits_total >= 64 || (std::uint64_t{1} << bits_total) > budget) {
      throw BudgetError("exhaustive search needs 2^" + std::to_string(bits_total) +
                        " evaluations per ORE, budget is " + std::to_string(budget));
    }

    PhaseIndices idx(N, 0);
    std::vector<cplx> v = rotations_of(idx, alphabet);
    std::vector<cplx> scratch(N);
    PlainArithmetic ar;
    PhaseIndices best_idx = idx;
    double best = -std::numeric_limits<double>::infinity();
    const std::uint32_t base = static_cast<std::uint32_t>(alphabet.size());
    while (true) {
      const double score = rotated_norm(ore, v, scratch, ar);
      if (score > best) {
        best = score;
        best_idx = idx;
      }
      // odometer, element 0 most significant -> lexicographic order
      bool done = true;
      for (std::size_t pos = N; pos-- > 0;) {
        if (++idx[pos] < base) {
          v[pos] = alphabet.rotation(idx[pos]);
          done = false;
          break;
        }
        idx[pos] = 0;
        v[pos] = alphabet.rotation(0);
      }
      if (done) break;
    }
    out.per_ore.push_back(std::move(best_idx));
  }
  return out;
}

LcAoWorkspace LcAoWorkspace::build(const OreChannel& ch) {
  ch.check();
  const std::size_t N = ch.num_elements();
  const std::size_t df = ch.num_users();
  CMatrix xi(N, df);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t i = 0; i < df; ++i) xi(n, i) = ch.ris_to_bs[n] * ch.user_to_ris(n, i);
  }
  LcAoWorkspace ws{CMatrix(N, N), std::vector<cplx>(N)};
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t m = 0; m < N; ++m) {
      cplx acc;
      for (std::size_t i = 0; i < df; ++i) acc += xi(k, i) * std::conj(xi(m, i));
      ws.coupling(k, m) = acc;
    }
    cplx acc;
    for (std::size_t i = 0; i < df; ++i) acc += xi(k, i) * std::conj(ch.direct[i]);
    ws.direct_coupling[k] = acc;
  }
  return ws;
}

SnrTerms snr_decomposition(const OreChannel& ch, const PhaseIndices& phases, const PhaseAlphabet& alphabet) {
  check_phases(ch, phases, alphabet);
  const auto ws = LcAoWorkspace::build(ch);
  const auto v = rotations_of(phases, alphabet);
  const std::size_t N = v.size();

  cplx quad;
  cplx lin;
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t m = 0; m < N; ++m) quad += v[k] * ws.coupling(k, m) * std::conj(v[m]);
    lin += v[k] * ws.direct_coupling[k];
  }
  SnrTerms terms;
  terms.quadratic = quad.real();
  terms.quadratic_imag = quad.imag();
  terms.linear = 2.0 * lin.real();
  for (const auto& h : ch.direct) terms.direct += std::norm(h);
  return terms;
}

TermSplit term_split(const OreChannel& ch, const PhaseIndices& phases, const PhaseAlphabet& alphabet,
                     std::size_t element) {
  check_phases(ch, phases, alphabet);
  const std::size_t N = phases.size();
  if (element >= N) throw std::out_of_range("element index " + std::to_string(element) + " >= N");
  const auto ws = LcAoWorkspace::build(ch);
  const auto v = rotations_of(phases, alphabet);
  const std::size_t n = element;

  TermSplit s;
  cplx cross_n;
  for (std::size_t k = 0; k < N; ++k) {
    if (k != n) cross_n += std::conj(v[k]) * std::conj(ws.coupling(k, n));
  }
  s.a1_phi = 2.0 * (v[n] * cross_n).real();

  double diag = 0.0;
  for (std::size_t m = 0; m < N; ++m) diag += ws.coupling(m, m).real();
  cplx pairs;
  for (std::size_t i = 0; i < N; ++i) {
    if (i == n) continue;
    for (std::size_t j = i + 1; j < N; ++j) {
      if (j == n) continue;
      pairs += v[i] * std::conj(v[j]) * ws.coupling(i, j);
    }
  }
  s.a1_rest = diag + 2.0 * pairs.real();

  s.a2_phi = 2.0 * (v[n] * ws.direct_coupling[n]).real();
  cplx rest;
  for (std::size_t i = 0; i < N; ++i) {
    if (i != n) rest += v[i] * ws.direct_coupling[i];
  }
  s.a2_rest = 2.0 * rest.real();
  return s;
}

}  // namespace risscma
