// Copyright 2026 The portcap Authors
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

// Large-N behaviour of the qubit success probability when k = a√N: the
// Gaussian limit and the finite-N lower/upper sandwich built from the
// Berry-Esseen theorem (constant c = 1/2).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "portcap/exact_arith.hpp"
#include "portcap/exact_perf.hpp"

namespace portcap {

inline double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

/// Q(x) = 1 - Φ(x).
inline double normal_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

/// 2 ∫_0^∞ x² φ(x + a) dx = 2[(1 + a²) Q(a) - a φ(a)].
inline double gaussian_limit(double a) {
  if (!(a >= 0.0)) throw PreconditionError("gaussian_limit: a must be >= 0");
  return 2.0 * ((1.0 + a * a) * normal_tail(a) - a * normal_pdf(a));
}

/// Which form of the Berry-Esseen remainder to use in the lower bound.
///
/// kDerivation: 4 N^{-3/2} + 11 √(N+1) exp(-(N^{5/8}-1)²/(N+1)).
/// kConservative: 4 N^{-1/4} + 11 √(N+1) exp(-(N^{5/8}-1)²/(N+1)).
enum class BerryEsseenTail { kDerivation, kConservative };

struct GaussBoundTerms {
  double M = 0.0;
  double I1B = 0.0;
  double I2B = 0.0;
  double deltaB = 0.0;
  double integral = 0.0;  // ∫_0^∞ x² φ(x + a√(N/(N+1))) dx
};

struct SandwichResult {
  int k = 0;           // integer number of teleported qubits
  double a_eff = 0.0;  // k / √N, the scaling constant the bounds are evaluated at
  double lower = 0.0;
  double upper = 0.0;
  GaussBoundTerms terms;
};

/// Nearest integer to a√N with k ≡ N (mod 2), at least 1 when N is odd and
/// at least 2 when N is even. Ties go to the smaller candidate.
inline int sqrt_scaling_k(int N, double a) {
  if (N < 1) throw PreconditionError("sqrt_scaling_k: N must be >= 1");
  const double target = a * std::sqrt(static_cast<double>(N));
  const int parity = N % 2;
  int best = parity == 0 ? 2 : 1;
  double best_gap = std::fabs(best - target);
  const int centre = static_cast<int>(std::floor(target));
  for (int cand = centre - 2; cand <= centre + 2; ++cand) {
    if (cand < 1 || cand > N || cand % 2 != parity) continue;
    const double gap = std::fabs(cand - target);
    if (gap < best_gap) {
      best = cand;
      best_gap = gap;
    }
  }
  return std::min(best, N);
}

inline GaussBoundTerms gauss_bound_terms(int N, double a, BerryEsseenTail tail) {
  const double n = N;
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  GaussBoundTerms t;
  t.M = 2.0 / (std::numbers::e * std::sqrt(n + 1)) * inv_sqrt_2pi;
  t.I1B = std::pow(n + 1, -1.5) * inv_sqrt_2pi;
  t.I2B = (std::sqrt(n + 1) * inv_sqrt_2pi + 1.0) *
          std::exp(-0.5 * (std::sqrt(n + 1) - 1) * (std::sqrt(n + 1) - 1));
  const double leading = tail == BerryEsseenTail::kConservative ? 4.0 * std::pow(n, -0.25)
                                                                 : 4.0 * std::pow(n, -1.5);
  const double spread = std::pow(n, 0.625) - 1.0;
  t.deltaB = leading + 11.0 * std::sqrt(n + 1) * std::exp(-spread * spread / (n + 1));
  t.integral = 0.5 * gaussian_limit(a * std::sqrt(n / (n + 1)));
  return t;
}

/// Finite-N sandwich lower <= p_succ(N, k) <= upper for k ≈ a√N. The
/// bounds are evaluated at a_eff = k/√N for the parity-adjusted integer k,
/// and clamped to [0, 1]. Certified only for even N.
inline SandwichResult psucc_sandwich(int N, double a,
                                     BerryEsseenTail tail = BerryEsseenTail::kDerivation) {
  if (!(a > 0.0 && a < 2.0)) throw PreconditionError("psucc_sandwich: a must lie in (0, 2)");
  if (N < 1) throw PreconditionError("psucc_sandwich: N must be >= 1");
  SandwichResult r;
  r.k = sqrt_scaling_k(N, a);
  r.a_eff = r.k / std::sqrt(static_cast<double>(N));
  r.terms = gauss_bound_terms(N, r.a_eff, tail);
  const auto& t = r.terms;
  r.upper = std::clamp(2.0 * (t.integral + t.M), 0.0, 1.0);
  r.lower = std::clamp(2.0 * (t.integral - t.M - t.I1B - t.I2B) - t.deltaB, 0.0, 1.0);
  return r;
}

/// Qubit p_succ(N, k) evaluated in log space; usable up to N ~ 10^7.
inline double psucc_largeN(int N, int k) {
  require_exact_scope(ProtocolParams{N, k, 2}, "psucc_largeN");
  const double log_norm = -N * std::log(2.0) - std::log(N + 1.0);
  long double total = 0.0L;
  for (int s2 = (N - k) % 2; s2 <= N - k; s2 += 2) {
    const double lt = 2.0 * std::log(s2 + 1.0) + ln_binomial(N + 1, (N - k - s2) / 2).value + log_norm;
    if (lt < -745.0) continue;  // underflows to zero
    total += std::exp(static_cast<long double>(lt));
  }
  return static_cast<double>(total);
}

}  // namespace portcap
