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

// Exact performance of multi-port teleportation with maximally entangled
// ports and square-root measurements: entanglement fidelity and probability
// of success, in the Young-diagram form valid for any d and in the spin
// (angular momentum) form for qubits.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "portcap/exact_arith.hpp"
#include "portcap/protocol.hpp"
#include "portcap/young.hpp"

namespace portcap {

/// Spin labels before (s, on N-k qubits) and after (j, on N qubits) adding
/// k boxes.
struct SpinIndex {
  HalfInt s;
  HalfInt j;
};

/// h_{sjk} = C(k, s-j+k/2) - C(k, s+j+k/2+1): the two-row skew path count
/// written in spin labels. Binomials outside their range are zero.
inline ExactInt h_coeff(HalfInt s, HalfInt j, int k) {
  if (k < 1) throw PreconditionError("h_coeff: k must be >= 1");
  const int lower_twice = s.doubled - j.doubled + k;
  const int upper_twice = s.doubled + j.doubled + k + 2;
  if (lower_twice % 2 != 0) {
    throw PreconditionError("h_coeff: 2s - 2j + k must be even");
  }
  return binomial(k, lower_twice / 2) - binomial(k, upper_twice / 2);
}

/// F = d^{-(N+2k)} Σ_α (Σ_{μ∈α} m_{μ/α} √(m_μ d_μ))².
///
/// The square is expanded so only cross terms √(m_μ d_μ m_μ' d_μ') carry
/// radicals. Perfect-square radicands stay exact; the rest accumulate in
/// 50-digit floating point. `exact` is populated only when every radicand
/// was a perfect square.
inline EvalResult fidelity_exact(const ProtocolParams& p) {
  require_exact_scope(p, "fidelity_exact");
  const int d = p.d;
  ExactScalar rational_part = 0;
  WideFloat irrational_part = 0;
  std::size_t irrational_terms = 0;

  for (const Diagram& alpha : enumerate_diagrams(p.N - p.k, d)) {
    struct Term {
      ExactInt weight;    // m_{μ/α}
      ExactInt radicand;  // m_μ d_μ
    };
    std::vector<Term> terms;
    for (const auto& [mu, paths] : add_boxes(alpha, p.k, d)) {
      ExactInt m = multiplicity(mu, d);
      if (m == 0) continue;
      terms.push_back({paths, m * syt_count(mu)});
    }
    for (std::size_t a = 0; a < terms.size(); ++a) {
      rational_part += ExactScalar(terms[a].weight * terms[a].weight * terms[a].radicand);
      for (std::size_t b = a + 1; b < terms.size(); ++b) {
        const ExactInt coeff = 2 * terms[a].weight * terms[b].weight;
        const ExactInt product = terms[a].radicand * terms[b].radicand;
        if (auto root = exact_sqrt(product)) {
          rational_part += ExactScalar(coeff * *root);
        } else {
          irrational_part += WideFloat(coeff) * boost::multiprecision::sqrt(WideFloat(product));
          ++irrational_terms;
        }
      }
    }
  }
  const ExactScalar scale(ExactInt(1), ipow(ExactInt(d), static_cast<unsigned>(p.N + 2 * p.k)));
  if (irrational_terms == 0) {
    return exact_result(rational_part * scale, "young-diagram");
  }
  WideFloat total = (WideFloat(boost::multiprecision::numerator(rational_part)) /
                         WideFloat(boost::multiprecision::denominator(rational_part)) +
                     irrational_part) /
                    WideFloat(boost::multiprecision::denominator(scale));
  // Every summand is nonnegative, so 50-digit rounding errors stay relative.
  const double rel = kUnitRoundoff + static_cast<double>(irrational_terms + 4) * 1e-45;
  return approx_result({total.convert_to<double>(), rel}, "young-diagram", ArithPath::kExact);
}

/// p_succ = d^{-N} Σ_α m_α² min_{μ∈α} d_μ / m_μ.
inline ExactScalar psucc_exact(const ProtocolParams& p) {
  require_exact_scope(p, "psucc_exact");
  const int d = p.d;
  ExactScalar total = 0;
  for (const Diagram& alpha : enumerate_diagrams(p.N - p.k, d)) {
    const ExactInt m_alpha = multiplicity(alpha, d);
    std::optional<ExactScalar> best;
    for (const auto& [mu, paths] : add_boxes(alpha, p.k, d)) {
      ExactInt m = multiplicity(mu, d);
      if (m == 0) continue;
      ExactScalar ratio(syt_count(mu), m);
      if (!best || ratio < *best) best = ratio;
    }
    if (best) total += ExactScalar(m_alpha * m_alpha) * *best;
  }
  return total / ExactScalar(ipow(ExactInt(d), static_cast<unsigned>(p.N)));
}

namespace detail {

inline void require_qubit_scope(int N, int k, const char* op) {
  require_exact_scope(ProtocolParams{N, k, 2}, op);
}

// ln h_{sjk} for h > 0, from doubled labels; -inf when h == 0.
inline double ln_h_coeff(int s2, int j2, int k) {
  const long x = (s2 - j2 + k) / 2;
  const long y = (s2 + j2 + k + 2) / 2;
  if (x < 0 || x > k) return -std::numeric_limits<double>::infinity();
  const double lx = ln_binomial(k, x).value;
  if (y > k) return lx;
  const double ly = ln_binomial(k, y).value;
  if (ly >= lx) return -std::numeric_limits<double>::infinity();
  return lx + std::log1p(-std::exp(ly - lx));
}

inline double log_sum_exp(const std::vector<double>& xs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : xs) hi = std::max(hi, x);
  if (!std::isfinite(hi)) return hi;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

}  // namespace detail

/// Qubit fidelity in spin labels:
///   F = 2^{-(N+2k)} Σ_s ( Σ_j h_{sjk} (2j+1) √(C(N+1, N/2-j) / (N+1)) )²
/// with s over {0 or 1/2, ..., (N-k)/2} and j over
/// {max(0 or 1/2, s-k/2), ..., s+k/2}, both by parity.
inline RealApprox fidelity_qubit(int N, int k, ArithPath path) {
  detail::require_qubit_scope(N, k, "fidelity_qubit");
  const int s2_max = N - k;
  const int j2_floor = N % 2;

  if (path == ArithPath::kExact) {
    WideFloat total = 0;
    const WideFloat np1 = N + 1;
    for (int s2 = s2_max % 2; s2 <= s2_max; s2 += 2) {
      WideFloat inner = 0;
      for (int j2 = std::max(j2_floor, s2 - k); j2 <= s2 + k; j2 += 2) {
        const ExactInt h = h_coeff(HalfInt{s2}, HalfInt{j2}, k);
        if (h == 0) continue;
        const ExactInt c = binomial(N + 1, (N - j2) / 2);
        inner += WideFloat(h) * (j2 + 1) * boost::multiprecision::sqrt(WideFloat(c) / np1);
      }
      total += inner * inner;
    }
    total /= boost::multiprecision::pow(WideFloat(2), N + 2 * k);
    return {total.convert_to<double>(), kUnitRoundoff + 1e-40};
  }

  const double ln2 = std::log(2.0);
  const double ln_np1 = std::log(static_cast<double>(N) + 1);
  std::vector<double> outer;
  double worst_log = 0.0;
  std::size_t terms = 0;
  for (int s2 = s2_max % 2; s2 <= s2_max; s2 += 2) {
    std::vector<double> inner;
    for (int j2 = std::max(j2_floor, s2 - k); j2 <= s2 + k; j2 += 2) {
      const double lh = detail::ln_h_coeff(s2, j2, k);
      if (!std::isfinite(lh)) continue;
      const double lt = lh + std::log(j2 + 1.0) +
                        0.5 * (ln_binomial(N + 1, (N - j2) / 2).value - ln_np1);
      worst_log = std::max(worst_log, std::fabs(lt));
      inner.push_back(lt);
      ++terms;
    }
    if (inner.empty()) continue;
    outer.push_back(2.0 * detail::log_sum_exp(inner) - (N + 2.0 * k) * ln2);
  }
  const double value = std::exp(detail::log_sum_exp(outer));
  const double eps = std::numeric_limits<double>::epsilon();
  const double rel = 8 * eps * (worst_log + (N + 2.0 * k) * ln2 + static_cast<double>(terms));
  return {value, rel};
}

inline RealApprox fidelity_qubit(int N, int k) { return fidelity_qubit(N, k, default_arith_path(N)); }

/// p_succ = 2^{-N} (N+1)^{-1} Σ_s (2s+1)² C(N+1, (N-k)/2 - s).
inline ExactScalar psucc_qubit(int N, int k) {
  detail::require_qubit_scope(N, k, "psucc_qubit");
  ExactInt total = 0;
  for (int s2 = (N - k) % 2; s2 <= N - k; s2 += 2) {
    total += ExactInt(s2 + 1) * (s2 + 1) * binomial(N + 1, (N - k - s2) / 2);
  }
  return ExactScalar(total, ipow(ExactInt(2), static_cast<unsigned>(N)) * (N + 1));
}

}  // namespace portcap
