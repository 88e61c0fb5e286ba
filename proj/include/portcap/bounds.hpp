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

// Closed-form fidelity bounds obtained by treating teleportation as
// discrimination of the signal states, and the trace identities behind them.
//
// Signals are indexed by port tuples i = (i_1, ..., i_k): the t-th teleported
// system emerges at port i_t. Unnormalized signals are the partially
// transposed permutation operators V^{(k)}[...]; normalized ones carry 1/d^N.

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "portcap/exact_arith.hpp"
#include "portcap/protocol.hpp"

namespace portcap {

/// An ordered k-tuple of distinct ports in [1, N].
class PortTuple {
 public:
  PortTuple() = default;

  /// Validates distinctness and range.
  PortTuple(std::vector<int> indices, int num_ports) : indices_(std::move(indices)) {
    std::set<int> seen;
    for (int i : indices_) {
      if (i < 1 || i > num_ports) {
        throw PreconditionError("PortTuple: index " + std::to_string(i) + " outside [1, " +
                                std::to_string(num_ports) + "]");
      }
      if (!seen.insert(i).second) throw PreconditionError("PortTuple: indices must be distinct");
    }
  }

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  int operator[](int t) const { return indices_[t]; }

  bool operator==(const PortTuple&) const = default;

 private:
  std::vector<int> indices_;
};

/// All k!C(N,k) measurement outcomes, lexicographically ordered.
inline std::vector<PortTuple> all_port_tuples(int N, int k) {
  if (k < 0 || k > N) throw PreconditionError("all_port_tuples: requires 0 <= k <= N");
  std::vector<PortTuple> out;
  std::vector<int> current;
  std::vector<bool> used(N + 1, false);
  auto recurse = [&](auto&& self) -> void {
    if (static_cast<int>(current.size()) == k) {
      out.emplace_back(current, N);
      return;
    }
    for (int port = 1; port <= N; ++port) {
      if (used[port]) continue;
      used[port] = true;
      current.push_back(port);
      self(self);
      current.pop_back();
      used[port] = false;
    }
  };
  recurse(recurse);
  return out;
}

/// tr(ρ²) for the unnormalized ρ = Σ_a V^{(k)}[...] on n = N + k systems:
/// d^{N-k} · N!/(N-k)! · (d²+N-1)!/(d²+N-k-1)!.
inline ExactInt trace_rho_squared(int n, int k, int d) {
  const ProtocolParams p{n - k, k, d};
  require_bound_scope(p, "trace_rho_squared");
  const int N = p.N;
  return ipow(ExactInt(d), static_cast<unsigned>(N - k)) * falling_factorial(N, k) *
         falling_factorial(d * d + N - 1, k);
}

/// tr ρ for the unnormalized ρ: d^N · N!/(N-k)!.
inline ExactInt trace_rho(const ProtocolParams& p) {
  require_exact_scope(p, "trace_rho");
  return ipow(ExactInt(p.d), static_cast<unsigned>(p.N)) * falling_factorial(p.N, p.k);
}

/// tr ρ̄² with ρ̄ = ρ / tr ρ: d^{-N-k} C(N,k)^{-1} C(d²+N-1, k).
inline ExactScalar trace_rho_bar_squared(const ProtocolParams& p) {
  require_bound_scope(p, "trace_rho_bar_squared");
  const ExactInt num = binomial(p.d * p.d + p.N - 1, p.k);
  const ExactInt den = ipow(ExactInt(p.d), static_cast<unsigned>(p.N + p.k)) * binomial(p.N, p.k);
  return ExactScalar(num, den);
}

/// Lower bound on the average discrimination probability of the signal
/// ensemble with uniform prior 1/(k!C(N,k)) under square-root measurements:
/// 1 / (k!C(N,k) · r · tr ρ̄²) with average signal rank r = d^{N-k}.
inline ExactScalar pdist_lower(const ProtocolParams& p) {
  require_bound_scope(p, "pdist_lower");
  const ExactInt outcomes = falling_factorial(p.N, p.k);
  const ExactInt rank = ipow(ExactInt(p.d), static_cast<unsigned>(p.N - p.k));
  return ExactScalar(1) / (ExactScalar(outcomes * rank) * trace_rho_bar_squared(p));
}

/// F = k!C(N,k) / d^{2k} · p_dist.
inline ExactScalar fidelity_from_pdist(const ProtocolParams& p, const ExactScalar& pdist) {
  require_exact_scope(p, "fidelity_from_pdist");
  return pdist * ExactScalar(falling_factorial(p.N, p.k),
                             ipow(ExactInt(p.d), static_cast<unsigned>(2 * p.k)));
}

/// First fidelity bound: C(N,k) / C(d²+N-1, k).
inline ExactScalar fidelity_bound_ratio(const ProtocolParams& p) {
  require_bound_scope(p, "fidelity_bound_ratio");
  return ExactScalar(binomial(p.N, p.k), binomial(p.d * p.d + p.N - 1, p.k));
}

/// Second fidelity bound: (1 - (d²-1)/(d²+N-k))^k.
inline ExactScalar fidelity_bound_product(const ProtocolParams& p) {
  require_bound_scope(p, "fidelity_bound_product");
  const int d2 = p.d * p.d;
  const ExactScalar base = ExactScalar(1) - ExactScalar(d2 - 1, d2 + p.N - p.k);
  ExactScalar result = 1;
  for (int t = 0; t < p.k; ++t) result *= base;
  return result;
}

/// Bernoulli linearization of the second bound, 1 - k(d²-1)/(d²+N-k),
/// clamped at zero.
inline ExactScalar fidelity_bound_bernoulli(const ProtocolParams& p) {
  require_bound_scope(p, "fidelity_bound_bernoulli");
  const int d2 = p.d * p.d;
  if (d2 - 1 >= d2 + p.N - p.k) {
    throw PreconditionError("fidelity_bound_bernoulli: requires (d^2-1)/(d^2+N-k) < 1");
  }
  ExactScalar v = ExactScalar(1) - ExactScalar(p.k * (d2 - 1), d2 + p.N - p.k);
  return v < 0 ? ExactScalar(0) : v;
}

/// Truncation at degree `order` of
///   ∏_{s<k} (1 - (d²-1) x_s) = Σ_l (-1)^l (d²-1)^l e_l(x_0..x_{k-1}),
/// x_s = 1/(d²+N-s-1), where e_l is the elementary symmetric polynomial.
/// At order = k this is exactly fidelity_bound_ratio.
inline ExactScalar symmetric_poly_bound(const ProtocolParams& p, int order) {
  require_bound_scope(p, "symmetric_poly_bound");
  if (order < 0 || order > p.k) {
    throw PreconditionError("symmetric_poly_bound: order must lie in [0, k]");
  }
  const int d2 = p.d * p.d;
  // e[l] after processing variables x_0..x_s.
  std::vector<ExactScalar> e(p.k + 1, ExactScalar(0));
  e[0] = 1;
  for (int s = 0; s < p.k; ++s) {
    const ExactScalar x(1, d2 + p.N - s - 1);
    for (int l = s + 1; l >= 1; --l) e[l] += e[l - 1] * x;
  }
  ExactScalar total = 0;
  ExactScalar coeff = 1;
  for (int l = 0; l <= order; ++l) {
    total += coeff * e[l];
    coeff *= -(d2 - 1);
  }
  return total;
}

/// Number of coincidences Σ_t δ_t between two outcome tuples:
/// δ_t = [a_t == L_{t-1}⋯L_1(b_t)] with L_1 = (a_1, b_1) and
/// L_t = (a_t, L_{t-1}⋯L_1(b_t)).
inline int signal_pair_coincidences(const PortTuple& a, const PortTuple& b) {
  if (a.size() != b.size()) throw PreconditionError("signal_pair_coincidences: tuple sizes differ");
  std::vector<std::pair<int, int>> transpositions;
  auto apply = [&](int x) {
    for (const auto& [u, v] : transpositions) {
      if (x == u) {
        x = v;
      } else if (x == v) {
        x = u;
      }
    }
    return x;
  };
  int count = 0;
  for (int t = 0; t < a.size(); ++t) {
    const int image = apply(b[t]);
    if (image == a[t]) ++count;
    transpositions.emplace_back(a[t], image);
  }
  return count;
}

inline void require_pair_scope(const PortTuple& a, const PortTuple& b, int n, int k, int d,
                               const char* op) {
  require_bound_scope(ProtocolParams{n - k, k, d}, op);
  if (a.size() != k || b.size() != k) {
    throw PreconditionError(std::string(op) + ": tuples must have length k");
  }
  for (const PortTuple* t : {&a, &b}) {
    for (int i : t->indices()) {
      if (i < 1 || i > n - k) throw PreconditionError(std::string(op) + ": port index out of range");
    }
  }
}

/// tr(V^{(k)}[a] V^{(k)}[b]) = d^{n-2k} · d^{2 Σ_t δ_t} for unnormalized signals.
inline ExactInt pairwise_signal_trace_unnormalized(const PortTuple& a, const PortTuple& b, int n,
                                                   int k, int d) {
  require_pair_scope(a, b, n, k, d, "pairwise_signal_trace");
  const int delta = signal_pair_coincidences(a, b);
  return ipow(ExactInt(d), static_cast<unsigned>(n - 2 * k + 2 * delta));
}

/// tr(σ_a σ_b) for normalized signals (each carrying 1/d^N, N = n-k).
inline ExactScalar pairwise_signal_trace(const PortTuple& a, const PortTuple& b, int n, int k,
                                         int d) {
  const ExactInt raw = pairwise_signal_trace_unnormalized(a, b, n, k, d);
  return ExactScalar(raw, ipow(ExactInt(d), static_cast<unsigned>(2 * (n - k))));
}

/// tr(ρ²) summed pair by pair over all outcome tuples; must reproduce
/// trace_rho_squared.
inline ExactInt trace_rho_squared_by_pairs(int n, int k, int d) {
  require_bound_scope(ProtocolParams{n - k, k, d}, "trace_rho_squared_by_pairs");
  const auto tuples = all_port_tuples(n - k, k);
  std::vector<ExactInt> power(k + 1);
  for (int delta = 0; delta <= k; ++delta) {
    power[delta] = ipow(ExactInt(d), static_cast<unsigned>(n - 2 * k + 2 * delta));
  }
  ExactInt total = 0;
  for (const PortTuple& a : tuples) {
    for (const PortTuple& b : tuples) total += power[signal_pair_coincidences(a, b)];
  }
  return total;
}

}  // namespace portcap
