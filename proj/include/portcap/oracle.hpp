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

// Brute-force reference implementation at small scale: explicit signal
// matrices, the square-root measurement, and the resulting fidelity.
//
// Systems are ordered A_1..A_N (Bob's port halves) followed by the k input
// slots; basis index digits are most significant first. The signal for
// outcome i is (1/d^{N-k}) 1 ⊗ φ⁺ with φ⁺ the normalized maximally entangled
// projector pairing port i_t with slot t.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <string>
#include <vector>

#include "portcap/bounds.hpp"
#include "portcap/exact_arith.hpp"
#include "portcap/protocol.hpp"

namespace portcap {

using DenseOperator = Eigen::MatrixXd;

inline constexpr long kOracleMaxDim = 4096;

/// d^{N+k}, or throws when it exceeds max_dim.
inline long check_budget(const ProtocolParams& p, long max_dim = kOracleMaxDim) {
  require_exact_scope(p, "oracle");
  long dim = 1;
  for (int s = 0; s < p.N + p.k; ++s) {
    dim *= p.d;
    if (dim > max_dim) {
      throw PreconditionError("oracle: d^(N+k) exceeds the dimension budget of " +
                              std::to_string(max_dim));
    }
  }
  return dim;
}

namespace detail {

// Columns v_x = Σ_z |x, z⟩ over assignments x of the untouched ports, with z
// filling each (port i_t, slot t) pair with equal digits. σ_i = V Vᵀ / d^N.
inline Eigen::SparseMatrix<double> signal_factor(const PortTuple& i, const ProtocolParams& p) {
  const int n = p.N + p.k;
  const long dim = check_budget(p);
  if (i.size() != p.k) throw PreconditionError("build_signal: tuple length must equal k");
  for (int port : i.indices()) {
    if (port < 1 || port > p.N) throw PreconditionError("build_signal: port index out of range");
  }
  std::vector<long> place(n);
  for (int s = 0; s < n; ++s) {
    long w = 1;
    for (int t = s + 1; t < n; ++t) w *= p.d;
    place[s] = w;
  }
  std::vector<bool> paired(p.N, false);
  for (int port : i.indices()) paired[port - 1] = true;
  std::vector<int> free_ports;
  for (int s = 0; s < p.N; ++s) {
    if (!paired[s]) free_ports.push_back(s);
  }

  long free_count = 1;
  for (std::size_t s = 0; s < free_ports.size(); ++s) free_count *= p.d;
  long pair_count = 1;
  for (int t = 0; t < p.k; ++t) pair_count *= p.d;

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(free_count * pair_count));
  for (long x = 0; x < free_count; ++x) {
    long base = 0;
    long rest = x;
    for (auto it = free_ports.rbegin(); it != free_ports.rend(); ++it) {
      base += (rest % p.d) * place[*it];
      rest /= p.d;
    }
    for (long z = 0; z < pair_count; ++z) {
      long idx = base;
      long zr = z;
      for (int t = p.k - 1; t >= 0; --t) {
        const long digit = zr % p.d;
        zr /= p.d;
        idx += digit * (place[i[t] - 1] + place[p.N + t]);
      }
      entries.emplace_back(static_cast<int>(idx), static_cast<int>(x), 1.0);
    }
  }
  Eigen::SparseMatrix<double> v(dim, free_count);
  v.setFromTriplets(entries.begin(), entries.end());
  return v;
}

inline double inv_dN(const ProtocolParams& p) { return std::pow(static_cast<double>(p.d), -p.N); }

}  // namespace detail

/// The normalized signal σ_i as a dense matrix.
inline DenseOperator build_signal(const PortTuple& i, const ProtocolParams& p) {
  const auto v = detail::signal_factor(i, p);
  DenseOperator sigma = DenseOperator(v * v.transpose());
  return sigma * detail::inv_dN(p);
}

struct SrmSystem {
  DenseOperator rho;           // Σ_i σ_i
  DenseOperator rho_inv_sqrt;  // pseudo-inverse square root on the support of ρ
  DenseOperator fail;          // projector onto the kernel of ρ
  std::vector<PortTuple> outcomes;
  std::vector<DenseOperator> povm;  // Π_i = ρ^{-1/2} σ_i ρ^{-1/2}
  long rank = 0;
};

/// ρ and its square-root measurement. Eigenvalues below 1e-12·λ_max count as
/// zero.
inline SrmSystem rho_and_srm(const ProtocolParams& p, bool with_povm = true) {
  const long dim = check_budget(p);
  SrmSystem out;
  out.outcomes = all_port_tuples(p.N, p.k);
  std::vector<Eigen::SparseMatrix<double>> factors;
  factors.reserve(out.outcomes.size());
  out.rho = DenseOperator::Zero(dim, dim);
  for (const PortTuple& i : out.outcomes) {
    factors.push_back(detail::signal_factor(i, p));
    out.rho += DenseOperator(factors.back() * factors.back().transpose());
  }
  out.rho *= detail::inv_dN(p);

  Eigen::SelfAdjointEigenSolver<DenseOperator> eig(out.rho);
  if (eig.info() != Eigen::Success) throw std::runtime_error("oracle: eigensolver failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double threshold = 1e-12 * lambda.maxCoeff();
  Eigen::VectorXd inv_sqrt(dim);
  Eigen::VectorXd kernel(dim);
  for (long s = 0; s < dim; ++s) {
    const bool support = lambda(s) > threshold;
    inv_sqrt(s) = support ? 1.0 / std::sqrt(lambda(s)) : 0.0;
    kernel(s) = support ? 0.0 : 1.0;
    if (support) ++out.rank;
  }
  const DenseOperator& u = eig.eigenvectors();
  out.rho_inv_sqrt = u * inv_sqrt.asDiagonal() * u.transpose();
  out.fail = u * kernel.asDiagonal() * u.transpose();
  if (with_povm) {
    for (const auto& v : factors) {
      const DenseOperator w = out.rho_inv_sqrt * v;
      out.povm.push_back(w * w.transpose() * detail::inv_dN(p));
    }
  }
  return out;
}

namespace detail {

// Σ_i tr(Π_i σ_i) = d^{-2N} Σ_i ||V_iᵀ ρ^{-1/2} V_i||_F².
inline double srm_success_sum(const ProtocolParams& p) {
  const SrmSystem sys = rho_and_srm(p, false);
  double total = 0.0;
  for (const PortTuple& i : sys.outcomes) {
    const auto v = signal_factor(i, p);
    const DenseOperator g = DenseOperator(v.transpose() * sys.rho_inv_sqrt * v);
    total += g.squaredNorm();
  }
  const double s = inv_dN(p);
  return total * s * s;
}

}  // namespace detail

/// Entanglement fidelity under the square-root measurement:
/// d^{-2k} Σ_i tr(Π_i σ_i).
inline double srm_fidelity(const ProtocolParams& p) {
  return detail::srm_success_sum(p) * std::pow(static_cast<double>(p.d), -2 * p.k);
}

/// Average discrimination probability of the signals under the square-root
/// measurement, uniform prior.
inline double srm_pdist(const ProtocolParams& p) {
  return detail::srm_success_sum(p) / to_double(ExactScalar(falling_factorial(p.N, p.k)));
}

/// tr ρ̄² with ρ̄ = ρ / tr ρ, from the explicit matrix.
inline double matrix_trace_rho_bar_squared(const ProtocolParams& p) {
  const SrmSystem sys = rho_and_srm(p, false);
  const double tr = sys.rho.trace();
  return sys.rho.squaredNorm() / (tr * tr);
}

/// tr(σ_a σ_b) for normalized signals, via the sparse factors.
inline double matrix_pairwise_trace(const PortTuple& a, const PortTuple& b, const ProtocolParams& p) {
  const auto va = detail::signal_factor(a, p);
  const auto vb = detail::signal_factor(b, p);
  const Eigen::SparseMatrix<double> g = va.transpose() * vb;
  const double s = detail::inv_dN(p);
  return g.squaredNorm() * s * s;
}

/// tr(ρ²) for the unnormalized ρ = d^N Σ σ_i, summed over all signal pairs.
inline double matrix_trace_rho_squared(const ProtocolParams& p) {
  check_budget(p);
  const auto tuples = all_port_tuples(p.N, p.k);
  std::vector<Eigen::SparseMatrix<double>> factors;
  for (const PortTuple& i : tuples) factors.push_back(detail::signal_factor(i, p));
  double total = 0.0;
  for (const auto& va : factors) {
    for (const auto& vb : factors) {
      const Eigen::SparseMatrix<double> g = va.transpose() * vb;
      total += g.squaredNorm();
    }
  }
  return total;
}

}  // namespace portcap
