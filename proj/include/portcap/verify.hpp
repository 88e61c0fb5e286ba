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

// Self-check: every closed form against the dense oracle on all instances
// that fit a dimension budget.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "portcap/asympt.hpp"
#include "portcap/bounds.hpp"
#include "portcap/exact_perf.hpp"
#include "portcap/oracle.hpp"
#include "portcap/report.hpp"

namespace portcap {

struct CheckResult {
  std::string name;
  bool pass = true;
  double seconds = 0.0;
  std::string detail;
};

/// {(N, k, d): d^{N+k} <= max_dim, 1 <= k <= floor(N/2)}, ordered by d, N, k.
inline std::vector<ProtocolParams> verification_grid(long max_dim) {
  std::vector<ProtocolParams> grid;
  for (int d = 2; d * d * d <= max_dim; ++d) {
    for (int N = 2;; ++N) {
      bool any = false;
      for (int k = 1; k <= N / 2; ++k) {
        double dim = std::pow(static_cast<double>(d), N + k);
        if (dim > static_cast<double>(max_dim)) break;
        grid.push_back({N, k, d});
        any = true;
      }
      if (!any) break;
    }
  }
  return grid;
}

/// ∫_0^∞ x² φ(x + a) dx · 2 by double-exponential quadrature.
inline double gaussian_limit_quadrature(double a) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [a](double x) { return x * x * normal_pdf(x + a); };
  return 2.0 * integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

namespace detail {

struct OracleInstance {
  ProtocolParams p;
  double srm_sum = 0.0;          // Σ tr(Π_i σ_i)
  double rho_bar_sq = 0.0;       // matrix tr ρ̄²
  double rho_trace = 0.0;        // tr ρ
  double povm_residual = 0.0;    // ||Σ Π_i + Π_fail - 1||
  double povm_min_eig = 0.0;     // min eigenvalue over all Π_i
  bool povm_checked = false;
};

inline OracleInstance run_oracle_instance(const ProtocolParams& p, long povm_dim_limit) {
  OracleInstance inst{p};
  const long dim = check_budget(p);
  const bool with_povm = dim <= povm_dim_limit;
  const SrmSystem sys = rho_and_srm(p, with_povm);
  inst.rho_trace = sys.rho.trace();
  inst.rho_bar_sq = sys.rho.squaredNorm() / (inst.rho_trace * inst.rho_trace);
  const double s = std::pow(static_cast<double>(p.d), -p.N);
  for (const PortTuple& i : sys.outcomes) {
    const auto v = signal_factor(i, p);
    inst.srm_sum += DenseOperator(v.transpose() * sys.rho_inv_sqrt * v).squaredNorm() * s * s;
  }
  if (with_povm) {
    DenseOperator total = sys.fail;
    double min_eig = 0.0;
    for (const auto& pi : sys.povm) {
      total += pi;
      Eigen::SelfAdjointEigenSolver<DenseOperator> eig(pi, Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
    }
    total -= DenseOperator::Identity(dim, dim);
    inst.povm_residual = total.operatorNorm();
    inst.povm_min_eig = min_eig;
    inst.povm_checked = true;
  }
  return inst;
}

template <typename Fn>
CheckResult timed_check(std::string name, Fn body) {
  CheckResult r;
  r.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline void fail(CheckResult& r, const ProtocolParams& p, const std::string& what) {
  if (r.pass) r.detail = p.str() + " " + what;
  r.pass = false;
}

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace detail

/// Runs every consistency check on the grid for max_dim and returns one
/// result per check, in a fixed order.
inline std::vector<CheckResult> run_verification(long max_dim) {
  if (max_dim < 8 || max_dim > kOracleMaxDim) {
    throw PreconditionError("verify: max-dim must lie in [8, 4096]");
  }
  const auto grid = verification_grid(max_dim);
  std::vector<CheckResult> out;

  std::vector<detail::OracleInstance> oracle;
  out.push_back(detail::timed_check("oracle-build", [&](CheckResult& r) {
    oracle = parallel_map(grid.size(), [&](std::size_t g) {
      return detail::run_oracle_instance(grid[g], 256);
    });
    r.detail = std::to_string(grid.size()) + " instances";
  }));

  out.push_back(detail::timed_check("srm-povm", [&](CheckResult& r) {
    int checked = 0;
    for (const auto& inst : oracle) {
      if (!inst.povm_checked) continue;
      ++checked;
      if (inst.povm_residual > 1e-10) detail::fail(r, inst.p, "completeness residual too large");
      if (inst.povm_min_eig < -1e-10) detail::fail(r, inst.p, "negative POVM eigenvalue");
    }
    if (r.pass) r.detail = std::to_string(checked) + " instances";
  }));

  out.push_back(detail::timed_check("trace-rho", [&](CheckResult& r) {
    for (const auto& inst : oracle) {
      const double expect = to_double(ExactScalar(falling_factorial(inst.p.N, inst.p.k)));
      if (!detail::close(inst.rho_trace, expect, 1e-9 * expect)) detail::fail(r, inst.p, "tr rho");
    }
  }));

  out.push_back(detail::timed_check("rho-bar-squared", [&](CheckResult& r) {
    for (const auto& inst : oracle) {
      const double formula = to_double(trace_rho_bar_squared(inst.p));
      if (!detail::close(inst.rho_bar_sq, formula, 1e-9)) {
        detail::fail(r, inst.p, "matrix " + format_decimal(inst.rho_bar_sq) + " vs formula " +
                                    format_decimal(formula));
      }
    }
  }));

  out.push_back(detail::timed_check("trace-rho-squared-count", [&](CheckResult& r) {
    for (const auto& p : grid) {
      const ExactInt formula = trace_rho_squared(p.N + p.k, p.k, p.d);
      if (trace_rho_squared_by_pairs(p.N + p.k, p.k, p.d) != formula) {
        detail::fail(r, p, "pair-count sum differs");
      }
      const double matrix = matrix_trace_rho_squared(p);
      const double f = to_double(ExactScalar(formula));
      if (!detail::close(matrix, f, 1e-9 * f)) detail::fail(r, p, "matrix sum differs");
    }
  }));

  out.push_back(detail::timed_check("pairwise-trace", [&](CheckResult& r) {
    long pairs = 0;
    for (const auto& p : grid) {
      const auto tuples = all_port_tuples(p.N, p.k);
      for (const auto& a : tuples) {
        for (const auto& b : tuples) {
          const double formula = to_double(pairwise_signal_trace(a, b, p.N + p.k, p.k, p.d));
          const double matrix = matrix_pairwise_trace(a, b, p);
          if (!detail::close(formula, matrix, 1e-12)) detail::fail(r, p, "pair trace differs");
          ++pairs;
        }
      }
    }
    if (r.pass) r.detail = std::to_string(pairs) + " pairs";
  }));

  out.push_back(detail::timed_check("swapped-pair-trace", [&](CheckResult& r) {
    const PortTuple a({4, 3}, 4);
    const PortTuple b({3, 4}, 4);
    for (int d = 2; d <= 4; ++d) {
      const ExactScalar t = pairwise_signal_trace(a, b, 6, 2, d);
      const ExactScalar d4(ExactInt(1), ipow(ExactInt(d), 4));
      if (t != d4) detail::fail(r, {4, 2, d}, "expected 1/d^4, got " + to_fraction_string(t));
    }
    const double m = matrix_pairwise_trace(a, b, {4, 2, 2});
    if (!detail::close(m, 1.0 / 16, 1e-12)) detail::fail(r, {4, 2, 2}, "matrix disagrees");
    if (detail::close(m, 1.0 / 64, 1e-12)) detail::fail(r, {4, 2, 2}, "matrix gives 1/d^6");
    if (r.pass) r.detail = "trace is 1/d^4, not 1/d^6";
  }));

  out.push_back(detail::timed_check("srm-fidelity-vs-closed-form", [&](CheckResult& r) {
    for (const auto& inst : oracle) {
      const double srm = inst.srm_sum * std::pow(static_cast<double>(inst.p.d), -2 * inst.p.k);
      const double closed = fidelity_exact(inst.p).value();
      if (!detail::close(srm, closed, 1e-9)) {
        detail::fail(r, inst.p, "srm " + format_decimal(srm) + " vs closed form " +
                                    format_decimal(closed));
      }
    }
  }));

  out.push_back(detail::timed_check("pdist-identity-and-lower-bound", [&](CheckResult& r) {
    for (const auto& inst : oracle) {
      const ExactInt outcomes = falling_factorial(inst.p.N, inst.p.k);
      const double pdist = inst.srm_sum / to_double(ExactScalar(outcomes));
      const double fid = inst.srm_sum * std::pow(static_cast<double>(inst.p.d), -2 * inst.p.k);
      const double via = to_double(fidelity_from_pdist(inst.p, ExactScalar(1))) * pdist;
      if (!detail::close(fid, via, 1e-10)) detail::fail(r, inst.p, "F != k!C(N,k)/d^2k p_dist");
      if (pdist < to_double(pdist_lower(inst.p)) - 1e-12) detail::fail(r, inst.p, "p_dist below bound");
    }
  }));

  out.push_back(detail::timed_check("bound-chain", [&](CheckResult& r) {
    std::vector<ProtocolParams> chain = grid;
    for (int N = 2; N <= 12; ++N) {
      for (int k = 1; k <= N / 2; ++k) chain.push_back({N, k, 2});
    }
    for (const auto& p : chain) {
      const ExactScalar bern = fidelity_bound_bernoulli(p);
      const ExactScalar prod = fidelity_bound_product(p);
      const ExactScalar ratio = fidelity_bound_ratio(p);
      const double fid = fidelity_exact(p).value();
      if (!(bern <= prod && prod <= ratio && to_double(ratio) <= fid * (1 + 1e-12))) {
        detail::fail(r, p, "bound chain violated");
      }
    }
    if (r.pass) r.detail = std::to_string(chain.size()) + " instances";
  }));

  out.push_back(detail::timed_check("qubit-forms", [&](CheckResult& r) {
    for (int N = 2; N <= 12; ++N) {
      for (int k = 1; k <= N / 2; ++k) {
        const ProtocolParams p{N, k, 2};
        const double general = fidelity_exact(p).value();
        const double qubit = fidelity_qubit(N, k, ArithPath::kExact).value;
        if (std::fabs(general - qubit) > 1e-12 * general) detail::fail(r, p, "fidelity forms differ");
        if (psucc_qubit(N, k) != psucc_exact(p)) detail::fail(r, p, "psucc forms differ");
      }
    }
  }));

  out.push_back(detail::timed_check("gaussian-limit-quadrature", [&](CheckResult& r) {
    for (int s = 0; s <= 12; ++s) {
      const double a = 0.25 * s;
      if (!detail::close(gaussian_limit(a), gaussian_limit_quadrature(a), 1e-10)) {
        detail::fail(r, {}, "a=" + format_decimal(a));
      }
    }
    if (gaussian_limit(0.0) != 1.0) detail::fail(r, {}, "gaussian_limit(0) != 1");
  }));

  return out;
}

}  // namespace portcap
