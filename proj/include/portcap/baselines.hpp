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

// Reference protocols (standard and optimal port-based teleportation, their
// packaged k-fold versions, optimal multi-port teleportation) and the
// classification of asymptotic behaviour along k = a N^α.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "portcap/asympt.hpp"
#include "portcap/bounds.hpp"
#include "portcap/exact_arith.hpp"
#include "portcap/exact_perf.hpp"
#include "portcap/protocol.hpp"

namespace portcap {

enum class SchemeId { kPackPBT, kPackOPBT, kMPBTBound, kMPBTExact, kOMPBT };
enum class Figure { kFidelity, kPsucc };

inline std::string to_string(SchemeId s) {
  switch (s) {
    case SchemeId::kPackPBT: return "PackPBT";
    case SchemeId::kPackOPBT: return "PackOPBT";
    case SchemeId::kMPBTBound: return "MPBT_Bound";
    case SchemeId::kMPBTExact: return "MPBT_Exact";
    case SchemeId::kOMPBT: return "OMPBT";
  }
  return "?";
}

inline std::string to_string(Figure f) { return f == Figure::kFidelity ? "fidelity" : "psucc"; }

/// Scaling k(N) = a N^α with a > 0, 0 < α <= 1.
struct ScalingSpec {
  double a = 1.0;
  double alpha = 0.5;

  /// floor(a N^α), never rounded.
  int k_at(int N) const { return static_cast<int>(std::floor(a * std::pow(static_cast<double>(N), alpha))); }
};

/// Single-port protocol used inside a packaged scheme.
enum class PbtBase { kPbtExact, kOpbt };

/// How N ports are split into k packages.
///   kStrict: k must divide N.
///   kFloor: floor(N/k) ports per package (biased low when k does not divide N).
///   kContinuous: closed forms evaluated at the real ratio N/k (OPBT only).
enum class PackagingMode { kStrict, kFloor, kContinuous };

/// Qubit optimal PBT: cos²(π/(N+2)).
inline RealApprox opbt_fidelity(int N) {
  if (N < 1) throw PreconditionError("opbt_fidelity: N must be >= 1");
  const double c = std::cos(std::numbers::pi / (N + 2.0));
  return {c * c, 4 * kUnitRoundoff};
}

namespace detail {

inline double ports_per_package(int N, int k, PackagingMode mode, PbtBase base) {
  if (N < 1 || k < 1) throw PreconditionError("packaged: N and k must be >= 1");
  switch (mode) {
    case PackagingMode::kStrict:
      if (N % k != 0) throw PreconditionError("packaged: k must divide N in strict packaging mode");
      return N / k;
    case PackagingMode::kFloor:
      if (N / k < 1) throw PreconditionError("packaged: requires N >= k");
      return N / k;
    case PackagingMode::kContinuous:
      if (base == PbtBase::kPbtExact) {
        throw PreconditionError("packaged: continuous packaging is defined for the OPBT base only");
      }
      return static_cast<double>(N) / k;
  }
  return 0;
}

// x^k for x in [0, 1], zero for nonpositive x.
inline double pow_unit(double x, double k) {
  if (x <= 0.0) return 0.0;
  return std::pow(x, k);
}

}  // namespace detail

/// k independent single-port protocols with N/k ports each: F_base(N/k)^k.
inline RealApprox packaged_fidelity(int N, int k, PbtBase base,
                                    PackagingMode mode = PackagingMode::kStrict) {
  const double n = detail::ports_per_package(N, k, mode, base);
  double single;
  double rel;
  if (base == PbtBase::kOpbt) {
    const double c = std::cos(std::numbers::pi / (n + 2.0));
    single = c * c;
    rel = 4 * kUnitRoundoff;
  } else {
    auto f = fidelity_qubit(static_cast<int>(n), 1);
    single = f.value;
    rel = f.rel_err_bound;
  }
  return {detail::pow_unit(single, k), k * rel + 4 * kUnitRoundoff};
}

struct PackagedApprox {
  double product = 0.0;  // (1 - 3k/(4N))^k
  double linear = 0.0;   // 1 - 3k²/(4N)
};

/// Qubit approximations of packaged standard PBT.
inline PackagedApprox packaged_fidelity_approx(int N, int k) {
  if (N < 1 || k < 1) throw PreconditionError("packaged_fidelity_approx: N and k must be >= 1");
  const double base = 1.0 - 3.0 * k / (4.0 * N);
  return {std::pow(base, k), 1.0 - 3.0 * k * static_cast<double>(k) / (4.0 * N)};
}

/// Optimal multi-port p_succ = ∏_{m=2}^{d²} (1 - k/(N-1+m)); zero when any
/// factor is nonpositive.
inline ExactScalar ompbt_psucc(const ProtocolParams& p) {
  require_exact_scope(p, "ompbt_psucc");
  ExactScalar result = 1;
  for (int m = 2; m <= p.d * p.d; ++m) {
    ExactScalar factor = ExactScalar(1) - ExactScalar(p.k, p.N - 1 + m);
    if (factor <= 0) return ExactScalar(0);
    result *= factor;
  }
  return result;
}

/// Real-valued ompbt_psucc for arbitrary (possibly out-of-scope) k.
inline double ompbt_psucc_real(int N, long k, int d) {
  double result = 1.0;
  for (int m = 2; m <= d * d; ++m) {
    const double factor = 1.0 - static_cast<double>(k) / (N - 1.0 + m);
    if (factor <= 0.0) return 0.0;
    result *= factor;
  }
  return result;
}

enum class PsuccBaseline { kPbtApprox, kOpbt };

/// Single-port success probabilities: 1 - √(8/π)/√N (standard, large-N
/// approximation) and 1 - 3/(3+N) (optimal).
inline EvalResult psucc_baselines(int N, PsuccBaseline which) {
  if (N < 1) throw PreconditionError("psucc_baselines: N must be >= 1");
  if (which == PsuccBaseline::kOpbt) {
    return exact_result(ExactScalar(1) - ExactScalar(3, 3 + N), "opbt");
  }
  const double c = std::sqrt(8.0 / std::numbers::pi);
  return approx_result({1.0 - c / std::sqrt(static_cast<double>(N)), 4 * kUnitRoundoff},
                       "pbt-approx", ArithPath::kLog);
}

/// k independent single-port probabilistic protocols with N/k ports each,
/// each factor clamped at zero.
inline double packaged_psucc(int N, int k, PbtBase base, PackagingMode mode) {
  // Both single-port forms are closed expressions, so continuous packaging is allowed for either.
  const double n = detail::ports_per_package(N, k, mode, PbtBase::kOpbt);
  const double single = base == PbtBase::kOpbt ? 1.0 - 3.0 / (3.0 + n)
                                               : 1.0 - std::sqrt(8.0 / std::numbers::pi) / std::sqrt(n);
  return detail::pow_unit(single, k);
}

/// Product bound (1 - (d²-1)/(d²+N-k))^k in double precision for any
/// 1 <= k < N; the curve whose k = aN limit is e^{-(d²-1)a/(1-a)}.
inline double fidelity_bound_product_real(int N, long k, int d) {
  if (k < 1 || k >= N) {
    throw PreconditionError("fidelity_bound_product_real: requires 1 <= k < N");
  }
  const double x = (d * d - 1.0) / (d * d + static_cast<double>(N) - k);
  return detail::pow_unit(1.0 - x, static_cast<double>(k));
}

enum class LimitKind { kZero, kOne, kCritical };

struct LimitClass {
  LimitKind kind = LimitKind::kOne;
  double value = 1.0;         // 0, 1 or the critical constant
  double alpha_cr = 0.0;
  bool lower_bound = false;   // true when only a lower bound on the limit is known

  std::string str() const {
    switch (kind) {
      case LimitKind::kZero: return "zero";
      case LimitKind::kOne: return "one";
      case LimitKind::kCritical: return lower_bound ? "critical_lower_bound" : "critical";
    }
    return "?";
  }
};

/// Critical exponent of a (scheme, figure) pair, or throws for combinations
/// without a tabulated limit.
inline double critical_alpha(SchemeId scheme, Figure figure) {
  if (figure == Figure::kFidelity) {
    switch (scheme) {
      case SchemeId::kPackPBT: return 0.5;
      case SchemeId::kPackOPBT: return 2.0 / 3.0;
      case SchemeId::kMPBTBound: return 1.0;
      default: break;
    }
  } else {
    switch (scheme) {
      case SchemeId::kPackPBT: return 1.0 / 3.0;
      case SchemeId::kPackOPBT: return 0.5;
      case SchemeId::kMPBTExact: return 0.5;
      case SchemeId::kOMPBT: return 1.0;
      default: break;
    }
  }
  throw PreconditionError("critical_limit: no tabulated limit for scheme " + to_string(scheme) +
                          " with figure " + to_string(figure));
}

/// Asymptotic class of the figure of merit along k = a N^α (qubits unless
/// d is given for the MPBT fidelity bound).
inline LimitClass critical_limit(SchemeId scheme, const ScalingSpec& spec, Figure figure, int d = 2) {
  const double a = spec.a;
  if (!(a > 0.0)) throw PreconditionError("critical_limit: a must be > 0");
  if (!(spec.alpha > 0.0 && spec.alpha <= 1.0)) {
    throw PreconditionError("critical_limit: alpha must lie in (0, 1]");
  }
  const double alpha_cr = critical_alpha(scheme, figure);
  LimitClass out;
  out.alpha_cr = alpha_cr;
  constexpr double kSame = 1e-12;
  if (spec.alpha < alpha_cr - kSame) {
    out.kind = LimitKind::kOne;
    out.value = 1.0;
    return out;
  }
  if (spec.alpha > alpha_cr + kSame) {
    out.kind = LimitKind::kZero;
    out.value = 0.0;
    return out;
  }
  out.kind = LimitKind::kCritical;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  if (figure == Figure::kFidelity) {
    switch (scheme) {
      case SchemeId::kPackPBT: out.value = std::exp(-0.75 * a * a); break;
      case SchemeId::kPackOPBT: out.value = std::exp(-pi2 * a * a * a); break;
      case SchemeId::kMPBTBound:
        if (a >= 1.0) throw PreconditionError("critical_limit: MPBT_Bound at alpha = 1 requires a < 1");
        out.value = std::exp(-(d * d - 1.0) * a / (1.0 - a));
        out.lower_bound = true;
        break;
      default: break;
    }
  } else {
    switch (scheme) {
      case SchemeId::kPackPBT: out.value = std::exp(-std::sqrt(8.0 / std::numbers::pi) * std::pow(a, 1.5)); break;
      case SchemeId::kPackOPBT: out.value = std::exp(-3.0 * a * a); break;
      case SchemeId::kMPBTExact: out.value = gaussian_limit(a); break;
      case SchemeId::kOMPBT:
        if (a > 1.0) throw PreconditionError("critical_limit: OMPBT at alpha = 1 requires a <= 1");
        out.value = (1.0 - a) * (1.0 - a) * (1.0 - a);
        break;
      default: break;
    }
  }
  return out;
}

/// The finite-N quantity whose N → ∞ behaviour critical_limit classifies,
/// evaluated at k ports-to-teleport for qubits.
inline double scheme_value(SchemeId scheme, Figure figure, int N, int k,
                           PackagingMode mode = PackagingMode::kFloor) {
  critical_alpha(scheme, figure);  // validates the combination
  if (k < 1) throw PreconditionError("scheme_value: k must be >= 1");
  auto opbt_mode = [&] { return mode; };
  auto pbt_mode = [&] { return mode == PackagingMode::kContinuous ? PackagingMode::kFloor : mode; };
  if (figure == Figure::kFidelity) {
    switch (scheme) {
      case SchemeId::kPackPBT:
        if (k > N) return 0.0;
        return packaged_fidelity(N, k, PbtBase::kPbtExact, pbt_mode()).value;
      case SchemeId::kPackOPBT:
        if (k > N) return 0.0;
        return packaged_fidelity(N, k, PbtBase::kOpbt, opbt_mode()).value;
      case SchemeId::kMPBTBound:
        if (k >= N) throw PreconditionError("scheme_value: MPBT_Bound requires k < N");
        return fidelity_bound_product_real(N, k, 2);
      default: break;
    }
  } else {
    switch (scheme) {
      case SchemeId::kPackPBT:
        if (k > N) return 0.0;
        return packaged_psucc(N, k, PbtBase::kPbtExact, pbt_mode());
      case SchemeId::kPackOPBT:
        if (k > N) return 0.0;
        return packaged_psucc(N, k, PbtBase::kOpbt, opbt_mode());
      case SchemeId::kMPBTExact:
        if (k > N) return 0.0;
        if (default_arith_path(N) == ArithPath::kExact) return to_double(psucc_qubit(N, k));
        return psucc_largeN(N, k);
      case SchemeId::kOMPBT: return ompbt_psucc_real(N, k, 2);
      default: break;
    }
  }
  throw PreconditionError("scheme_value: unsupported combination");
}

}  // namespace portcap
