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

#include <optional>
#include <string>

#include "portcap/exact_arith.hpp"

namespace portcap {

/// N ports of local dimension d, teleporting k systems in one go.
struct ProtocolParams {
  int N = 1;
  int k = 1;
  int d = 2;

  std::string str() const {
    return "(N=" + std::to_string(N) + ", k=" + std::to_string(k) + ", d=" + std::to_string(d) + ")";
  }
};

/// 1 <= k <= N, d >= 2.
inline void require_exact_scope(const ProtocolParams& p, const char* op) {
  if (p.N < 1) throw PreconditionError(std::string(op) + ": N must be >= 1");
  if (p.d < 2) throw PreconditionError(std::string(op) + ": d must be >= 2");
  if (p.k < 1) throw PreconditionError(std::string(op) + ": k must be >= 1");
  if (p.k > p.N) throw PreconditionError(std::string(op) + ": k must be <= N");
}

/// Exact scope plus k <= floor(N/2), the range covered by the closed-form
/// fidelity bounds.
inline void require_bound_scope(const ProtocolParams& p, const char* op) {
  require_exact_scope(p, op);
  if (p.k > p.N / 2) throw PreconditionError(std::string(op) + ": k must be <= floor(N/2)");
}

/// A figure of merit together with how it was computed.
struct EvalResult {
  RealApprox approx;
  std::optional<ExactScalar> exact;  // present iff the rational path produced the value
  std::string method;
  ArithPath path = ArithPath::kExact;

  double value() const { return approx.value; }
};

inline EvalResult exact_result(const ExactScalar& x, std::string method) {
  return EvalResult{to_real(x), x, std::move(method), ArithPath::kExact};
}

inline EvalResult approx_result(RealApprox x, std::string method, ArithPath path) {
  return EvalResult{x, std::nullopt, std::move(method), path};
}

}  // namespace portcap
