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

// Output plumbing shared by the command-line tool: decimal formatting,
// records, CSV/JSON writers and an order-preserving parallel map.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "portcap/exact_arith.hpp"
#include "portcap/protocol.hpp"

namespace portcap {

inline constexpr int kSignificantDigits = 12;

namespace detail {

// %g-style rendering of a nonzero decimal 0.d1d2...d12 × 10^(exp10 + 1),
// with trailing zeros dropped.
inline std::string render_decimal(bool negative, std::string digits, int exp10) {
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out = negative ? "-" : "";
  if (exp10 < -4 || exp10 >= kSignificantDigits) {
    out += digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    char buf[16];
    std::snprintf(buf, sizeof buf, "e%c%02d", exp10 < 0 ? '-' : '+', exp10 < 0 ? -exp10 : exp10);
    return out + buf;
  }
  if (exp10 < 0) return out + "0." + std::string(-exp10 - 1, '0') + digits;
  if (static_cast<int>(digits.size()) <= exp10 + 1) {
    return out + digits + std::string(exp10 + 1 - digits.size(), '0');
  }
  return out + digits.substr(0, exp10 + 1) + "." + digits.substr(exp10 + 1);
}

}  // namespace detail

/// 12 significant digits, round-half-even on the binary value.
inline std::string format_decimal(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x);
  return buf;
}

/// 12 significant digits of an exact rational, round-half-even on the exact
/// value, in the same layout as format_decimal.
inline std::string format_decimal(const ExactScalar& x) {
  if (x == 0) return "0";
  const bool negative = x < 0;
  ExactInt num = boost::multiprecision::numerator(x);
  if (negative) num = -num;
  const ExactInt den = boost::multiprecision::denominator(x);
  // Initial guess of the decimal exponent from the digit counts.
  int exp10 = static_cast<int>(num.str().size()) - static_cast<int>(den.str().size());
  ExactInt q;
  for (;;) {
    // scaled = x · 10^(11 - exp10)
    const int shift = kSignificantDigits - 1 - exp10;
    ExactInt n = num;
    ExactInt m = den;
    if (shift >= 0) {
      n *= ipow(ExactInt(10), static_cast<unsigned>(shift));
    } else {
      m *= ipow(ExactInt(10), static_cast<unsigned>(-shift));
    }
    ExactInt r;
    boost::multiprecision::divide_qr(n, m, q, r);
    const ExactInt lo = ipow(ExactInt(10), kSignificantDigits - 1);
    const ExactInt hi = lo * 10;
    if (q < lo) {
      --exp10;
      continue;
    }
    if (q >= hi) {
      ++exp10;
      continue;
    }
    const ExactInt twice = 2 * r;
    if (twice > m || (twice == m && (q & 1) != 0)) ++q;
    if (q == hi) {
      q = lo;
      ++exp10;
    }
    break;
  }
  return detail::render_decimal(negative, q.str(), exp10);
}

/// One computed figure of merit as emitted by the command-line tool.
struct OutputRecord {
  std::string scheme;
  int N = 0;
  int k = 0;
  int d = 0;
  std::string quantity;
  std::string value;
  std::optional<std::string> exact;
  std::string method;
};

inline OutputRecord make_record(std::string scheme, const ProtocolParams& p, std::string quantity,
                                const EvalResult& r) {
  OutputRecord rec{std::move(scheme), p.N, p.k, p.d, std::move(quantity), "", std::nullopt, r.method};
  if (r.exact) {
    rec.value = format_decimal(*r.exact);
    rec.exact = to_fraction_string(*r.exact);
  } else {
    rec.value = format_decimal(r.approx.value);
  }
  return rec;
}

enum class OutputFormat { kCsv, kJson };

/// Joins cells with commas; cells never contain separators.
inline std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (c) out += ',';
    out += cells[c];
  }
  return out;
}

/// Order-preserving parallel map over [0, count). The worker count is the
/// hardware concurrency capped by PORTCAP_THREADS (when set) and by count.
/// The first exception thrown by any task is rethrown.
template <typename Fn>
auto parallel_map(std::size_t count, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<std::optional<T>> slots(count);
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PORTCAP_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) workers = static_cast<unsigned>(cap);
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));

  std::exception_ptr failure;
  std::mutex mu;
  std::size_t next = 0;
  auto run = [&] {
    for (;;) {
      std::size_t idx;
      {
        std::lock_guard lock(mu);
        if (next >= count || failure) return;
        idx = next++;
      }
      try {
        slots[idx].emplace(fn(idx));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline void write_records(std::ostream& os, const std::vector<OutputRecord>& records,
                          OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    os << "scheme,N,k,d,quantity,value,exact,method\n";
    for (const auto& r : records) {
      os << csv_line({r.scheme, std::to_string(r.N), std::to_string(r.k), std::to_string(r.d),
                      r.quantity, r.value, r.exact.value_or(""), r.method})
         << '\n';
    }
    return;
  }
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["scheme"] = r.scheme;
    j["N"] = r.N;
    j["k"] = r.k;
    j["d"] = r.d;
    j["quantity"] = r.quantity;
    j["value"] = r.value;
    j["exact"] = r.exact ? nlohmann::ordered_json(*r.exact) : nlohmann::ordered_json(nullptr);
    j["method"] = r.method;
    os << j.dump() << '\n';
  }
}

}  // namespace portcap
