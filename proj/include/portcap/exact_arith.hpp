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

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace portcap {

/// Arbitrary-precision signed integer.
using ExactInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational; always stored reduced with a positive
/// denominator.
using ExactScalar = boost::multiprecision::cpp_rational;

/// 50 significant decimal digits, used where irrational values (square roots)
/// must be accumulated before a final rounding to double.
using WideFloat = boost::multiprecision::cpp_bin_float_50;

/// Thrown when an operation is called outside its domain. The message names
/// the violated constraint.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& message)
      : std::invalid_argument(message) {}
};

/// A double together with a bound on its relative error.
struct RealApprox {
  double value = 0.0;
  double rel_err_bound = 0.0;
};

/// Which arithmetic carries a formula: exact rationals or log-space doubles.
enum class ArithPath { kExact, kLog };

/// Largest N evaluated on the exact path unless overridden.
inline constexpr int kExactCutover = 200;

inline ArithPath default_arith_path(long n) {
  return n <= kExactCutover ? ArithPath::kExact : ArithPath::kLog;
}

inline constexpr double kUnitRoundoff = 0x1p-53;

inline ExactInt ipow(const ExactInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline ExactScalar make_scalar(const ExactInt& num, const ExactInt& den) {
  return ExactScalar(num, den);
}

/// C(n, k); zero outside 0 <= k <= n.
inline ExactInt binomial(long n, long k) {
  if (n < 0) throw PreconditionError("binomial: n must be >= 0");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  ExactInt result = 1;
  for (long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: result is C(n-k+i, i) here
  }
  return result;
}

/// n (n-1) ... (n-k+1).
inline ExactInt falling_factorial(long n, long k) {
  if (k < 0 || n < 0) throw PreconditionError("falling_factorial: n, k must be >= 0");
  if (k > n) throw PreconditionError("falling_factorial: k must be <= n");
  ExactInt result = 1;
  for (long i = 0; i < k; ++i) result *= n - i;
  return result;
}

inline ExactInt factorial(long n) { return falling_factorial(n, n); }

/// ln C(n, k) in double precision.
///
/// Small k (after the k <-> n-k symmetry) is summed term by term in long
/// double; otherwise three lgammal calls are differenced. The returned bound
/// is an a-priori estimate of the relative error of `value`.
inline RealApprox ln_binomial(long n, long k) {
  if (n < 0) throw PreconditionError("ln_binomial: n must be >= 0");
  if (k < 0 || k > n) throw PreconditionError("ln_binomial: requires 0 <= k <= n");
  if (k > n - k) k = n - k;
  if (k == 0) return {0.0, 0.0};
  constexpr long double eps_ld = std::numeric_limits<long double>::epsilon();
  long double acc = 0.0L;
  long double abs_err = 0.0L;
  if (k <= 64) {
    for (long i = 1; i <= k; ++i) {
      long double term = std::log(static_cast<long double>(n - k + i) / i);
      acc += term;
      abs_err += 4 * eps_ld * (std::fabs(term) + std::fabs(acc));
    }
  } else {
    long double a = std::lgamma(static_cast<long double>(n) + 1);
    long double b = std::lgamma(static_cast<long double>(k) + 1);
    long double c = std::lgamma(static_cast<long double>(n - k) + 1);
    acc = a - b - c;
    abs_err = 8 * eps_ld * (std::fabs(a) + std::fabs(b) + std::fabs(c));
  }
  double value = static_cast<double>(acc);
  double rel = static_cast<double>(abs_err / std::fabs(acc)) + kUnitRoundoff;
  return {value, rel};
}

/// Floor of the square root; nullopt-free helper for exact_sqrt.
inline ExactInt isqrt(const ExactInt& x) { return boost::multiprecision::sqrt(x); }

/// The integer square root of x when x is a perfect square.
inline std::optional<ExactInt> exact_sqrt(const ExactInt& x) {
  if (x < 0) return std::nullopt;
  ExactInt r = isqrt(x);
  if (r * r == x) return r;
  return std::nullopt;
}

namespace detail {

// Correctly rounded (nearest-even) num/den for positive num, den.
inline double positive_ratio_to_double(const ExactInt& num, const ExactInt& den) {
  const long nb = static_cast<long>(boost::multiprecision::msb(num));
  const long db = static_cast<long>(boost::multiprecision::msb(den));
  // Choose a shift so the integer quotient carries 55 or 56 bits.
  long shift = 55 - (nb - db);
  ExactInt scaled_num = num;
  ExactInt scaled_den = den;
  if (shift >= 0) {
    scaled_num <<= static_cast<unsigned>(shift);
  } else {
    scaled_den <<= static_cast<unsigned>(-shift);
  }
  ExactInt q, r;
  boost::multiprecision::divide_qr(scaled_num, scaled_den, q, r);
  bool sticky = r != 0;
  long qbits = static_cast<long>(boost::multiprecision::msb(q)) + 1;
  // Reduce to exactly 55 bits: 53 mantissa + guard + round.
  while (qbits > 55) {
    if ((q & 1) != 0) sticky = true;
    q >>= 1;
    --shift;
    --qbits;
  }
  std::uint64_t bits = q.convert_to<std::uint64_t>();
  std::uint64_t mantissa = bits >> 2;
  bool guard = (bits & 2) != 0;
  bool round_bit = (bits & 1) != 0 || sticky;
  if (guard && (round_bit || (mantissa & 1))) ++mantissa;
  int exponent = static_cast<int>(-shift + 2);
  if (mantissa == (std::uint64_t{1} << 53)) {
    mantissa >>= 1;
    ++exponent;
  }
  return std::ldexp(static_cast<double>(mantissa), exponent);
}

}  // namespace detail

/// Correctly rounded double for an exact rational.
inline RealApprox to_real(const ExactScalar& x) {
  const ExactInt num = boost::multiprecision::numerator(x);
  const ExactInt den = boost::multiprecision::denominator(x);
  if (num == 0) return {0.0, 0.0};
  double v = detail::positive_ratio_to_double(num < 0 ? ExactInt(-num) : num, den);
  return {num < 0 ? -v : v, kUnitRoundoff};
}

inline double to_double(const ExactScalar& x) { return to_real(x).value; }

/// Renders a rational as "p/q", or "p" when the denominator is one.
inline std::string to_fraction_string(const ExactScalar& x) {
  const ExactInt den = boost::multiprecision::denominator(x);
  std::string s = boost::multiprecision::numerator(x).str();
  if (den != 1) s += "/" + den.str();
  return s;
}

}  // namespace portcap
