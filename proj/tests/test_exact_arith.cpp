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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles/brute_force.hpp"
#include "portcap/exact_arith.hpp"

namespace portcap {
namespace {

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(3, -1), 0);
  EXPECT_EQ(binomial(7, 2), 21);
  EXPECT_EQ(binomial(0, 0), 1);
}

TEST(Binomial, RejectsNegativeN) { EXPECT_THROW(binomial(-1, 0), PreconditionError); }

TEST(Binomial, MatchesPascalAndIsSymmetric) {
  for (int n = 0; n <= 90; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto expect = testing::pascal(n, k);
      const ExactInt got = binomial(n, k);
      ASSERT_EQ(got, ExactInt(static_cast<unsigned long long>(expect >> 64)) * (ExactInt(1) << 64) +
                         ExactInt(static_cast<unsigned long long>(expect)))
          << n << " " << k;
      ASSERT_EQ(got, binomial(n, n - k));
    }
  }
}

TEST(FallingFactorial, Values) {
  EXPECT_EQ(falling_factorial(4, 2), 12);
  EXPECT_EQ(falling_factorial(9, 0), 1);
  EXPECT_EQ(falling_factorial(2, 2), 2);
  EXPECT_EQ(factorial(10), 3628800);
  EXPECT_THROW(falling_factorial(2, 3), PreconditionError);
}

TEST(LnBinomial, Values) {
  EXPECT_NEAR(ln_binomial(5, 2).value, std::log(10.0), 1e-13 * std::log(10.0));
  EXPECT_EQ(ln_binomial(17, 0).value, 0.0);
  EXPECT_EQ(ln_binomial(17, 17).value, 0.0);
  EXPECT_THROW(ln_binomial(5, 6), PreconditionError);
  EXPECT_THROW(ln_binomial(5, -1), PreconditionError);
}

TEST(LnBinomial, AgreesWithExactUpToSixty) {
  for (int n = 1; n <= 60; ++n) {
    for (int k = 0; k <= n; ++k) {
      const RealApprox r = ln_binomial(n, k);
      ASSERT_LE(r.rel_err_bound, 1e-13);
      const double exact = to_double(ExactScalar(binomial(n, k)));
      ASSERT_NEAR(std::exp(r.value), exact, 1e-12 * exact) << n << " " << k;
    }
  }
}

TEST(LnBinomial, LargeArgumentsStayFiniteAndAccurate) {
  const RealApprox r = ln_binomial(1000000, 1000);
  EXPECT_TRUE(std::isfinite(r.value));
  EXPECT_LE(r.rel_err_bound, 1e-13);
  // Stirling-free cross-check: sum of log ratios in long double.
  long double acc = 0.0L;
  for (int i = 1; i <= 1000; ++i) acc += std::log((1000000.0L - 1000 + i) / i);
  EXPECT_NEAR(r.value, static_cast<double>(acc), 1e-13 * r.value);
  // The lgamma branch on moderate n against the exact integer.
  const double exact_ln = std::log(to_double(ExactScalar(binomial(200, 100))));
  EXPECT_NEAR(ln_binomial(200, 100).value, exact_ln, 1e-13 * exact_ln);
}

TEST(ToReal, CorrectlyRounded) {
  EXPECT_EQ(to_real(ExactScalar(5, 16)).value, 0.3125);
  EXPECT_EQ(to_real(ExactScalar(13, 32)).value, 0.40625);
  EXPECT_EQ(to_real(ExactScalar(1, 3)).value, 1.0 / 3.0);
  EXPECT_EQ(to_real(ExactScalar(-2, 3)).value, -2.0 / 3.0);
  EXPECT_EQ(to_real(ExactScalar(0)).value, 0.0);
  EXPECT_LE(to_real(ExactScalar(1, 3)).rel_err_bound, 0x1p-52);
  // Quotients of doubles representable exactly must round to the IEEE quotient.
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> dist(1, (1LL << 53) - 1);
  for (int t = 0; t < 2000; ++t) {
    const long long a = dist(rng);
    const long long b = dist(rng);
    ASSERT_EQ(to_double(ExactScalar(a, b)), static_cast<double>(a) / static_cast<double>(b));
  }
}

TEST(ToReal, HugeAndTinyValues) {
  const ExactScalar big(ipow(ExactInt(10), 300) + 1, 7);
  EXPECT_NEAR(to_double(big), 1e300 / 7, 1e285);
  const ExactScalar tiny(ExactInt(3), ipow(ExactInt(10), 300));
  EXPECT_NEAR(to_double(tiny), 3e-300, 1e-315);
}

TEST(ExactScalar, FieldIdentitiesHoldExactly) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-1000, 1000);
  std::uniform_int_distribution<int> den(1, 1000);
  for (int t = 0; t < 500; ++t) {
    const ExactScalar a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_GT(boost::multiprecision::denominator(a), 0);
  }
}

TEST(Fraction, Rendering) {
  EXPECT_EQ(to_fraction_string(ExactScalar(15, 26)), "15/26");
  EXPECT_EQ(to_fraction_string(ExactScalar(4, 2)), "2");
  EXPECT_EQ(to_fraction_string(ExactScalar(-1, 12)), "-1/12");
}

TEST(ArithPath, Cutover) {
  EXPECT_EQ(default_arith_path(200), ArithPath::kExact);
  EXPECT_EQ(default_arith_path(201), ArithPath::kLog);
}

TEST(ExactSqrt, PerfectSquaresOnly) {
  EXPECT_EQ(*exact_sqrt(ExactInt(144)), 12);
  EXPECT_FALSE(exact_sqrt(ExactInt(145)).has_value());
  EXPECT_EQ(*exact_sqrt(ipow(ExactInt(3), 80)), ipow(ExactInt(3), 40));
}

}  // namespace
}  // namespace portcap
