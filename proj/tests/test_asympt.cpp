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
#include <numbers>

#include "oracles/brute_force.hpp"
#include "portcap/asympt.hpp"
#include "portcap/verify.hpp"

namespace portcap {
namespace {

TEST(Normal, Values) {
  EXPECT_EQ(normal_tail(0.0), 0.5);
  EXPECT_NEAR(normal_pdf(0.0), 1 / std::sqrt(2 * std::numbers::pi), 1e-16);
  EXPECT_NEAR(normal_tail(1.0), 0.158655253931457, 1e-14);
  // Deep tail keeps relative accuracy.
  EXPECT_NEAR(normal_tail(8.0), 6.22096057427178e-16, 1e-14 * 6.22e-16);
}

TEST(GaussianLimit, Values) {
  EXPECT_EQ(gaussian_limit(0.0), 1.0);
  EXPECT_NEAR(gaussian_limit(1.0), 0.150679566687541506, 1e-15);
  EXPECT_NEAR(gaussian_limit(0.5), 0.419278520050667763, 1e-15);
  EXPECT_THROW(gaussian_limit(-0.1), PreconditionError);
  double previous = 1.0;
  for (int s = 1; s <= 40; ++s) {
    const double g = gaussian_limit(0.1 * s);
    ASSERT_LT(g, previous);
    ASSERT_GT(g, 0.0);
    previous = g;
  }
}

TEST(GaussianLimit, MatchesQuadrature) {
  for (int s = 0; s <= 12; ++s) {
    const double a = 0.25 * s;
    EXPECT_NEAR(gaussian_limit(a), testing::simpson_gaussian_limit(a), 1e-10) << a;
    EXPECT_NEAR(gaussian_limit(a), gaussian_limit_quadrature(a), 1e-10) << a;
  }
}

TEST(ScalingK, ParityAndRounding) {
  EXPECT_EQ(sqrt_scaling_k(100, 0.5), 4);  // 5 is odd; tie resolves low
  EXPECT_EQ(sqrt_scaling_k(100, 1.0), 10);
  EXPECT_EQ(sqrt_scaling_k(101, 1.0), 11);
  EXPECT_EQ(sqrt_scaling_k(4, 0.1), 2);
  EXPECT_EQ(sqrt_scaling_k(3, 0.1), 1);
  for (int N = 1; N <= 500; ++N) {
    const int k = sqrt_scaling_k(N, 0.7);
    ASSERT_EQ(k % 2, N % 2);
    ASSERT_LE(k, N);
  }
}

TEST(Sandwich, TermsAsPrinted) {
  const GaussBoundTerms t = gauss_bound_terms(100, 0.5, BerryEsseenTail::kConservative);
  const double r = 1 / std::sqrt(2 * std::numbers::pi);
  EXPECT_NEAR(t.M, 2 / (std::numbers::e * std::sqrt(101.0)) * r, 1e-16);
  EXPECT_NEAR(t.I1B, std::pow(101.0, -1.5) * r, 1e-18);
  EXPECT_NEAR(t.I2B, (std::sqrt(101.0) * r + 1) * std::exp(-0.5 * std::pow(std::sqrt(101.0) - 1, 2)), 1e-30);
  EXPECT_NEAR(t.deltaB, 4 * std::pow(100.0, -0.25) +
                            11 * std::sqrt(101.0) * std::exp(-std::pow(std::pow(100.0, 0.625) - 1, 2) / 101),
              1e-15);
  const GaussBoundTerms u = gauss_bound_terms(100, 0.5, BerryEsseenTail::kDerivation);
  EXPECT_NEAR(u.deltaB - t.deltaB, 4 * std::pow(100.0, -1.5) - 4 * std::pow(100.0, -0.25), 1e-15);
  EXPECT_NEAR(t.integral, 0.5 * gaussian_limit(0.5 * std::sqrt(100.0 / 101)), 1e-16);
}

TEST(Sandwich, ContainsExactValue) {
  for (double a : {0.5, 1.0}) {
    for (int N : {100, 400, 1600, 6400}) {
      for (auto tail : {BerryEsseenTail::kDerivation, BerryEsseenTail::kConservative}) {
        const SandwichResult s = psucc_sandwich(N, a, tail);
        const double p = N <= 200 ? to_double(psucc_qubit(N, s.k)) : psucc_largeN(N, s.k);
        ASSERT_LE(s.lower, p) << N << " " << a;
        ASSERT_LE(p, s.upper) << N << " " << a;
        ASSERT_LE(s.lower, s.upper);
        ASSERT_GE(s.lower, 0.0);
        ASSERT_LE(s.upper, 1.0);
      }
    }
  }
}

TEST(Sandwich, WidthShrinks) {
  double previous = 2.0;
  for (int N = 100; N <= 1638400; N *= 4) {
    const SandwichResult s = psucc_sandwich(N, 1.0);
    const double width = s.upper - s.lower;
    ASSERT_LT(width, previous) << N;
    previous = width;
  }
}

TEST(Sandwich, ApproachesLimitAtOneMillion) {
  for (double a : {0.5, 1.0}) {
    const SandwichResult s = psucc_sandwich(1000000, a);
    EXPECT_NEAR(s.lower, gaussian_limit(a), 0.02);
    EXPECT_NEAR(s.upper, gaussian_limit(a), 0.02);
  }
}

TEST(Sandwich, RejectsOutOfRangeA) {
  EXPECT_THROW(psucc_sandwich(100, 0.0), PreconditionError);
  EXPECT_THROW(psucc_sandwich(100, 2.0), PreconditionError);
}

TEST(PsuccLargeN, MatchesExactPath) {
  EXPECT_NEAR(psucc_largeN(60, 7), to_double(psucc_qubit(60, 7)), 1e-10 * to_double(psucc_qubit(60, 7)));
  for (int N = 1; N <= 60; ++N) {
    for (int k = 1; k <= N; ++k) {
      const double exact = to_double(psucc_qubit(N, k));
      ASSERT_NEAR(psucc_largeN(N, k), exact, 1e-10 * exact) << N << " " << k;
    }
  }
  EXPECT_NEAR(psucc_largeN(9, 9), 1.0 / (512 * 10), 1e-18);
}

TEST(PsuccLargeN, InsideSandwichAtOneMillion) {
  const SandwichResult s = psucc_sandwich(1000000, 1.0);
  const double p = psucc_largeN(1000000, 1000);
  EXPECT_LE(s.lower, p);
  EXPECT_LE(p, s.upper);
}

TEST(PsuccLargeN, DecreasingInK) {
  for (int N : {50, 300, 5000}) {
    double previous = 2.0;
    for (int k = 1; k <= std::min(N, 200); ++k) {
      const double p = psucc_largeN(N, k);
      ASSERT_LT(p, previous) << N << " " << k;
      previous = p;
    }
  }
}

TEST(PsuccLargeN, SmallKTendsToOne) {
  EXPECT_GT(psucc_largeN(1000000, 2), 0.99);
  EXPECT_NEAR(psucc_largeN(1000000, 10), gaussian_limit(0.01), 1e-3);
}

}  // namespace
}  // namespace portcap
