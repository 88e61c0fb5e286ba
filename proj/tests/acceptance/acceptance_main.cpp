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

// Acceptance gate. Prints one PASS/FAIL line per criterion, followed by
// indented detail lines. With no arguments every criterion runs; otherwise
// only the listed criterion numbers.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/brute_force.hpp"
#include "portcap/asympt.hpp"
#include "portcap/baselines.hpp"
#include "portcap/bounds.hpp"
#include "portcap/exact_perf.hpp"
#include "portcap/oracle.hpp"
#include "portcap/report.hpp"
#include "portcap/verify.hpp"

namespace {

using namespace portcap;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("violation: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(double x) { return format_decimal(x); }

// 1. Trace formulas.
Outcome c01() {
  Outcome o;
  for (int d : {2, 3, 5}) {
    const ExactInt D(d);
    for (int n = 3; n <= 12; ++n) {
      if (1 <= (n - 1) / 2) {
        o.check(trace_rho_squared(n, 1, d) == ipow(D, n - 2) * (n - 1) * (D * D + n - 2),
                "worked example k=1 n=" + std::to_string(n) + " d=" + std::to_string(d));
      }
      if (n >= 6) {
        o.check(trace_rho_squared(n, 2, d) ==
                    ipow(D, n - 4) * (n - 2) * (n - 3) * (D * D + n - 3) * (D * D + n - 4),
                "worked example k=2 n=" + std::to_string(n) + " d=" + std::to_string(d));
      }
    }
  }
  int cases = 0;
  for (int d : {2, 3}) {
    for (int n = 3; n <= 7; ++n) {
      for (int k = 1; k <= 2 && k <= (n - k) / 2; ++k) {
        const ProtocolParams p{n - k, k, d};
        const ExactInt formula = trace_rho_squared(n, k, d);
        const double f = to_double(ExactScalar(formula));
        // Pair sum over explicit signal matrices.
        const double matrix = matrix_trace_rho_squared(p);
        o.check(std::fabs(matrix - f) <= 1e-9 * f, "matrix pair sum at " + p.str());
        // Pair sum over the transposition-sequence coincidence counts.
        o.check(trace_rho_squared_by_pairs(n, k, d) == formula, "coincidence pair sum at " + p.str());
        ++cases;
      }
    }
  }
  o.note(std::to_string(cases) + " (n,k,d) instances summed pair by pair");
  return o;
}

const std::vector<ProtocolParams> kPurityGrid = {{2, 1, 2}, {3, 1, 2}, {4, 1, 2}, {4, 2, 2},
                                                {5, 2, 2}, {2, 1, 3}, {3, 1, 3}};

// 2. Normalized purity against the dense matrix.
Outcome c02() {
  Outcome o;
  double worst = 0.0;
  for (const auto& p : kPurityGrid) {
    const double m = matrix_trace_rho_bar_squared(p);
    const double f = to_double(trace_rho_bar_squared(p));
    worst = std::max(worst, std::fabs(m - f));
    o.check(std::fabs(m - f) <= 1e-10, p.str() + " matrix " + fmt(m) + " formula " + fmt(f));
  }
  o.note("max |matrix - formula| = " + fmt(worst));
  return o;
}

// 3. Bound chain.
Outcome c03() {
  Outcome o;
  std::vector<ProtocolParams> grid = kPurityGrid;
  for (int N = 2; N <= 12; ++N) {
    for (int k = 1; k <= N / 2; ++k) grid.push_back({N, k, 2});
  }
  int violations = 0;
  for (const auto& p : grid) {
    const ExactScalar bern = fidelity_bound_bernoulli(p);
    const ExactScalar prod = fidelity_bound_product(p);
    const ExactScalar ratio = fidelity_bound_ratio(p);
    const EvalResult fid = fidelity_exact(p);
    bool ok = bern <= prod && prod <= ratio;
    if (fid.exact) {
      ok = ok && ratio <= *fid.exact;
    } else {
      ok = ok && to_double(ratio) <= fid.value() * (1 - fid.approx.rel_err_bound);
    }
    if (!ok) ++violations;
    o.check(ok, "chain at " + p.str());
  }
  o.note(std::to_string(grid.size()) + " grid points, " + std::to_string(violations) + " violations");
  return o;
}

// 4. Qubit forms against the general-d forms.
Outcome c04() {
  Outcome o;
  double worst = 0.0;
  for (int N = 1; N <= 12; ++N) {
    for (int k = 1; k <= N / 2; ++k) {
      const ProtocolParams p{N, k, 2};
      const double general = fidelity_exact(p).value();
      const double qubit = fidelity_qubit(N, k).value;
      const double rel = std::fabs(general - qubit) / general;
      worst = std::max(worst, rel);
      o.check(rel <= 1e-12, "fidelity at " + p.str());
      o.check(psucc_qubit(N, k) == psucc_exact(p), "psucc at " + p.str());
    }
  }
  o.note("max relative fidelity gap = " + fmt(worst));
  return o;
}

// 5. Oracle fidelity and the discrimination identity.
Outcome c05() {
  Outcome o;
  for (const ProtocolParams& p : {ProtocolParams{4, 2, 2}, ProtocolParams{3, 1, 2}}) {
    const double srm = srm_fidelity(p);
    const double closed = fidelity_qubit(p.N, p.k).value;
    o.check(std::fabs(srm - closed) <= 1e-9, p.str() + " srm " + fmt(srm) + " closed " + fmt(closed));
    const double pdist = srm_pdist(p);
    const double via = to_double(fidelity_from_pdist(p, ExactScalar(1))) * pdist;
    o.check(std::fabs(srm - via) <= 1e-10, p.str() + " F vs k!C(N,k)/d^2k p_dist");
    o.note(p.str() + " srm F = " + fmt(srm) + ", p_dist = " + fmt(pdist));
  }
  return o;
}

// 6. The pair whose trace is 1/d^4 rather than 1/d^6.
Outcome c06() {
  Outcome o;
  const PortTuple a({4, 3}, 4);
  const PortTuple b({3, 4}, 4);
  for (int d = 2; d <= 4; ++d) {
    const ExactScalar t = pairwise_signal_trace(a, b, 6, 2, d);
    o.check(t == ExactScalar(ExactInt(1), ipow(ExactInt(d), 4)), "d=" + std::to_string(d) + " gives " +
                                                                     to_fraction_string(t));
    o.check(t != ExactScalar(ExactInt(1), ipow(ExactInt(d), 6)), "d=" + std::to_string(d) + " gives 1/d^6");
  }
  const double m = matrix_pairwise_trace(a, b, {4, 2, 2});
  o.check(std::fabs(m - 1.0 / 16) <= 1e-12, "matrix gives " + fmt(m));
  o.note("d=2 matrix trace = " + fmt(m));
  return o;
}

// 7. Known-value anchors.
Outcome c07() {
  Outcome o;
  for (int d = 2; d <= 5; ++d) {
    for (int N = 2; N <= 40; ++N) {
      o.check(fidelity_bound_ratio({N, 1, d}) == 1 - ExactScalar(d * d - 1, d * d + N - 1),
              "ratio bound k=1 N=" + std::to_string(N));
    }
  }
  o.check(opbt_fidelity(2).value == 0.5 || std::fabs(opbt_fidelity(2).value - 0.5) <= 1e-15,
          "opbt_fidelity(2)");
  for (int d = 2; d <= 4; ++d) {
    o.check(psucc_exact({1, 1, d}) == ExactScalar(ExactInt(1), ExactInt(d * d)),
            "psucc_exact(1,1," + std::to_string(d) + ")");
  }
  o.check(ompbt_psucc({10, 2, 2}) == ExactScalar(15, 26), "ompbt_psucc(10,2,2)");
  return o;
}

// 8. Table limits at N = 10^5.
Outcome c08() {
  Outcome o;
  constexpr int N = 100000;
  struct Row {
    SchemeId scheme;
    Figure figure;
    double a;
  };
  // a = 1 throughout except where the critical formula needs a < 1.
  const std::vector<Row> rows = {
      {SchemeId::kPackPBT, Figure::kFidelity, 1.0},  {SchemeId::kPackOPBT, Figure::kFidelity, 1.0},
      {SchemeId::kMPBTBound, Figure::kFidelity, 0.5}, {SchemeId::kPackPBT, Figure::kPsucc, 1.0},
      {SchemeId::kPackOPBT, Figure::kPsucc, 1.0},    {SchemeId::kMPBTExact, Figure::kPsucc, 1.0},
      {SchemeId::kOMPBT, Figure::kPsucc, 0.5}};
  for (const Row& r : rows) {
    const double alpha_cr = critical_alpha(r.scheme, r.figure);
    for (double shift : {-0.15, 0.0, 0.15}) {
      const ScalingSpec spec{r.a, alpha_cr + shift};
      const std::string label = to_string(r.scheme) + "/" + to_string(r.figure) + " a=" + fmt(r.a) +
                                " alpha=" + fmt(spec.alpha);
      if (spec.alpha > 1.0) {
        o.note(label + ": n/a (alpha > 1 puts k above N)");
        continue;
      }
      const LimitClass lim = critical_limit(r.scheme, spec, r.figure);
      const int k = spec.k_at(N);
      const double value = scheme_value(r.scheme, r.figure, N, k, PackagingMode::kContinuous);
      const double tol = shift == 0.0 ? 0.05 : 0.02;
      const double gap = std::fabs(value - lim.value);
      o.note(label + ": k=" + std::to_string(k) + " value " + fmt(value) + " limit(" + lim.str() + ") " +
             fmt(lim.value) + " gap " + fmt(gap) + (gap <= tol ? " ok" : " OUT OF TOLERANCE"));
      o.check(gap <= tol, label);
    }
  }
  return o;
}

// 9. Gaussian limit against quadrature.
Outcome c09() {
  Outcome o;
  double worst = 0.0;
  for (int s = 0; s <= 12; ++s) {
    const double a = 0.25 * s;
    const double g = gaussian_limit(a);
    const double simpson = testing::simpson_gaussian_limit(a);
    const double des = gaussian_limit_quadrature(a);
    worst = std::max({worst, std::fabs(g - simpson), std::fabs(g - des)});
    o.check(std::fabs(g - simpson) <= 1e-10 && std::fabs(g - des) <= 1e-10, "a=" + fmt(a));
  }
  o.check(gaussian_limit(0.0) == 1.0, "gaussian_limit(0) is not exactly 1");
  o.note("max |closed form - quadrature| = " + fmt(worst));
  return o;
}

// 10. Finite-N sandwich.
Outcome c10() {
  Outcome o;
  const std::array<int, 5> Ns = {100, 400, 1600, 6400, 25600};
  for (double a : {0.5, 1.0}) {
    double previous_width = 2.0;
    for (int N : Ns) {
      const SandwichResult s = psucc_sandwich(N, a);
      const double p = psucc_largeN(N, s.k);
      const double width = s.upper - s.lower;
      o.check(s.lower <= p && p <= s.upper, "containment a=" + fmt(a) + " N=" + std::to_string(N));
      o.check(width < previous_width, "width not decreasing at a=" + fmt(a) + " N=" + std::to_string(N));
      previous_width = width;
      if (N == Ns.back()) {
        o.check(width < 0.15, "width at N=25600, a=" + fmt(a) + " is " + fmt(width));
        o.note("a=" + fmt(a) + " N=25600: [" + fmt(s.lower) + ", " + fmt(s.upper) + "] contains " + fmt(p) +
               ", width " + fmt(width));
        const SandwichResult c = psucc_sandwich(N, a, BerryEsseenTail::kConservative);
        o.note("  (informational) with the 4N^{-1/4} remainder: lower " + fmt(c.lower) + ", width " +
               fmt(c.upper - c.lower));
      }
    }
  }
  return o;
}

// 11. Packaged comparison claims.
Outcome c11() {
  Outcome o;
  for (int k = 4; k <= 10; ++k) {
    for (int N = 2 * k; N <= 200; ++N) {
      const double ratio = to_double(fidelity_bound_ratio({N, k, 2}));
      o.check(ratio > packaged_fidelity_approx(N, k).product,
              "ratio bound not above (1-3k/4N)^k at N=" + std::to_string(N) + " k=" + std::to_string(k));
    }
  }
  for (int k : {4, 6, 8}) {
    int crossing = 0;
    for (int N = 2 * k; N <= 400; ++N) {
      const double bound = to_double(fidelity_bound_ratio({N, k, 2}));
      const double pack = packaged_fidelity(N, k, PbtBase::kOpbt, PackagingMode::kContinuous).value;
      if (pack > bound) {
        crossing = N;
        break;
      }
    }
    o.check(crossing > 0, "no crossing for k=" + std::to_string(k));
    o.note("k=" + std::to_string(k) + ": packaged OPBT first exceeds the bound at N=" + std::to_string(crossing));
  }
  return o;
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  if (status != 0) out += "<exit " + std::to_string(status) + ">";
  return out;
}

// 12. Determinism of the grid commands.
Outcome c12() {
  Outcome o;
  const std::string cli = PORTCAP_CLI_PATH;
  const std::vector<std::string> commands = {
      "compare --k-list 4,6,8 --N-range 8:200:1",
      "asympt --scheme PackPBT --a 1 --alpha 0.5 --figure fidelity --N-list 100,1000,10000,100000",
      "asympt --scheme MPBT_Exact --a 1 --alpha 0.5 --figure psucc --N-list 100,1000,10000,100000"};
  for (const auto& cmd : commands) {
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "8", "1", "8"}) {
      outputs.push_back(capture("PORTCAP_THREADS=" + std::string(threads) + " '" + cli + "' " + cmd));
    }
    bool same = true;
    for (const auto& s : outputs) same = same && s == outputs.front();
    o.check(same, "output differs for: " + cmd);
    o.check(outputs.front().find("<exit") == std::string::npos, "command failed: " + cmd);
    o.note(cmd + ": " + std::to_string(outputs.front().size()) + " bytes, identical across 4 runs");
  }
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "trace formulas (worked examples, pair sums)", c01},
      {2, "normalized purity against dense matrices", c02},
      {3, "fidelity bound chain", c03},
      {4, "qubit closed forms equal the general-d forms", c04},
      {5, "square-root-measurement fidelity and discrimination identity", c05},
      {6, "pairwise trace counter-example is 1/d^4", c06},
      {7, "known-value anchors", c07},
      {8, "asymptotic limits at N = 1e5", c08},
      {9, "Gaussian limit against quadrature", c09},
      {10, "finite-N sandwich of the success probability", c10},
      {11, "packaged comparison claims", c11},
      {12, "determinism of grid commands", c12},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  bool all_pass = true;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("C%02d %s  %s (%.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    all_pass = all_pass && o.pass;
  }
  std::fflush(stdout);
  return all_pass ? 0 : 1;
}
