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

// The portcap command-line surface. run_cli is the whole program; the
// executable only forwards argv and the standard streams.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or precondition
// error.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "portcap/asympt.hpp"
#include "portcap/baselines.hpp"
#include "portcap/bounds.hpp"
#include "portcap/exact_perf.hpp"
#include "portcap/oracle.hpp"
#include "portcap/report.hpp"
#include "portcap/verify.hpp"

namespace portcap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// "lo:hi:step", inclusive, step > 0.
inline std::vector<int> parse_range(const std::string& text) {
  std::vector<long> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw PreconditionError("--N-range: '" + text + "' is not of the form lo:hi:step");
    }
  }
  if (parts.size() == 2) parts.push_back(1);
  if (parts.size() != 3) throw PreconditionError("--N-range: expected lo:hi:step");
  if (parts[2] <= 0) throw PreconditionError("--N-range: step must be > 0");
  if (parts[0] > parts[1]) throw PreconditionError("--N-range: empty range (lo > hi)");
  std::vector<int> out;
  for (long n = parts[0]; n <= parts[1]; n += parts[2]) out.push_back(static_cast<int>(n));
  return out;
}

/// Comma-separated integers.
inline std::vector<int> parse_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw PreconditionError(std::string(flag) + ": '" + item + "' is not an integer");
    }
  }
  if (out.empty()) throw PreconditionError(std::string(flag) + ": list is empty");
  return out;
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

inline SchemeId parse_scheme(const std::string& name) {
  static const std::map<std::string, SchemeId> names = {
      {"packpbt", SchemeId::kPackPBT},       {"packopbt", SchemeId::kPackOPBT},
      {"mpbt_bound", SchemeId::kMPBTBound},  {"mpbt_exact", SchemeId::kMPBTExact},
      {"mpbt", SchemeId::kMPBTExact},        {"ompbt", SchemeId::kOMPBT}};
  auto it = names.find(lower(name));
  if (it == names.end()) throw PreconditionError("unknown scheme '" + name + "'");
  return it->second;
}

inline Figure parse_figure(const std::string& name) {
  const std::string n = lower(name);
  if (n == "fidelity") return Figure::kFidelity;
  if (n == "psucc") return Figure::kPsucc;
  throw PreconditionError("unknown figure '" + name + "' (expected fidelity or psucc)");
}

struct CommonOptions {
  std::string format = "csv";
  std::string arith;  // empty: size-based default
  bool strict_packaging = false;

  OutputFormat output_format() const {
    return format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  }
  ArithPath path_for(long n) const {
    if (arith == "exact") return ArithPath::kExact;
    if (arith == "log") return ArithPath::kLog;
    return default_arith_path(n);
  }
};

// Emits a table either as CSV (header + rows) or as one JSON object per row
// keyed by the header; empty cells become null.
inline void write_table(std::ostream& os, const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    os << csv_line(header) << '\n';
    for (const auto& row : rows) os << csv_line(row) << '\n';
    return;
  }
  for (const auto& row : rows) {
    nlohmann::ordered_json j;
    for (std::size_t c = 0; c < header.size(); ++c) {
      j[header[c]] = row[c].empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(row[c]);
    }
    os << j.dump() << '\n';
  }
}

inline std::vector<int> n_values(const std::string& range, const std::string& list) {
  if (!range.empty() && !list.empty()) {
    throw PreconditionError("give either --N-range or --N-list, not both");
  }
  if (!range.empty()) return parse_range(range);
  if (!list.empty()) return parse_list(list, "--N-list");
  throw PreconditionError("one of --N-range or --N-list is required");
}

inline int cmd_fidelity(std::ostream& out, const ProtocolParams& p, const std::string& method,
                        const CommonOptions& opt) {
  EvalResult r;
  if (method == "exact") {
    r = fidelity_exact(p);
  } else if (method == "qubit") {
    if (p.d != 2) throw PreconditionError("fidelity --method qubit requires d = 2");
    r = approx_result(fidelity_qubit(p.N, p.k, opt.path_for(p.N)), "spin-form", opt.path_for(p.N));
  } else if (method == "bound-ratio") {
    r = exact_result(fidelity_bound_ratio(p), "bound-ratio");
  } else if (method == "bound-product") {
    r = exact_result(fidelity_bound_product(p), "bound-product");
  } else if (method == "bound-bernoulli") {
    r = exact_result(fidelity_bound_bernoulli(p), "bound-bernoulli");
  } else if (method == "oracle") {
    r = approx_result({srm_fidelity(p), 1e-10}, "oracle-srm", ArithPath::kLog);
  } else {
    throw PreconditionError("unknown method '" + method + "'");
  }
  write_records(out, {make_record("MPBT", p, "fidelity", r)}, opt.output_format());
  return kExitOk;
}

inline int cmd_psucc(std::ostream& out, const ProtocolParams& p, const std::string& scheme,
                     const CommonOptions& opt) {
  EvalResult r;
  std::string label;
  const std::string s = lower(scheme);
  if (s == "mpbt") {
    label = "MPBT";
    if (p.d == 2) {
      if (opt.path_for(p.N) == ArithPath::kExact) {
        r = exact_result(psucc_qubit(p.N, p.k), "spin-form");
      } else {
        r = approx_result({psucc_largeN(p.N, p.k), 1e-12}, "spin-form-log", ArithPath::kLog);
      }
    } else {
      r = exact_result(psucc_exact(p), "young-diagram");
    }
  } else if (s == "ompbt") {
    label = "OMPBT";
    r = exact_result(ompbt_psucc(p), "product-formula");
  } else if (s == "opbt") {
    label = "OPBT";
    r = psucc_baselines(p.N, PsuccBaseline::kOpbt);
  } else if (s == "pbt-approx") {
    label = "PBT";
    r = psucc_baselines(p.N, PsuccBaseline::kPbtApprox);
  } else {
    throw PreconditionError("unknown scheme '" + scheme + "'");
  }
  write_records(out, {make_record(label, p, "psucc", r)}, opt.output_format());
  return kExitOk;
}

/// Rows ordered by k (as listed), then N (as listed).
inline int cmd_compare(std::ostream& out, const std::vector<int>& ks, const std::vector<int>& Ns,
                       int d, const CommonOptions& opt) {
  if (ks.empty() || Ns.empty()) throw PreconditionError("compare: ranges must be nonempty");
  if (d < 2) throw PreconditionError("compare: d must be >= 2");
  struct Cell {
    int N, k;
  };
  std::vector<Cell> cells;
  for (int k : ks) {
    if (k < 1) throw PreconditionError("compare: k must be >= 1");
    for (int N : Ns) {
      if (N < 1) throw PreconditionError("compare: N must be >= 1");
      cells.push_back({N, k});
    }
  }
  auto rows = parallel_map(cells.size(), [&](std::size_t c) {
    const auto [N, k] = cells[c];
    const ProtocolParams p{N, k, d};
    std::string ratio, pack, exact;
    if (k <= N / 2) ratio = format_decimal(fidelity_bound_ratio(p));
    if (d == 2 && k <= N) {
      if (!opt.strict_packaging) {
        pack = format_decimal(packaged_fidelity(N, k, PbtBase::kOpbt, PackagingMode::kContinuous).value);
      } else if (N % k == 0) {
        pack = format_decimal(packaged_fidelity(N, k, PbtBase::kOpbt, PackagingMode::kStrict).value);
      }
      exact = format_decimal(fidelity_qubit(N, k, opt.path_for(N)).value);
    }
    return std::vector<std::string>{std::to_string(N), std::to_string(k), ratio, pack, exact};
  });
  write_table(out, {"N", "k", "bound_ratio", "pack_opbt", "exact_qubit"}, rows, opt.output_format());
  return kExitOk;
}

inline int cmd_asympt(std::ostream& out, SchemeId scheme, const ScalingSpec& spec,
                      const std::vector<int>& Ns, Figure figure, const CommonOptions& opt) {
  const LimitClass limit = critical_limit(scheme, spec, figure);
  const PackagingMode mode = opt.strict_packaging ? PackagingMode::kStrict : PackagingMode::kContinuous;
  for (int N : Ns) {
    if (N < 1) throw PreconditionError("asympt: N must be >= 1");
  }
  auto rows = parallel_map(Ns.size(), [&](std::size_t i) {
    const int N = Ns[i];
    const int k = spec.k_at(N);
    std::string value;
    if (k >= 1) {
      try {
        value = format_decimal(scheme_value(scheme, figure, N, k, mode));
      } catch (const PreconditionError&) {
        // Outside the scheme's domain at this N (e.g. k >= N, or k not dividing N).
      }
    }
    return std::vector<std::string>{std::to_string(N), std::to_string(k), value, limit.str(),
                                    format_decimal(limit.value)};
  });
  write_table(out, {"N", "k", "value", "limit_class", "limit_value"}, rows, opt.output_format());
  return kExitOk;
}

inline int cmd_gauss(std::ostream& out, double a, const std::vector<int>& Ns, BerryEsseenTail tail,
                     const CommonOptions& opt) {
  if (!(a > 0.0 && a < 2.0)) throw PreconditionError("gauss: a must lie in (0, 2)");
  for (int N : Ns) {
    if (N < 1) throw PreconditionError("gauss: N must be >= 1");
  }
  const double limit = gaussian_limit(a);
  auto rows = parallel_map(Ns.size(), [&](std::size_t i) {
    const int N = Ns[i];
    const SandwichResult s = psucc_sandwich(N, a, tail);
    const double value = opt.path_for(N) == ArithPath::kExact ? to_double(psucc_qubit(N, s.k))
                                                              : psucc_largeN(N, s.k);
    return std::vector<std::string>{std::to_string(N), format_decimal(s.lower), format_decimal(value),
                                    format_decimal(s.upper), format_decimal(limit)};
  });
  write_table(out, {"N", "lower", "exact_or_largeN", "upper", "limit"}, rows, opt.output_format());
  return kExitOk;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline int cmd_verify(std::ostream& out, long max_dim, const CommonOptions& opt) {
  const auto results = run_verification(max_dim);
  bool ok = true;
  if (opt.output_format() == OutputFormat::kCsv) out << "check,status,seconds,detail\n";
  for (const auto& r : results) {
    ok = ok && r.pass;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", r.seconds);
    if (opt.output_format() == OutputFormat::kCsv) {
      out << r.name << ',' << (r.pass ? "pass" : "FAIL") << ',' << secs << ',' << csv_quote(r.detail)
          << '\n';
    } else {
      nlohmann::ordered_json j;
      j["check"] = r.name;
      j["status"] = r.pass ? "pass" : "fail";
      j["seconds"] = std::stod(secs);
      j["detail"] = r.detail;
      out << j.dump() << '\n';
    }
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

/// Parses argv and runs one subcommand.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Performance, bounds and asymptotics of port-based teleportation"};
  app.require_subcommand(1);
  CommonOptions opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--arith", opt.arith, "Arithmetic path (default: exact for N <= 200)")
        ->check(CLI::IsMember({"exact", "log"}));
  };

  ProtocolParams p;
  std::string method = "exact";
  auto* fid = app.add_subcommand("fidelity", "Entanglement fidelity of multi-port teleportation");
  fid->add_option("--N", p.N, "Number of ports")->required();
  fid->add_option("--k", p.k, "Number of teleported systems");
  fid->add_option("--d", p.d, "Local dimension");
  fid->add_option("--method", method, "exact, qubit, bound-ratio, bound-product, bound-bernoulli, oracle");
  add_common(fid);

  std::string scheme = "mpbt";
  auto* ps = app.add_subcommand("psucc", "Success probability of probabilistic schemes");
  ps->add_option("--N", p.N, "Number of ports")->required();
  ps->add_option("--k", p.k, "Number of teleported systems");
  ps->add_option("--d", p.d, "Local dimension");
  ps->add_option("--scheme", scheme, "mpbt, ompbt, opbt, pbt-approx");
  add_common(ps);

  std::string k_list = "4,6,8";
  std::string n_range, n_list;
  std::string strict = "false";
  auto add_packaging = [&](CLI::App* sub) {
    sub->add_option("--strict-packaging", strict, "Require k | N for packaged schemes")
        ->check(CLI::IsMember({"true", "false"}));
  };
  auto* cmp = app.add_subcommand("compare", "First fidelity bound against packaged optimal PBT");
  cmp->add_option("--k-list", k_list, "Comma-separated k values");
  cmp->add_option("--N-range", n_range, "Inclusive lo:hi:step");
  cmp->add_option("--N-list", n_list, "Comma-separated N values");
  cmp->add_option("--d", p.d, "Local dimension");
  add_packaging(cmp);
  add_common(cmp);

  std::string scheme_name;
  std::string figure = "fidelity";
  ScalingSpec spec;
  auto* as = app.add_subcommand("asympt", "Finite-N values along k = floor(a N^alpha)");
  as->add_option("--scheme", scheme_name, "PackPBT, PackOPBT, MPBT_Bound, MPBT_Exact, OMPBT")->required();
  as->add_option("--a", spec.a, "Scaling prefactor");
  as->add_option("--alpha", spec.alpha, "Scaling exponent");
  as->add_option("--N-list", n_list, "Comma-separated N values");
  as->add_option("--N-range", n_range, "Inclusive lo:hi:step");
  as->add_option("--figure", figure, "fidelity or psucc");
  add_packaging(as);
  add_common(as);

  double a = 0.5;
  std::string tail = "derivation";
  auto* ga = app.add_subcommand("gauss", "Finite-N sandwich of p_succ for k ~ a sqrt(N)");
  ga->add_option("--a", a, "Scaling prefactor in (0, 2)");
  ga->add_option("--N-range", n_range, "Inclusive lo:hi:step");
  ga->add_option("--N-list", n_list, "Comma-separated N values");
  ga->add_option("--tail", tail, "Berry-Esseen remainder form")
      ->check(CLI::IsMember({"derivation", "conservative"}));
  add_common(ga);

  long max_dim = 512;
  auto* ver = app.add_subcommand("verify", "Cross-check closed forms against the dense oracle");
  ver->add_option("--max-dim", max_dim, "Largest Hilbert-space dimension d^(N+k) to include");
  add_common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  opt.strict_packaging = strict == "true";

  try {
    if (fid->parsed()) return cmd_fidelity(out, p, method, opt);
    if (ps->parsed()) return cmd_psucc(out, p, scheme, opt);
    if (cmp->parsed()) {
      const auto Ns = n_values(n_range, n_list);
      return cmd_compare(out, parse_list(k_list, "--k-list"), Ns, p.d, opt);
    }
    if (as->parsed()) {
      const auto Ns = n_list.empty() && n_range.empty() ? std::vector<int>{100, 1000, 10000, 100000}
                                                        : n_values(n_range, n_list);
      return cmd_asympt(out, parse_scheme(scheme_name), spec, Ns, parse_figure(figure), opt);
    }
    if (ga->parsed()) {
      return cmd_gauss(out, a, n_values(n_range, n_list),
                       tail == "conservative" ? BerryEsseenTail::kConservative
                                              : BerryEsseenTail::kDerivation,
                       opt);
    }
    if (ver->parsed()) return cmd_verify(out, max_dim, opt);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace portcap::cli
