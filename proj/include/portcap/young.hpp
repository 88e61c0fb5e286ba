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

// Young-diagram combinatorics: enumeration of frames with a bounded number of
// rows, standard-tableau counts (irrep dimensions of S(n)), semistandard
// counts (multiplicities in (C^d)^{⊗n}) and skew path counts m_{μ/α}.

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "portcap/exact_arith.hpp"

namespace portcap {

/// A spin label j stored as the integer 2j.
struct HalfInt {
  int doubled = 0;

  static HalfInt from_doubled(int twice) {
    if (twice < 0) throw PreconditionError("HalfInt: value must be >= 0");
    return HalfInt{twice};
  }
  bool is_integer() const { return doubled % 2 == 0; }
  double value() const { return doubled / 2.0; }

  auto operator<=>(const HalfInt&) const = default;
};

/// A Young frame: weakly decreasing positive row lengths. The empty frame
/// has no rows.
class Diagram {
 public:
  Diagram() = default;

  /// Trailing zero rows are trimmed; any other malformation throws.
  explicit Diagram(std::vector<int> rows) : rows_(std::move(rows)) {
    while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i] <= 0) throw PreconditionError("Diagram: row lengths must be positive");
      if (i > 0 && rows_[i] > rows_[i - 1]) {
        throw PreconditionError("Diagram: row lengths must be weakly decreasing");
      }
    }
  }
  Diagram(std::initializer_list<int> rows) : Diagram(std::vector<int>(rows)) {}

  const std::vector<int>& rows() const { return rows_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int row(int i) const { return i < num_rows() ? rows_[i] : 0; }
  int boxes() const {
    int total = 0;
    for (int r : rows_) total += r;
    return total;
  }
  bool empty() const { return rows_.empty(); }

  /// Length of column c (0-based).
  int column(int c) const {
    int len = 0;
    while (len < num_rows() && rows_[len] > c) ++len;
    return len;
  }

  /// Whether this frame contains `other` row by row.
  bool contains(const Diagram& other) const {
    if (other.num_rows() > num_rows()) return false;
    for (int i = 0; i < other.num_rows(); ++i) {
      if (other.rows_[i] > rows_[i]) return false;
    }
    return true;
  }

  /// Frames obtained by adding one box, restricted to at most `max_rows`.
  std::vector<Diagram> addable(int max_rows) const {
    std::vector<Diagram> out;
    for (int i = 0; i <= num_rows() && i < max_rows; ++i) {
      if (i == 0 || row(i) < row(i - 1)) {
        std::vector<int> next = rows_;
        if (i == num_rows()) {
          next.push_back(1);
        } else {
          ++next[i];
        }
        out.emplace_back(std::move(next));
      }
    }
    return out;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i > 0) s += ",";
      s += std::to_string(rows_[i]);
    }
    return s + ")";
  }

  bool operator==(const Diagram&) const = default;
  auto operator<=>(const Diagram& other) const { return rows_ <=> other.rows_; }

 private:
  std::vector<int> rows_;
};

/// All partitions of `boxes` with at most `max_rows` parts, in
/// lexicographically decreasing order.
inline std::vector<Diagram> enumerate_diagrams(int boxes, int max_rows) {
  if (boxes < 0) throw PreconditionError("enumerate_diagrams: boxes must be >= 0");
  if (max_rows < 1) throw PreconditionError("enumerate_diagrams: max_rows must be >= 1");
  std::vector<Diagram> out;
  std::vector<int> current;
  std::function<void(int, int)> recurse = [&](int remaining, int cap) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    if (static_cast<int>(current.size()) == max_rows) return;
    for (int part = std::min(remaining, cap); part >= 1; --part) {
      current.push_back(part);
      recurse(remaining - part, part);
      current.pop_back();
    }
  };
  recurse(boxes, boxes);
  return out;
}

/// Number of standard Young tableaux of shape mu (hook-length formula); the
/// dimension d_μ of the corresponding irrep of S(|mu|).
inline ExactInt syt_count(const Diagram& mu) {
  ExactInt hooks = 1;
  for (int i = 0; i < mu.num_rows(); ++i) {
    for (int c = 0; c < mu.row(i); ++c) {
      hooks *= (mu.row(i) - c - 1) + (mu.column(c) - i - 1) + 1;
    }
  }
  return factorial(mu.boxes()) / hooks;
}

/// Number of semistandard tableaux of shape mu with entries in {1..d}; the
/// multiplicity m_μ of the irrep in (C^d)^{⊗|mu|}. Zero when mu has more
/// than d rows.
inline ExactInt multiplicity(const Diagram& mu, int d) {
  if (d < 1) throw PreconditionError("multiplicity: d must be >= 1");
  if (mu.num_rows() > d) return 0;
  ExactInt num = 1;
  ExactInt den = 1;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      num *= mu.row(i) - mu.row(j) + j - i;
      den *= j - i;
    }
  }
  return num / den;
}

/// Every frame reachable from `alpha` by adding `k` boxes one at a time with
/// at most `max_rows` rows at each step, paired with the number of such
/// paths m_{μ/α}. Sorted lexicographically decreasing by frame.
///
/// Results are memoized per thread.
inline std::vector<std::pair<Diagram, ExactInt>> add_boxes(const Diagram& alpha, int k,
                                                           int max_rows) {
  if (k < 0) throw PreconditionError("add_boxes: k must be >= 0");
  if (max_rows < 1) throw PreconditionError("add_boxes: max_rows must be >= 1");
  if (alpha.num_rows() > max_rows) return {};

  using Key = std::tuple<std::vector<int>, int, int>;
  thread_local std::map<Key, std::vector<std::pair<Diagram, ExactInt>>> memo;
  Key key{alpha.rows(), k, max_rows};
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  std::vector<std::pair<Diagram, ExactInt>> result;
  if (k == 0) {
    result.emplace_back(alpha, ExactInt(1));
  } else {
    // Paths of length k from alpha = one step to a neighbour, then k-1 more.
    std::map<Diagram, ExactInt, std::greater<>> acc;
    for (const Diagram& next : alpha.addable(max_rows)) {
      for (const auto& [mu, count] : add_boxes(next, k - 1, max_rows)) {
        acc[mu] += count;
      }
    }
    result.assign(acc.begin(), acc.end());
  }
  memo.emplace(std::move(key), result);
  return result;
}

/// m_{μ/α} for frames with at most two rows, from the Aitken determinant
/// k! det[1/(μ_i - α_j - i + j)!] with 1/x! = 0 for x < 0.
inline ExactInt skew_count_two_row(const Diagram& alpha, const Diagram& mu) {
  if (alpha.num_rows() > 2 || mu.num_rows() > 2) {
    throw PreconditionError("skew_count_two_row: frames must have at most two rows");
  }
  if (!mu.contains(alpha)) {
    throw PreconditionError("skew_count_two_row: mu must contain alpha");
  }
  const int k = mu.boxes() - alpha.boxes();
  if (k < 1) throw PreconditionError("skew_count_two_row: mu must have more boxes than alpha");

  auto inv_fact = [](int x) -> ExactScalar {
    if (x < 0) return ExactScalar(0);
    return ExactScalar(ExactInt(1), factorial(x));
  };
  // Rows are 1-based in the determinant; entry (i, j) = 1/(μ_i - α_j - i + j)!.
  auto entry = [&](int i, int j) { return inv_fact(mu.row(i - 1) - alpha.row(j - 1) - i + j); };
  ExactScalar det = entry(1, 1) * entry(2, 2) - entry(1, 2) * entry(2, 1);
  ExactScalar value = det * ExactScalar(factorial(k));
  if (boost::multiprecision::denominator(value) != 1) {
    throw std::logic_error("skew_count_two_row: determinant is not integral");
  }
  return boost::multiprecision::numerator(value);
}

}  // namespace portcap
