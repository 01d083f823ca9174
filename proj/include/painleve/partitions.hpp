#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace painleve {

inline constexpr int default_partition_bound = 40;

/// Integer partition as a Young diagram; rows weakly decreasing and positive.
class YoungDiagram {
 public:
  YoungDiagram() = default;
  explicit YoungDiagram(std::vector<int> rows) : rows_(std::move(rows)) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      require(rows_[i] > 0, "Young diagram rows must be positive");
      require(i == 0 || rows_[i] <= rows_[i - 1], "Young diagram rows must be weakly decreasing");
    }
  }

  const std::vector<int>& rows() const { return rows_; }
  int size() const { return std::accumulate(rows_.begin(), rows_.end(), 0); }
  bool empty() const { return rows_.empty(); }
  int length() const { return static_cast<int>(rows_.size()); }

  /// Row length lambda_i, 1-based; zero beyond the last row.
  int row(int i) const { return i >= 1 && i <= length() ? rows_[static_cast<std::size_t>(i) - 1] : 0; }

  bool contains(int i, int j) const { return i >= 1 && j >= 1 && j <= row(i); }

  friend bool operator==(const YoungDiagram&, const YoungDiagram&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < rows_.size(); ++i) s += (i ? "," : "") + std::to_string(rows_[i]);
    return s + ")";
  }

 private:
  std::vector<int> rows_;
};

inline YoungDiagram conjugate(const YoungDiagram& d) {
  std::vector<int> cols(static_cast<std::size_t>(d.row(1)), 0);
  for (int r : d.rows())
    for (int j = 0; j < r; ++j) ++cols[static_cast<std::size_t>(j)];
  return YoungDiagram(std::move(cols));
}

/// arm + leg + 1 of cell (i, j), 1-based.
inline int hook_length(const YoungDiagram& d, int i, int j) {
  require(d.contains(i, j), "cell (" + std::to_string(i) + "," + std::to_string(j) + ") is not in " + d.to_string());
  return (d.row(i) - j) + (conjugate(d).row(j) - i) + 1;
}

namespace detail {

inline void partitions_rec(int remaining, int max_part, std::vector<int>& prefix, std::vector<YoungDiagram>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int k = std::min(remaining, max_part); k >= 1; --k) {
    prefix.push_back(k);
    partitions_rec(remaining - k, k, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// All partitions of k in reverse-lexicographic order: (k), (k-1,1), ..., (1,...,1).
inline std::vector<YoungDiagram> partitions_of(int k, int bound = default_partition_bound) {
  require(k >= 0, "partition size must be nonnegative");
  require(k <= bound, "partition size " + std::to_string(k) + " exceeds bound " + std::to_string(bound));
  std::vector<YoungDiagram> out;
  std::vector<int> prefix;
  detail::partitions_rec(k, k, prefix, out);
  return out;
}

/// Ordered pairs (lambda, mu) with |lambda| + |mu| = w, grouped by |lambda| descending.
inline std::vector<std::pair<YoungDiagram, YoungDiagram>> pairs_of_weight(int w, int bound = default_partition_bound) {
  require(w >= 0, "pair weight must be nonnegative");
  require(w <= bound, "pair weight " + std::to_string(w) + " exceeds bound " + std::to_string(bound));
  std::vector<std::pair<YoungDiagram, YoungDiagram>> out;
  for (int a = w; a >= 0; --a) {
    const auto left = partitions_of(a, bound);
    const auto right = partitions_of(w - a, bound);
    for (const auto& l : left)
      for (const auto& r : right) out.emplace_back(l, r);
  }
  return out;
}

}  // namespace painleve
