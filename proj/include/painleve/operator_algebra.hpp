#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "formal_series.hpp"

namespace painleve {

/// Letters of an operator word: T multiplies by t, D applies delta = t d/dt.
enum class Letter { T, D };

/// Normal-ordered operator sum_{N,k} c_{N,k} t^N delta^k with exact integer
/// coefficients. Keys are (t_power, delta_power).
class Operator {
 public:
  using Key = std::pair<int, int>;

  Operator() = default;
  static Operator identity() { return monomial(0, 0); }
  static Operator monomial(int t_power, int delta_power, std::int64_t c = 1) {
    Operator op;
    op.add(t_power, delta_power, c);
    return op;
  }
  static Operator t() { return monomial(1, 0); }
  static Operator delta() { return monomial(0, 1); }
  /// t (t - 1) d/dt = t delta - delta.
  static Operator dbar() { return monomial(1, 1) + monomial(0, 1, -1); }

  void add(int t_power, int delta_power, std::int64_t c) {
    if (c == 0) return;
    auto& slot = terms_[{t_power, delta_power}];
    slot += c;
    if (slot == 0) terms_.erase({t_power, delta_power});
  }

  const std::map<Key, std::int64_t>& terms() const { return terms_; }

  std::int64_t coeff(int t_power, int delta_power) const {
    auto it = terms_.find({t_power, delta_power});
    return it == terms_.end() ? 0 : it->second;
  }

  friend Operator operator+(Operator a, const Operator& b) {
    for (const auto& [k, c] : b.terms_) a.add(k.first, k.second, c);
    return a;
  }

  /// Composition (a then b applied first): delta^b t^c = t^c (delta + c)^b.
  friend Operator operator*(const Operator& a, const Operator& b) {
    Operator out;
    for (const auto& [ka, ca] : a.terms_) {
      for (const auto& [kb, cb] : b.terms_) {
        const int n = ka.second;
        // (delta + shift)^n = sum_j C(n, j) shift^{n-j} delta^j
        std::vector<std::int64_t> shift_pow(static_cast<std::size_t>(n) + 1, 1);
        for (int j = 1; j <= n; ++j) shift_pow[static_cast<std::size_t>(j)] = shift_pow[static_cast<std::size_t>(j) - 1] * kb.first;
        for (int j = 0; j <= n; ++j)
          out.add(ka.first + kb.first, j + kb.second, ca * cb * binomial(n, j) * shift_pow[static_cast<std::size_t>(n - j)]);
      }
    }
    return out;
  }

  Operator pow(int k) const {
    Operator out = identity();
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  /// Action on the monomial t^rho, as a map t-shift -> coefficient.
  std::map<int, Complex> act_on_power(Complex rho) const {
    std::map<int, Complex> out;
    for (const auto& [k, c] : terms_) {
      Complex v = static_cast<double>(c);
      for (int i = 0; i < k.second; ++i) v *= rho;
      out[k.first] += v;
    }
    return out;
  }

  friend bool operator==(const Operator&, const Operator&) = default;

 private:
  std::map<Key, std::int64_t> terms_;
};

/// Normal form of a word read as an operator product, leftmost letter applied last.
inline Operator normal_order(const std::vector<Letter>& word) {
  Operator out = Operator::identity();
  for (Letter l : word) out = out * (l == Letter::T ? Operator::t() : Operator::delta());
  return out;
}

/// Signed Stirling numbers of the first kind: coefficients of
/// delta (delta - 1) ... (delta - K + 1), which equals t^K d^K/dt^K.
inline std::vector<std::int64_t> dtot_to_delta(int K) {
  require(K >= 0, "derivative order must be nonnegative");
  std::vector<std::int64_t> poly{1};
  for (int r = 0; r < K; ++r) {
    std::vector<std::int64_t> next(poly.size() + 1, 0);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= static_cast<std::int64_t>(r) * poly[j];
    }
    poly = std::move(next);
  }
  return poly;
}

/// Stirling numbers of the second kind S(j, K): delta^j = sum_K S(j,K) t^K d^K/dt^K.
inline std::vector<std::int64_t> delta_to_dtot(int j) {
  require(j >= 0, "delta power must be nonnegative");
  std::vector<std::int64_t> row{1};
  for (int r = 1; r <= j; ++r) {
    std::vector<std::int64_t> next(static_cast<std::size_t>(r) + 1, 0);
    for (int K = 1; K <= r; ++K) {
      const std::int64_t prev_same = K < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(K)] : 0;
      next[static_cast<std::size_t>(K)] = static_cast<std::int64_t>(K) * prev_same + row[static_cast<std::size_t>(K) - 1];
    }
    row = std::move(next);
  }
  return row;
}

}  // namespace painleve
