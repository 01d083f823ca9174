#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "error.hpp"
#include "grid.hpp"

namespace painleve {

/// Formal series  t^{order*sigma^2 + offset} * sum_{(m,n)} a_{m,n} t^{(2 sigma+1) m + (1-2 sigma) n}.
///
/// A solution series has order 1 and offset 0. Products of two series have
/// order 2, which is how bilinear residuals are represented. A nonzero offset
/// carries gauge factors t^c that are not lattice shifts.
///
/// Coefficients are exact for every stored index with weight <= max_weight;
/// absent indices are zero.
class FormalSeries {
 public:
  FormalSeries() = default;
  FormalSeries(Complex sigma, int max_weight_x2, int order = 1, Complex offset = {})
      : sigma_(sigma), offset_(offset), order_(order), max_weight_x2_(max_weight_x2) {
    require(max_weight_x2 >= 0, "max_weight must be nonnegative");
    require(order >= 1, "series order must be positive");
  }

  Complex sigma() const { return sigma_; }
  Complex offset() const { return offset_; }
  int order() const { return order_; }
  int max_weight_x2() const { return max_weight_x2_; }
  /// Largest integer weight whose coefficients are all exact.
  int max_weight() const { return max_weight_x2_ / 2; }

  Complex base_exponent() const { return static_cast<double>(order_) * sigma_ * sigma_ + offset_; }
  Complex exponent(const GridIndex& p) const { return base_exponent() + p.exponent_shift(sigma_); }

  Complex coeff(const GridIndex& p) const {
    auto it = coeffs_.find(p);
    return it == coeffs_.end() ? Complex{} : it->second;
  }

  bool in_range(const GridIndex& p) const { return p.weight_x2() <= max_weight_x2_; }

  /// Adds `value` at `p`; exact zeros are dropped and out-of-range indices ignored.
  void accumulate(const GridIndex& p, Complex value) {
    if (!in_range(p) || value == Complex{}) return;
    auto [it, inserted] = coeffs_.try_emplace(p, value);
    if (!inserted) {
      it->second += value;
      if (it->second == Complex{}) coeffs_.erase(it);
    }
  }

  void set(const GridIndex& p, Complex value) {
    require(in_range(p), "index " + p.to_string() + " beyond max_weight");
    if (value == Complex{}) {
      coeffs_.erase(p);
    } else {
      coeffs_[p] = value;
    }
  }

  const std::map<GridIndex, Complex>& terms() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [p, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Same exponent bookkeeping, no coefficients.
  FormalSeries empty_like() const { return FormalSeries(sigma_, max_weight_x2_, order_, offset_); }

  FormalSeries truncated(int max_weight_x2) const {
    FormalSeries out(sigma_, std::min(max_weight_x2, max_weight_x2_), order_, offset_);
    for (const auto& [p, c] : coeffs_)
      if (out.in_range(p)) out.coeffs_.emplace(p, c);
    return out;
  }

  FormalSeries with_offset(Complex offset) const {
    FormalSeries out = *this;
    out.offset_ = offset;
    return out;
  }

 private:
  Complex sigma_{};
  Complex offset_{};
  int order_ = 1;
  int max_weight_x2_ = 0;
  std::map<GridIndex, Complex> coeffs_;
};

/// Validated construction: duplicate indices and indices beyond the bound are rejected.
inline FormalSeries make_series(Complex sigma, const std::vector<std::pair<GridIndex, Complex>>& entries,
                                int max_weight_x2, int order = 1, Complex offset = {}) {
  FormalSeries f(sigma, max_weight_x2, order, offset);
  std::map<GridIndex, bool> seen;
  for (const auto& [p, c] : entries) {
    require(!seen[p], "duplicate index " + p.to_string());
    seen[p] = true;
    require(f.in_range(p), "index " + p.to_string() + " exceeds max_weight");
    f.set(p, c);
  }
  return f;
}

inline void require_compatible(const FormalSeries& f, const FormalSeries& g) {
  require(f.sigma() == g.sigma(), "series have different sigma");
}

/// delta^k f with delta = t d/dt: each coefficient times exponent^k.
inline FormalSeries delta_apply(const FormalSeries& f, int k) {
  require(k >= 0, "delta power must be nonnegative");
  FormalSeries out = f.empty_like();
  for (const auto& [p, c] : f.terms()) {
    Complex mult{1.0, 0.0};
    const Complex e = f.exponent(p);
    for (int i = 0; i < k; ++i) mult *= e;
    out.accumulate(p, c * mult);
  }
  return out;
}

/// t^N f. Moves every index by (N/2, N/2), which raises the exponent by exactly N.
inline FormalSeries shift_by_tpow(const FormalSeries& f, int N) {
  require(N >= 0, "t-power shift must be nonnegative");
  FormalSeries out(f.sigma(), f.max_weight_x2() + 2 * N, f.order(), f.offset());
  const GridIndex step(N, N);
  for (const auto& [p, c] : f.terms()) out.accumulate(p + step, c);
  return out;
}

inline FormalSeries scale(const FormalSeries& f, Complex s) {
  FormalSeries out = f.empty_like();
  for (const auto& [p, c] : f.terms()) out.accumulate(p, s * c);
  return out;
}

/// f + s * g. Both operands must share sigma, order and offset.
inline FormalSeries add_scaled(const FormalSeries& f, const FormalSeries& g, Complex s = 1.0) {
  require_compatible(f, g);
  require(f.order() == g.order() && f.offset() == g.offset(), "cannot add series with different base exponents");
  FormalSeries out(f.sigma(), std::min(f.max_weight_x2(), g.max_weight_x2()), f.order(), f.offset());
  for (const auto& [p, c] : f.terms()) out.accumulate(p, c);
  for (const auto& [p, c] : g.terms()) out.accumulate(p, s * c);
  return out;
}

/// Cauchy product on the lattice; the result is exact up to the smaller bound.
inline FormalSeries multiply(const FormalSeries& f, const FormalSeries& g) {
  require_compatible(f, g);
  FormalSeries out(f.sigma(), std::min(f.max_weight_x2(), g.max_weight_x2()), f.order() + g.order(),
                   f.offset() + g.offset());
  for (const auto& [p, a] : f.terms()) {
    if (!out.in_range(p)) break;
    for (const auto& [q, b] : g.terms()) {
      const GridIndex r = p + q;
      if (!out.in_range(r)) break;
      out.accumulate(r, a * b);
    }
  }
  return out;
}

/// f * sum_k poly[k] t^k.
inline FormalSeries multiply_by_t_polynomial(const FormalSeries& f, const std::vector<Complex>& poly) {
  FormalSeries out = f.empty_like();
  const GridIndex step(1, 1);
  for (const auto& [p, c] : f.terms()) {
    GridIndex r = p;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      if (!out.in_range(r)) break;
      out.accumulate(r, poly[k] * c);
      r = r + step;
    }
  }
  return out;
}

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Hirota pairing D^N f.g = sum_i (-1)^i C(N,i) delta^{N-i} f . delta^i g.
inline FormalSeries hirota_pair(int N, const FormalSeries& f, const FormalSeries& g) {
  require(N >= 0, "Hirota order must be nonnegative");
  require_compatible(f, g);
  // D^N t^a . t^b = (a - b)^N t^{a+b}; the difference is formed first so that
  // nearby exponents do not cancel through the binomial expansion.
  FormalSeries out = multiply(f.empty_like(), g.empty_like());
  for (const auto& [p, a] : f.terms()) {
    if (!out.in_range(p)) break;
    const Complex ep = f.exponent(p);
    for (const auto& [q, b] : g.terms()) {
      const GridIndex r = p + q;
      if (!out.in_range(r)) break;
      const Complex d = ep - g.exponent(q);
      Complex dn = 1.0;
      for (int k = 0; k < N; ++k) dn *= d;
      out.accumulate(r, dn * a * b);
    }
  }
  return out;
}

/// Sum over the stored support at t = r e^{i arg}, on the sheet fixed by arg.
inline Complex eval_polar(const FormalSeries& f, double r, double arg) {
  require(r > 0.0, "t = 0 is a fixed singularity");
  const Complex log_t(std::log(r), arg);
  Complex sum{};
  for (const auto& [p, c] : f.terms()) sum += c * std::exp(f.exponent(p) * log_t);
  return sum;
}

/// Partial sum at t; `branch_arg` selects the sheet and must agree with arg t modulo 2 pi.
inline Complex eval_partial(const FormalSeries& f, Complex t, double branch_arg) {
  require(t != Complex{}, "t = 0 is a fixed singularity");
  const double two_pi = 2.0 * std::numbers::pi;
  const double diff = std::remainder(branch_arg - std::arg(t), two_pi);
  require(std::abs(diff) < 1e-9, "branch_arg is not an argument of t");
  return eval_polar(f, std::abs(t), branch_arg);
}

/// S_w = sum over indices of weight <= w, for w = 0..max_weight.
inline std::vector<Complex> partial_sums_by_weight(const FormalSeries& f, double r, double arg) {
  require(r > 0.0, "t = 0 is a fixed singularity");
  const Complex log_t(std::log(r), arg);
  std::vector<Complex> level(static_cast<std::size_t>(f.max_weight()) + 1);
  for (const auto& [p, c] : f.terms()) level[static_cast<std::size_t>(p.weight())] += c * std::exp(f.exponent(p) * log_t);
  for (std::size_t w = 1; w < level.size(); ++w) level[w] += level[w - 1];
  return level;
}

}  // namespace painleve
