#pragma once

#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace painleve {

using Complex = std::complex<double>;

/// Exponent lattice point (m, n) with m, n both integers or both half-integers.
///
/// Stored doubled so the half-integer sublattice stays exact. The point
/// addresses the exponent (2 sigma + 1) m + (1 - 2 sigma) n relative to the
/// series base power. Ordered by weight m + n first, then by m, so iterating a
/// std::map of indices walks the lattice weight by weight.
class GridIndex {
 public:
  constexpr GridIndex() = default;

  GridIndex(int two_m, int two_n) : two_m_(two_m), two_n_(two_n) {
    require(two_m >= 0 && two_n >= 0, "grid index components must be nonnegative");
    require(((two_m - two_n) % 2) == 0, "grid index (m, n) must lie on Z^2 or (1/2 + Z)^2");
  }

  static GridIndex integral(int m, int n) { return GridIndex(2 * m, 2 * n); }

  constexpr int two_m() const { return two_m_; }
  constexpr int two_n() const { return two_n_; }
  constexpr double m() const { return 0.5 * two_m_; }
  constexpr double n() const { return 0.5 * two_n_; }

  /// m + n; always an integer because of the parity constraint.
  constexpr int weight() const { return (two_m_ + two_n_) / 2; }
  constexpr int weight_x2() const { return two_m_ + two_n_; }
  constexpr bool half_integral() const { return (two_m_ % 2) != 0; }

  /// (2 sigma + 1) m + (1 - 2 sigma) n.
  Complex exponent_shift(Complex sigma) const {
    return (2.0 * sigma + 1.0) * m() + (1.0 - 2.0 * sigma) * n();
  }

  GridIndex operator+(const GridIndex& o) const { return {two_m_ + o.two_m_, two_n_ + o.two_n_}; }

  /// True when `o` can be subtracted without leaving the lattice quadrant.
  constexpr bool contains(const GridIndex& o) const { return o.two_m_ <= two_m_ && o.two_n_ <= two_n_; }
  GridIndex operator-(const GridIndex& o) const { return {two_m_ - o.two_m_, two_n_ - o.two_n_}; }

  friend constexpr bool operator==(const GridIndex&, const GridIndex&) = default;
  friend constexpr std::strong_ordering operator<=>(const GridIndex& a, const GridIndex& b) {
    if (auto c = a.weight_x2() <=> b.weight_x2(); c != 0) return c;
    return a.two_m_ <=> b.two_m_;
  }

  std::string to_string() const {
    auto half = [](int v) { return v % 2 == 0 ? std::to_string(v / 2) : std::to_string(v) + "/2"; };
    return "(" + half(two_m_) + "," + half(two_n_) + ")";
  }

 private:
  int two_m_ = 0;
  int two_n_ = 0;
};

/// All lattice points of the given weight, ordered by m.
inline std::vector<GridIndex> indices_of_weight(int weight) {
  std::vector<GridIndex> out;
  if (weight < 0) return out;
  out.reserve(static_cast<std::size_t>(2 * weight + 1));
  for (int a = 0; a <= 2 * weight; ++a) out.emplace_back(a, 2 * weight - a);
  return out;
}

/// All lattice points with weight <= max_weight, in GridIndex order.
inline std::vector<GridIndex> indices_up_to(int max_weight) {
  std::vector<GridIndex> out;
  for (int w = 0; w <= max_weight; ++w) {
    auto level = indices_of_weight(w);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

/// Fourier / level indexing of the tau series, exponent (sigma + fourier_m)^2 + level_n.
struct GilIndex {
  int fourier_m = 0;
  int level_n = 0;

  friend constexpr bool operator==(const GilIndex&, const GilIndex&) = default;
  friend constexpr auto operator<=>(const GilIndex&, const GilIndex&) = default;
};

/// (sigma + x)^2 + y = sigma^2 + (2 sigma + 1) m + (1 - 2 sigma) n with
/// m = (x^2 + y + x) / 2 and n = (x^2 + y - x) / 2.
inline GridIndex grid_from_gil(const GilIndex& g) {
  require(g.level_n >= 0, "GIL level must be nonnegative");
  const int x = g.fourier_m;
  const int sq = x * x + g.level_n;
  return GridIndex(sq + x, sq - x);
}

/// Inverse of grid_from_gil: x = m - n, y = m + n - x^2. The level may be
/// negative for lattice points outside the image of grid_from_gil.
inline GilIndex gil_from_grid(const GridIndex& p) {
  const int x = (p.two_m() - p.two_n()) / 2;
  return GilIndex{x, p.weight() - x * x};
}

/// (sigma_reduced, m0) with m0 the integer nearest to Re sigma.
inline std::pair<Complex, int> normalize_sigma(Complex sigma) {
  const double re = sigma.real();
  const double frac = re - std::floor(re);
  require(std::abs(frac - 0.5) > 1e-12, "Re sigma is a half-integer; no nearest integer");
  const int m0 = static_cast<int>(std::lround(re));
  return {sigma - static_cast<double>(m0), m0};
}

}  // namespace painleve
