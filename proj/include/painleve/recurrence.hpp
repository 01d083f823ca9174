#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bilinear.hpp"
#include "error.hpp"
#include "formal_series.hpp"
#include "grid.hpp"

namespace painleve {

struct SeedCoeffs {
  Complex a00{1.0, 0.0};
  Complex a10{};
  Complex a01{};
};

/// s_p = (2 sigma + 1) m + (1 - 2 sigma) n, the exponent of p above t^{sigma^2}.
inline Complex grid_shift(const GridIndex& p, Complex sigma) { return p.exponent_shift(sigma); }

/// rho_{k,l} = (2 sigma + 1)(m - 2k) + (1 - 2 sigma)(n - 2l) for (k,l) and (m,n) on the grid.
inline Complex rho(const GridIndex& kl, const GridIndex& mn, Complex sigma) {
  const double dm = 0.5 * (mn.two_m() - 2 * kl.two_m());
  const double dn = 0.5 * (mn.two_n() - 2 * kl.two_n());
  return (2.0 * sigma + 1.0) * dm + (1.0 - 2.0 * sigma) * dn;
}

/// 4 rho^2 ((rho - 1)^2 - 4 sigma^2) with rho = s_p.
///
/// Evaluated as 4 rho^2 (rho - 1 - 2 sigma)(rho - 1 + 2 sigma) with each factor
/// written as (m + n - c) + 2 sigma (m - n - d), so it is exactly zero at the seeds.
inline Complex divisor(const GridIndex& p, Complex sigma) {
  const double w = p.weight();
  const double x = 0.5 * (p.two_m() - p.two_n());
  const Complex r = w + 2.0 * sigma * x;
  const Complex lo = (w - 1.0) + 2.0 * sigma * (x - 1.0);
  const Complex hi = (w - 1.0) + 2.0 * sigma * (x + 1.0);
  return 4.0 * r * r * lo * hi;
}

/// (0,0), (1,0), (0,1): the seeds, where the divisor vanishes identically.
inline bool is_free_index(const GridIndex& p) {
  return p == GridIndex(0, 0) || p == GridIndex(2, 0) || p == GridIndex(0, 2);
}

inline void require_reduced_sigma(Complex sigma) {
  require(std::abs(sigma.real()) < 0.5, "|Re sigma| must be < 1/2 (apply normalize_sigma first)");
}

struct RecurrenceOptions {
  /// |divisor(p)| < floor * weight(p)^4 is a resonance.
  double resonance_floor = 1e-8;
  double classify_tolerance = 1e-12;
};

namespace detail {

/// The t^N, N >= 1, part of an accepted equation, divided by its canonical scalar.
inline std::vector<BilinearTerm> normalized_forcing(const BilinearForm& eq, double tol, Complex* scalar_out = nullptr) {
  const Classification cls = classify_normal_form(eq, tol);
  if (!cls.accepted) fail(ErrorCode::validation, "equation lowest part rejected: " + cls.reason);
  if (scalar_out) *scalar_out = cls.scalar;
  std::vector<BilinearTerm> out;
  for (auto t : eq.terms()) {
    if (t.t_power == 0) continue;
    t.coeff /= cls.scalar;
    out.push_back(t);
  }
  return out;
}

}  // namespace detail

/// Coefficients a_{m,n} through weight M determined weight by weight.
///
/// At each non-seed p the t^{sigma^2 + s_p} coefficient of the equation is
///   (divisor(p)/2) a00 a_p
///   + sum_{k != 0, p} rho^2 ((rho-1)^2 - 4 sigma^2 - 4 s_k) a_k a_{p-k},  rho = s_{p-k} - s_k,
///   + sum_{N>=1} sum_{k} alpha_{N,i,j} e_k^i e_{p-N-k}^j a_k a_{p-N-k},   e = sigma^2 + s,
/// over ordered pairs, and a_p is chosen to make it vanish.
inline FormalSeries solve_recurrence(const BilinearForm& eq, const SeedCoeffs& seeds, Complex sigma, int M,
                                     const RecurrenceOptions& opt = {}) {
  require(M >= 0, "weight must be nonnegative");
  require(seeds.a00 != Complex{}, "seed a00 must be nonzero");
  require_reduced_sigma(sigma);
  const auto forcing = detail::normalized_forcing(eq, opt.classify_tolerance);

  FormalSeries a(sigma, 2 * M);
  const Complex sig2 = sigma * sigma;
  std::map<GridIndex, Complex> known;
  auto put = [&](const GridIndex& p, Complex v) {
    if (!a.in_range(p)) return;
    known[p] = v;
    a.set(p, v);
  };
  put(GridIndex(0, 0), seeds.a00);
  put(GridIndex(2, 0), seeds.a10);
  put(GridIndex(0, 2), seeds.a01);

  for (int w = 1; w <= M; ++w) {
    for (const GridIndex& p : indices_of_weight(w)) {
      if (is_free_index(p)) continue;
      const Complex sp = grid_shift(p, sigma);
      Complex total{};
      for (const auto& [k, ak] : known) {
        if (k.weight_x2() > p.weight_x2()) break;
        if (k == GridIndex(0, 0) || k == p || !p.contains(k)) continue;
        const GridIndex q = p - k;
        auto it = known.find(q);
        if (it == known.end()) continue;
        const Complex sk = grid_shift(k, sigma);
        const Complex r = (sp - sk) - sk;
        total += r * r * ((r - 1.0) * (r - 1.0) - 4.0 * sig2 - 4.0 * sk) * ak * it->second;
      }
      for (const auto& term : forcing) {
        const GridIndex step(term.t_power, term.t_power);
        if (!p.contains(step)) continue;
        const GridIndex rest = p - step;
        for (const auto& [k, ak] : known) {
          if (k.weight_x2() > rest.weight_x2()) break;
          if (!rest.contains(k)) continue;
          auto it = known.find(rest - k);
          if (it == known.end()) continue;
          const Complex ek = sig2 + grid_shift(k, sigma);
          const Complex eq_ = sig2 + grid_shift(rest - k, sigma);
          total += term.coeff * std::pow(ek, term.left_order) * std::pow(eq_, term.right_order) * ak * it->second;
        }
      }
      const Complex div = divisor(p, sigma);
      const double w4 = std::pow(static_cast<double>(w), 4);
      if (std::abs(div) < opt.resonance_floor * w4) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", std::abs(div));
        fail(ErrorCode::resonance, "small divisor at " + p.to_string() + ": |divisor| = " + buf);
      }
      const Complex value = -total / (0.5 * div * seeds.a00);
      if (value != Complex{}) put(p, value);
    }
  }
  return a;
}

struct SmallDivisorReport {
  double L = 0.0;
  GridIndex argmin;
  int scanned_weight = 0;
  bool near_boundary = false;  // L below 1e-3: the |Re sigma| -> 1/2 degeneration
};

/// L^4 = inf over non-seed grid points of |divisor|.
///
/// Scans weight by weight until the lower bound 4 (w d)^2 (w d - 2)^2,
/// d = 1 - 2|Re sigma|, valid for w d > 2, exceeds the running minimum.
inline SmallDivisorReport small_divisor_scan(Complex sigma, int min_weight = 2, int max_weight = 20000) {
  require_reduced_sigma(sigma);
  const double d = 1.0 - 2.0 * std::abs(sigma.real());
  SmallDivisorReport rep;
  double best = std::numeric_limits<double>::infinity();
  for (int w = 1;; ++w) {
    if (w > max_weight)
      fail(ErrorCode::validation, "small-divisor scan did not terminate; |Re sigma| too close to 1/2");
    for (const GridIndex& p : indices_of_weight(w)) {
      if (is_free_index(p)) continue;
      const double v = std::abs(divisor(p, sigma));
      if (v < best) {
        best = v;
        rep.argmin = p;
      }
    }
    rep.scanned_weight = w;
    const double wd = w * d;
    if (w >= min_weight && wd > 2.0 && 4.0 * wd * wd * (wd - 2.0) * (wd - 2.0) >= best) break;
  }
  if (best == 0.0) fail(ErrorCode::resonance, "divisor vanishes at " + rep.argmin.to_string());
  rep.L = std::pow(best, 0.25);
  rep.near_boundary = rep.L < 1e-3;
  return rep;
}

inline double small_divisor_L(Complex sigma) { return small_divisor_scan(sigma).L; }

struct MajorantConstants {
  Complex sigma{};
  double L = 0.0;
  double R = 0.0;
  std::map<int, double> A;  // N -> A_N, N >= 1
  double abs_a00 = 0.0, abs_a10 = 0.0, abs_a01 = 0.0;

  double A_at(int N) const {
    auto it = A.find(N);
    return it == A.end() ? 0.0 : it->second;
  }
  /// b_{0,0} = |a00| / (2R).
  double b00() const { return abs_a00 / (2.0 * R); }
};

inline MajorantConstants majorant_constants(const BilinearForm& eq, Complex sigma, const SeedCoeffs& seeds,
                                            const RecurrenceOptions& opt = {}) {
  require(seeds.a00 != Complex{}, "seed a00 must be nonzero");
  MajorantConstants mc;
  mc.sigma = sigma;
  mc.L = small_divisor_L(sigma);
  const double L4 = std::pow(mc.L, 4);
  const double s = std::abs(sigma);
  const double u = 2.0 * s + 1.0;
  mc.R = 2.0 * u * u * (u * u + 4.0 * s * s + 2.0 * u) / L4;
  for (const auto& t : detail::normalized_forcing(eq, opt.classify_tolerance))
    mc.A[t.t_power] += 2.0 * (s + 1.0) * (s + 1.0) / L4 * std::abs(t.coeff);
  mc.abs_a00 = std::abs(seeds.a00);
  mc.abs_a10 = std::abs(seeds.a10);
  mc.abs_a01 = std::abs(seeds.a01);
  return mc;
}

using Majorant = std::map<GridIndex, double>;

/// Dominating coefficients b_{m,n} through weight M:
///   b_p = (R/|a00|) sum_{k != 0,p} b_k b_{p-k}
///       + (1/|a00|) sum_N A_N sum_k B_k B_{p-N-k},  B_0 = |a00|, B_k = b_k otherwise,
/// except that p - N = 0 contributes A_N (b_{0,0} + |a00|).
inline Majorant majorant_coeffs(const MajorantConstants& mc, int M) {
  require(M >= 0, "weight must be nonnegative");
  require(mc.abs_a00 > 0.0 && mc.R > 0.0, "majorant constants are degenerate");
  const double a = mc.abs_a00;
  const double c = mc.b00();
  Majorant b;
  b[GridIndex(0, 0)] = c;
  if (M >= 1) {
    b[GridIndex(2, 0)] = mc.abs_a10;
    b[GridIndex(0, 2)] = mc.abs_a01;
  }
  auto big = [&](const GridIndex& k) {
    if (k == GridIndex(0, 0)) return a;
    auto it = b.find(k);
    return it == b.end() ? 0.0 : it->second;
  };
  for (int w = 1; w <= M; ++w) {
    for (const GridIndex& p : indices_of_weight(w)) {
      if (is_free_index(p)) continue;
      double total = 0.0;
      for (const auto& [k, bk] : b) {
        if (k.weight_x2() > p.weight_x2()) break;
        if (k == GridIndex(0, 0) || k == p || !p.contains(k)) continue;
        auto it = b.find(p - k);
        if (it != b.end()) total += mc.R / a * bk * it->second;
      }
      for (const auto& [N, AN] : mc.A) {
        const GridIndex step(N, N);
        if (AN == 0.0 || !p.contains(step)) continue;
        const GridIndex rest = p - step;
        if (rest == GridIndex(0, 0)) {
          total += AN * (c + a);
          continue;
        }
        for (const auto& [k, unused] : b) {
          if (k.weight_x2() > rest.weight_x2()) break;
          if (!rest.contains(k)) continue;
          total += AN / a * big(k) * big(rest - k);
        }
      }
      if (total > 0.0) b[p] = total;
    }
  }
  return b;
}

/// Sector-uniform moduli: |t^{(2 sigma+1)m + (1-2 sigma)n}| <= X^m Y^n for |t| = r, |arg t| <= sector.
struct MajorantPoint {
  double X = 0.0, Y = 0.0, T = 0.0;
};

inline MajorantPoint majorant_point(Complex sigma, double r, double sector) {
  const double ang = std::exp(2.0 * std::abs(sigma.imag()) * sector);
  MajorantPoint pt;
  pt.X = std::pow(r, 1.0 + 2.0 * sigma.real()) * ang;
  pt.Y = std::pow(r, 1.0 - 2.0 * sigma.real()) * ang;
  pt.T = std::sqrt(pt.X * pt.Y);
  return pt;
}

/// Closed form of the majorant: with v = sum_{p != 0} b_p X^m Y^n,
///   ((R + A)/|a00|) v^2 - (1 - 2A) v + S = 0,  S = |a10| X + |a01| Y + A (b00 + |a00|),
/// A = sum_N A_N T^N, and v is the root vanishing at the origin.
struct MajorantClosedForm {
  double linear = 0.0;        // 1 - 2A
  double discriminant = 0.0;  // (1 - 2A)^2 - 4 P S
  double v = 0.0;             // valid when linear > 0 and discriminant >= 0
  bool valid = false;
};

inline MajorantClosedForm majorant_closed_form(const MajorantConstants& mc, const MajorantPoint& pt) {
  double A = 0.0;
  for (const auto& [N, AN] : mc.A) A += AN * std::pow(pt.T, N);
  const double P = (mc.R + A) / mc.abs_a00;
  const double S = mc.abs_a10 * pt.X + mc.abs_a01 * pt.Y + A * (mc.b00() + mc.abs_a00);
  MajorantClosedForm out;
  out.linear = 1.0 - 2.0 * A;
  out.discriminant = out.linear * out.linear - 4.0 * P * S;
  out.valid = out.linear > 0.0 && out.discriminant >= 0.0;
  if (out.valid) out.v = 2.0 * S / (out.linear + std::sqrt(out.discriminant));
  return out;
}

struct RadiusEstimate {
  double radius = 0.0;  // +inf when unbounded
  double sector_halfwidth = 0.0;
  std::string witness;
};

/// Largest r for which the closed-form majorant stays on its analytic branch
/// uniformly over the sector; bisection to relative width 1e-6.
inline RadiusEstimate radius_estimate(const MajorantConstants& mc, double sector_halfwidth) {
  require_reduced_sigma(mc.sigma);
  require(sector_halfwidth >= 0.0 && std::isfinite(sector_halfwidth), "sector half-width must be finite and >= 0");
  RadiusEstimate est;
  est.sector_halfwidth = sector_halfwidth;
  bool any_A = false;
  for (const auto& [N, AN] : mc.A) any_A = any_A || AN > 0.0;
  if (mc.abs_a10 == 0.0 && mc.abs_a01 == 0.0 && !any_A) {
    est.radius = std::numeric_limits<double>::infinity();
    est.witness = "no forcing and zero seeds: majorant is constant";
    return est;
  }
  auto ok = [&](double r) { return majorant_closed_form(mc, majorant_point(mc.sigma, r, sector_halfwidth)).valid; };
  double lo = 0.0, hi = 1.0;
  while (ok(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) {
      est.radius = std::numeric_limits<double>::infinity();
      est.witness = "closed form valid for all r";
      return est;
    }
  }
  while (hi - lo > 1e-6 * hi) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  est.radius = lo;
  const auto at = majorant_closed_form(mc, majorant_point(mc.sigma, hi, sector_halfwidth));
  est.witness = at.linear <= 0.0 ? "1 - 2 sum A_N T^N vanishes" : "discriminant of the majorant quadratic vanishes";
  return est;
}

/// sum_{weight(p) in [lo, hi]} b_p X^m Y^n.
inline double majorant_partial(const Majorant& b, const MajorantPoint& pt, int lo, int hi) {
  double s = 0.0;
  for (const auto& [p, v] : b)
    if (p.weight() >= lo && p.weight() <= hi) s += v * std::pow(pt.X, p.m()) * std::pow(pt.Y, p.n());
  return s;
}

/// Upper bound for sum_{weight(p) > M} |a_p| |t^{s_p}| over |t| = r, |arg t| <= sector.
///
/// Maximum of the closed-form remainder and a geometric extrapolation from the
/// last three computed weight sums, plus rounding slack.
inline double tail_bound(const MajorantConstants& mc, const Majorant& b, double r, int M, double sector = 0.0) {
  require(M >= 0, "weight must be nonnegative");
  require(r > 0.0, "radius must be positive");
  const auto est = radius_estimate(mc, sector);
  if (r >= est.radius) fail(ErrorCode::validation, "tail_bound requires r below the estimated radius");
  const MajorantPoint pt = majorant_point(mc.sigma, r, sector);
  const auto cf = majorant_closed_form(mc, pt);
  int top = 0;
  for (const auto& [p, v] : b) top = std::max(top, p.weight());
  const double head = majorant_partial(b, pt, 1, M);
  const double closed = std::max(0.0, cf.v - head);

  double extrap = 0.0;
  if (top > M) {
    extrap = majorant_partial(b, pt, M + 1, top);
    if (top >= 3) {
      const double s1 = majorant_partial(b, pt, top - 2, top - 2);
      const double s2 = majorant_partial(b, pt, top - 1, top - 1);
      const double s3 = majorant_partial(b, pt, top, top);
      double q = 0.0;
      if (s1 > 0.0) q = std::max(q, s2 / s1);
      if (s2 > 0.0) q = std::max(q, s3 / s2);
      extrap += q < 1.0 ? s3 * q / (1.0 - q) : std::numeric_limits<double>::infinity();
    }
  }
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * (cf.v + head);
  const double bound = std::isfinite(extrap) ? std::max(closed, extrap) : closed;
  return bound + slack;
}

/// Per Fourier index x = m - n: smallest y = m + n carrying a coefficient above
/// rel_tol * max|a|, and the points violating y >= |x| or y >= x^2.
struct SupportProfile {
  std::map<int, int> min_level;
  std::vector<GridIndex> below_abs_x;
  std::vector<GridIndex> below_x_squared;
};

inline SupportProfile support_profile(const FormalSeries& f, double rel_tol = 1e-10) {
  SupportProfile prof;
  const double cut = rel_tol * f.max_abs();
  for (const auto& [p, c] : f.terms()) {
    if (std::abs(c) <= cut) continue;
    const int x = (p.two_m() - p.two_n()) / 2;
    const int y = p.weight();
    auto [it, inserted] = prof.min_level.try_emplace(x, y);
    if (!inserted) it->second = std::min(it->second, y);
    if (y < std::abs(x)) prof.below_abs_x.push_back(p);
    if (y < x * x) prof.below_x_squared.push_back(p);
  }
  return prof;
}

}  // namespace painleve
