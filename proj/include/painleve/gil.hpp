#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "formal_series.hpp"
#include "gamma.hpp"
#include "grid.hpp"
#include "partitions.hpp"

namespace painleve {

struct ThetaVI {
  Complex theta0{}, thetat{}, theta1{}, thetainf{};
};

/// Sign pattern of sigma inside the pair terms.
///
/// printed: -sigma in every numerator, +2 sigma in every denominator.
/// sigma_flipped: as printed, with sigma -> -sigma in all mu-cell factors.
/// signed: +sigma numerators / +2 sigma denominators on lambda cells and
///   -sigma / -2 sigma on mu cells.
enum class ConventionFlag { printed, sigma_flipped, signed_ };

inline std::string to_string(ConventionFlag c) {
  switch (c) {
    case ConventionFlag::printed: return "printed";
    case ConventionFlag::sigma_flipped: return "flipped";
    case ConventionFlag::signed_: return "signed";
  }
  return "?";
}

inline ConventionFlag parse_convention(const std::string& s) {
  if (s == "printed") return ConventionFlag::printed;
  if (s == "flipped" || s == "sigma_flipped") return ConventionFlag::sigma_flipped;
  if (s == "signed") return ConventionFlag::signed_;
  fail(ErrorCode::validation, "unknown convention '" + s + "' (expected printed, flipped, signed)");
}

inline const std::vector<ConventionFlag>& all_conventions() {
  static const std::vector<ConventionFlag> all{ConventionFlag::printed, ConventionFlag::sigma_flipped,
                                               ConventionFlag::signed_};
  return all;
}

struct BlockSpec {
  ThetaVI theta;
  Complex sigma{};
  Complex eta{};
  ConventionFlag convention = ConventionFlag::printed;
};

namespace detail {

inline double cell_tolerance() { return 1e-12; }

/// Product over the cells of `a`, paired against `b`, with numerator sigma
/// `sn` and denominator sigma `sd`.
inline Complex cell_product(const YoungDiagram& a, const YoungDiagram& b, const ThetaVI& th, Complex sn, Complex sd,
                            const char* label) {
  const YoungDiagram ac = conjugate(a);
  Complex r = 1.0;
  for (int i = 1; i <= a.length(); ++i) {
    for (int j = 1; j <= a.row(i); ++j) {
      const double ij = static_cast<double>(i - j);
      const Complex u = th.thetat - sn + ij;
      const Complex v = th.theta1 - sn + ij;
      const Complex num = (u * u - th.theta0 * th.theta0) * (v * v - th.thetainf * th.thetainf);
      const Complex base = static_cast<double>(ac.row(j) - i + b.row(i) - j + 1) + 2.0 * sd;
      if (std::abs(base) < cell_tolerance())
        fail(ErrorCode::resonance, std::string("vanishing denominator at ") + label + "-cell (" + std::to_string(i) +
                                       "," + std::to_string(j) + ")");
      const double h = hook_length(a, i, j);
      r *= num / (h * h * base * base);
    }
  }
  return r;
}

}  // namespace detail

/// Pair term B_{lambda,mu}(theta, sigma).
inline Complex term_B(const YoungDiagram& lambda, const YoungDiagram& mu, const BlockSpec& spec) {
  const Complex s = spec.sigma;
  Complex l_num = s, l_den = s, m_num = s, m_den = s;
  switch (spec.convention) {
    case ConventionFlag::printed: break;
    case ConventionFlag::sigma_flipped: m_num = -s; m_den = -s; break;
    case ConventionFlag::signed_: l_num = -s; m_num = s; m_den = -s; break;
  }
  return detail::cell_product(lambda, mu, spec.theta, l_num, l_den, "lambda") *
         detail::cell_product(mu, lambda, spec.theta, m_num, m_den, "mu");
}

/// Coefficients of sum_{lambda,mu} B_{lambda,mu} t^{|lambda|+|mu|} for weights 0..M.
inline std::vector<Complex> block_coeffs(const BlockSpec& spec, int M) {
  require(M >= 0, "block weight must be nonnegative");
  std::vector<Complex> out(static_cast<std::size_t>(M) + 1);
  for (int w = 0; w <= M; ++w)
    for (const auto& [l, m] : pairs_of_weight(w)) out[static_cast<std::size_t>(w)] += term_B(l, m, spec);
  return out;
}

/// Coefficients of (1 - t)^exponent through t^M.
inline std::vector<Complex> prefactor_coeffs(Complex exponent, int M) {
  require(M >= 0, "prefactor order must be nonnegative");
  std::vector<Complex> c(static_cast<std::size_t>(M) + 1);
  c[0] = 1.0;
  for (int k = 1; k <= M; ++k)
    c[static_cast<std::size_t>(k)] = -c[static_cast<std::size_t>(k) - 1] * (exponent - static_cast<double>(k - 1)) /
                                     static_cast<double>(k);
  return c;
}

/// e^{i n eta} N(sigma+n) / N(sigma), where N is the product of the two
/// Barnes-G normalizations of a block; evaluated as finite Gamma products.
inline Complex fourier_weight(int n, const BlockSpec& spec) {
  if (n == 0) return 1.0;
  const auto& th = spec.theta;
  const Complex s = spec.sigma;
  struct Factor {
    const char* name;
    Complex arg;
    int slope;  // coefficient of sigma in the argument
    int power;  // +1 numerator, -1 denominator
  };
  const Factor factors[] = {
      {"G(1+theta_inf+sigma+theta_1)", 1.0 + th.thetainf + s + th.theta1, 1, 1},
      {"G(1+theta_inf-sigma-theta_1)", 1.0 + th.thetainf - s - th.theta1, -1, 1},
      {"G(1-theta_inf+sigma-theta_1)", 1.0 - th.thetainf + s - th.theta1, 1, 1},
      {"G(1-theta_inf-sigma+theta_1)", 1.0 - th.thetainf - s + th.theta1, -1, 1},
      {"G(1-2sigma)", 1.0 - 2.0 * s, -2, -1},
      {"G(1+sigma+theta_0+theta_t)", 1.0 + s + th.theta0 + th.thetat, 1, 1},
      {"G(1+sigma-theta_0-theta_t)", 1.0 + s - th.theta0 - th.thetat, 1, 1},
      {"G(1-sigma+theta_0-theta_t)", 1.0 - s + th.theta0 - th.thetat, -1, 1},
      {"G(1-sigma-theta_0+theta_t)", 1.0 - s - th.theta0 + th.thetat, -1, 1},
      {"G(1+2sigma)", 1.0 + 2.0 * s, 2, -1},
  };
  Complex log_ratio = Complex(0.0, 1.0) * static_cast<double>(n) * spec.eta;
  for (const auto& f : factors) {
    try {
      log_ratio += static_cast<double>(f.power) * log_barnes_g_shift(f.arg, f.slope * n);
    } catch (const Error& e) {
      fail(ErrorCode::resonance, std::string("Gamma pole in factor ") + f.name + " at n=" + std::to_string(n) + ": " +
                                     e.what());
    }
  }
  return std::exp(log_ratio);
}

/// Fourier sum of blocks over |x| <= n_range, placed on the grid of the
/// reduced sigma, through grid weight M.
///
/// The stratum at the integer nearest to sigma carries weight 1, and the base
/// power includes t^{-theta_0^2-theta_t^2}; the remaining constant is dropped.
inline FormalSeries tau_vi_series(const BlockSpec& spec, int n_range, int M) {
  require(n_range >= 0, "n_range must be nonnegative");
  require(M >= 0, "weight must be nonnegative");
  const Complex sigma_r = normalize_sigma(spec.sigma).first;
  BlockSpec reduced = spec;
  reduced.sigma = sigma_r;
  const auto& th = spec.theta;
  FormalSeries out(sigma_r, 2 * M, 1, -th.theta0 * th.theta0 - th.thetat * th.thetat);
  for (int x = -n_range; x <= n_range; ++x) {
    const int levels = M - x * x;
    if (levels < 0) continue;
    BlockSpec shifted = reduced;
    shifted.sigma = sigma_r + static_cast<double>(x);
    const Complex weight = fourier_weight(x, reduced);
    const auto block = block_coeffs(shifted, levels);
    const auto pre = prefactor_coeffs(2.0 * th.thetat * th.theta1, levels);
    for (int lev = 0; lev <= levels; ++lev) {
      Complex c{};
      for (int k = 0; k <= lev; ++k) c += pre[static_cast<std::size_t>(k)] * block[static_cast<std::size_t>(lev - k)];
      out.accumulate(grid_from_gil({x, lev}), weight * c);
    }
  }
  return out;
}

/// f = t^{(th0^2+tht^2-th1^2-thinf^2)/2} (1-t)^{(tht^2+th1^2-th0^2-thinf^2)/2} tau, through weight M.
inline FormalSeries gauge_to_f(const FormalSeries& tau, const ThetaVI& th, int M) {
  const Complex a0 = th.theta0 * th.theta0, at = th.thetat * th.thetat;
  const Complex a1 = th.theta1 * th.theta1, ai = th.thetainf * th.thetainf;
  const FormalSeries t = tau.truncated(2 * M);
  const FormalSeries shifted = t.with_offset(t.offset() + 0.5 * (a0 + at - a1 - ai));
  return multiply_by_t_polynomial(shifted, prefactor_coeffs(0.5 * (at + a1 - a0 - ai), M));
}

}  // namespace painleve
