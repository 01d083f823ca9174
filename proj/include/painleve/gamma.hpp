#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "error.hpp"

namespace painleve {

/// log Gamma(z) for complex z, accurate to about 1e-14 relative for |z| <= 50.
///
/// Lanczos approximation (g = 7, 9 terms) on Re z >= 1/2 and the reflection
/// formula below. The imaginary part is a valid branch of arg Gamma(z), not
/// necessarily the principal one; only exp() of sums of these is ever used.
inline std::complex<double> log_gamma(std::complex<double> z) {
  using C = std::complex<double>;
  constexpr double pi = std::numbers::pi;
  const double nearest = std::round(z.real());
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == nearest)
    fail(ErrorCode::resonance, "Gamma pole at z = " + std::to_string(z.real()));
  if (z.real() < 0.5) {
    // log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
    return C(std::log(pi), 0.0) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
  }
  static constexpr std::array<double, 9> coef{
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double g = 7.0;
  const C w = z - 1.0;
  C x = coef[0];
  for (std::size_t i = 1; i < coef.size(); ++i) x += coef[i] / (w + static_cast<double>(i));
  const C t = w + g + 0.5;
  return 0.5 * std::log(2.0 * pi) + (w + 0.5) * std::log(t) - t + std::log(x);
}

inline std::complex<double> gamma(std::complex<double> z) { return std::exp(log_gamma(z)); }

/// log of G(z + k) / G(z) for the Barnes G function, via G(z+1) = Gamma(z) G(z).
inline std::complex<double> log_barnes_g_shift(std::complex<double> z, int k) {
  std::complex<double> acc{};
  if (k >= 0) {
    for (int j = 0; j < k; ++j) acc += log_gamma(z + static_cast<double>(j));
  } else {
    for (int j = k; j < 0; ++j) acc -= log_gamma(z + static_cast<double>(j));
  }
  return acc;
}

}  // namespace painleve
