#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bilinear.hpp"
#include "error.hpp"
#include "formal_series.hpp"
#include "gil.hpp"
#include "recurrence.hpp"

namespace painleve {

struct ResidualRow {
  GridIndex index;
  Complex value{};
  bool used_in_fit = false;
};

struct VIFit {
  ConventionFlag convention = ConventionFlag::printed;
  Complex e1{}, e2{}, sigma4{};
  /// max |residual| over rows not used in the fit, relative to the largest
  /// coefficient of the residual with all three scalars set to zero.
  double max_rel_residual = 0.0;
  double scale = 0.0;
  std::vector<ResidualRow> table;
};

struct VIFitReport {
  std::vector<VIFit> fits;  // one per convention tried, in the order given
  std::size_t best = 0;
  const VIFit& winner() const { return fits.at(best); }
};

namespace detail {

using Vec3 = std::array<Complex, 3>;

inline Vec3 sub_scaled(const Vec3& a, const Vec3& b, Complex s) {
  return {a[0] - s * b[0], a[1] - s * b[1], a[2] - s * b[2]};
}
inline Complex dot_conj(const Vec3& a, const Vec3& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}
inline double norm3(const Vec3& a) { return std::sqrt(std::real(dot_conj(a, a))); }

/// Solves A x = y for a 3x3 complex system by partial-pivot elimination.
inline Vec3 solve3(std::array<Vec3, 3> A, Vec3 y) {
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(A[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) >
          std::abs(A[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)]))
        piv = r;
    std::swap(A[static_cast<std::size_t>(c)], A[static_cast<std::size_t>(piv)]);
    std::swap(y[static_cast<std::size_t>(c)], y[static_cast<std::size_t>(piv)]);
    const Complex d = A[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
    if (d == Complex{}) fail(ErrorCode::fit_failure, "fit system is singular");
    for (int r = c + 1; r < 3; ++r) {
      const Complex f = A[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] / d;
      A[static_cast<std::size_t>(r)] = sub_scaled(A[static_cast<std::size_t>(r)], A[static_cast<std::size_t>(c)], f);
      y[static_cast<std::size_t>(r)] -= f * y[static_cast<std::size_t>(c)];
    }
  }
  Vec3 x{};
  for (int c = 2; c >= 0; --c) {
    Complex s = y[static_cast<std::size_t>(c)];
    for (int k = c + 1; k < 3; ++k) s -= A[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(c)] = s / A[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
  }
  return x;
}

}  // namespace detail

inline EquationParams vi_params(Complex e1, Complex e2, Complex sigma4, const std::optional<ThetaVI>& th = {}) {
  EquationParams p;
  p.e1 = e1;
  p.e2 = e2;
  p.sigma4 = sigma4;
  if (th) {
    p.theta0 = th->theta0;
    p.thetat = th->thetat;
    p.theta1 = th->theta1;
    p.thetainf = th->thetainf;
  }
  return p;
}

/// Fits (e1, e2, sigma4) so that f solves the P_VI bilinear equation.
///
/// The residual is affine in the three scalars. The three lowest residual rows
/// that raise the rank of the coefficient matrix are solved exactly; all other
/// rows through weight M are reported.
inline VIFit fit_vi_scalars_for(const FormalSeries& f, int M, ConventionFlag convention) {
  const auto eq_at = [](Complex e1, Complex e2, Complex s4) {
    return build_named_equation(EquationName::VI, vi_params(e1, e2, s4));
  };
  const FormalSeries r0 = residual(eq_at(0.0, 0.0, 0.0), f, M);
  const FormalSeries d1 = add_scaled(residual(eq_at(1.0, 0.0, 0.0), f, M), r0, -1.0);
  const FormalSeries d2 = add_scaled(residual(eq_at(0.0, 1.0, 0.0), f, M), r0, -1.0);
  const FormalSeries d3 = add_scaled(residual(eq_at(0.0, 0.0, 1.0), f, M), r0, -1.0);

  std::vector<GridIndex> keys;
  for (const auto* s : {&r0, &d1, &d2, &d3})
    for (const auto& [p, c] : s->terms()) keys.push_back(p);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  double row_scale = 0.0;
  for (const auto& p : keys)
    row_scale = std::max({row_scale, std::abs(d1.coeff(p)), std::abs(d2.coeff(p)), std::abs(d3.coeff(p))});

  std::array<detail::Vec3, 3> A{};
  detail::Vec3 y{};
  std::vector<detail::Vec3> basis;
  std::vector<GridIndex> chosen;
  for (const auto& p : keys) {
    if (chosen.size() == 3) break;
    const detail::Vec3 row{d1.coeff(p), d2.coeff(p), d3.coeff(p)};
    detail::Vec3 ortho = row;
    for (const auto& b : basis) ortho = detail::sub_scaled(ortho, b, detail::dot_conj(b, ortho));
    const double n = detail::norm3(ortho);
    if (n <= 1e-10 * std::max(row_scale, detail::norm3(row))) continue;
    for (auto& v : ortho) v /= n;
    basis.push_back(ortho);
    A[chosen.size()] = row;
    y[chosen.size()] = -r0.coeff(p);
    chosen.push_back(p);
  }
  if (chosen.size() < 3)
    fail(ErrorCode::fit_failure, "fit system has rank " + std::to_string(chosen.size()) +
                                     " < 3 through weight " + std::to_string(M) + "; raise the weight");
  const detail::Vec3 x = detail::solve3(A, y);

  VIFit fit;
  fit.convention = convention;
  fit.e1 = x[0];
  fit.e2 = x[1];
  fit.sigma4 = x[2];
  fit.scale = r0.max_abs();
  double worst = 0.0;
  for (const auto& p : keys) {
    const Complex v = r0.coeff(p) + x[0] * d1.coeff(p) + x[1] * d2.coeff(p) + x[2] * d3.coeff(p);
    const bool used = std::find(chosen.begin(), chosen.end(), p) != chosen.end();
    fit.table.push_back({p, v, used});
    if (!used) worst = std::max(worst, std::abs(v));
  }
  fit.max_rel_residual = fit.scale > 0.0 ? worst / fit.scale : worst;
  return fit;
}

/// Default Fourier window: every stratum with x^2 <= M.
inline int default_n_range(int M) { return static_cast<int>(std::floor(std::sqrt(static_cast<double>(M)) + 1e-12)); }

/// The gauged P_VI series f built from the combinatorial tau series.
inline FormalSeries vi_f_series(const ThetaVI& theta, Complex sigma, Complex eta, ConventionFlag convention, int M,
                                int n_range) {
  BlockSpec spec{theta, sigma, eta, convention};
  return gauge_to_f(tau_vi_series(spec, n_range, M), theta, M);
}

/// Runs the fit for every requested convention and picks the smallest
/// remaining residual.
inline VIFitReport fit_vi_scalars(const ThetaVI& theta, Complex sigma, Complex eta, int M,
                                  std::optional<int> n_range = std::nullopt,
                                  const std::vector<ConventionFlag>& conventions = all_conventions()) {
  require(M >= 2, "fit needs weight >= 2");
  require(!conventions.empty(), "no conventions to fit");
  const int nr = n_range.value_or(default_n_range(M));
  VIFitReport rep;
  for (ConventionFlag c : conventions)
    rep.fits.push_back(fit_vi_scalars_for(vi_f_series(theta, sigma, eta, c, M, nr), M, c));
  for (std::size_t i = 1; i < rep.fits.size(); ++i)
    if (rep.fits[i].max_rel_residual < rep.fits[rep.best].max_rel_residual) rep.best = i;
  return rep;
}

/// Recurrence solution of the gauged P_VI equation with seeds read off the
/// combinatorial series, compared coefficient by coefficient.
struct VICrossCheck {
  Complex alpha{};            // lowest-part excess removed by the gauge
  Complex offset_mismatch{};  // base-exponent difference; zero when e1 is right
  double max_rel_difference = 0.0;
  FormalSeries recurrence;
};

inline VICrossCheck cross_check_vi(const FormalSeries& f, const VIFit& fit, int M) {
  const BilinearForm eq = build_named_equation(EquationName::VI, vi_params(fit.e1, fit.e2, fit.sigma4));
  const GaugeResult g = gauge_absorb(eq, 1e-9);
  VICrossCheck out;
  out.alpha = g.alpha;
  out.offset_mismatch = f.offset() - g.alpha / 4.0;
  const SeedCoeffs seeds{f.coeff(GridIndex(0, 0)), f.coeff(GridIndex(2, 0)), f.coeff(GridIndex(0, 2))};
  RecurrenceOptions opt;
  opt.classify_tolerance = 1e-9;
  out.recurrence = solve_recurrence(g.equation, seeds, f.sigma(), M, opt);
  double worst = 0.0;
  const double scale = f.max_abs();
  for (const auto& p : indices_up_to(M))
    worst = std::max(worst, std::abs(out.recurrence.coeff(p) - f.coeff(p)));
  out.max_rel_difference = worst / scale;
  return out;
}

}  // namespace painleve
