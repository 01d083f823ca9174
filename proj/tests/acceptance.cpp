// Acceptance run: one PASS/FAIL line per criterion, INFO lines for diagnostics.
// Usage: painleve_acceptance [--criterion N]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "painleve/painleve.hpp"

using namespace painleve;

namespace {

std::mt19937_64 rng(977);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
Complex random_complex(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }
Complex unit_phase() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

void info(const std::string& s) { std::printf("INFO   %s\n", s.c_str()); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}
std::string sci(double v) { return fmt("%.3e", v); }

struct NamedEquation {
  std::string label;
  BilinearForm eq;  // already in canonical normal form
};

/// The four equations solved by the recurrence, V gauged to canonical form.
std::vector<NamedEquation> solvable_equations() {
  EquationParams p;
  p.theta0 = Complex(0.27, 0.05);
  p.thetat = 0.19;
  p.theta_ast = Complex(0.33, -0.04);
  p.theta_star = 0.41;
  std::vector<NamedEquation> out;
  out.push_back({"V", gauge_absorb(build_named_equation(EquationName::V, p)).equation});
  out.push_back({"III1", build_named_equation(EquationName::III1, p)});
  out.push_back({"III2", build_named_equation(EquationName::III2, p)});
  out.push_back({"III3", build_named_equation(EquationName::III3, p)});
  return out;
}

const Complex kSolveSigma(0.31, 0.12);

SeedCoeffs random_seeds() { return {unit_phase(), random_complex(), random_complex()}; }

// 1. Hirota closed forms on two monomials.
Outcome hirota_closed_forms() {
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Complex a = random_complex(), b = random_complex();
    const Complex alpha = random_complex(2.0), beta = random_complex(2.0);
    FormalSeries fa(0.0, 0, 1, alpha), fb(0.0, 0, 1, beta);
    fa.set(GridIndex(0, 0), a);
    fb.set(GridIndex(0, 0), b);
    const GridIndex o(0, 0);
    // Self-pairings vanish, so the mixed terms carry the whole bilinear expression.
    const Complex d4 = hirota_pair(4, fa, fb).coeff(o) + hirota_pair(4, fb, fa).coeff(o);
    const Complex d2 = hirota_pair(2, fa, fb).coeff(o) + hirota_pair(2, fb, fa).coeff(o);
    const Complex d2d = hirota_pair(2, delta_apply(fa, 1), fb).coeff(o) + hirota_pair(2, delta_apply(fb, 1), fa).coeff(o);
    const Complex d = alpha - beta;
    const auto rel = [](Complex got, Complex want) { return std::abs(got - want) / std::abs(want); };
    worst = std::max({worst, rel(d4, 2.0 * d * d * d * d * a * b), rel(d2, 2.0 * d * d * a * b),
                      rel(d2d, d * d * (alpha + beta) * a * b)});
  }
  return {worst <= 1e-12, "1000 trials, max rel err " + sci(worst)};
}

// 2. Classifier on the named equations and on perturbations of the canonical form.
Outcome classifier() {
  bool ok = true;
  std::string detail;
  EquationParams p;
  p.theta0 = Complex(0.27, 0.05);
  p.thetat = 0.19;
  p.theta_ast = Complex(0.33, -0.04);
  p.theta_star = 0.41;
  p.e1 = Complex(0.884, 0.1);
  p.e2 = Complex(0.21, -0.05);
  p.sigma4 = Complex(-0.006, 0.01);
  for (EquationName n : {EquationName::V, EquationName::III1, EquationName::III2, EquationName::III3, EquationName::VI}) {
    BilinearForm eq = build_named_equation(n, p);
    std::string how = "direct";
    if (!classify_normal_form(eq).accepted) {
      eq = gauge_absorb(eq).equation;
      how = "gauged";
    }
    const auto c = classify_normal_form(eq);
    const bool good = c.accepted && std::abs(c.scalar - 1.0) < 1e-12;
    ok = ok && good;
    detail += to_string(n) + ":" + (good ? "accept" : "WRONG") + "(" + how + ") ";
  }
  const auto canon = canonical_form();
  int rejected = 0;
  for (int k = 0; k < 20; ++k) {
    BilinearForm f = canon;
    const int i = static_cast<int>(uniform(0.0, 3.0));
    const int j = i + static_cast<int>(uniform(0.0, 5.0 - 2.0 * i));
    f.add(0, i, j, std::polar(uniform(0.05, 1.0), uniform(0.0, 6.28)));
    rejected += classify_normal_form(f).accepted ? 0 : 1;
  }
  ok = ok && rejected == 20;
  return {ok, detail + "| perturbations rejected " + std::to_string(rejected) + "/20"};
}

// 3. Divisor law.
Outcome divisor_law() {
  bool ok = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    const Complex s(uniform(-0.45, 0.45), uniform(-1.0, 1.0));
    for (const auto& p : {GridIndex(0, 0), GridIndex(2, 0), GridIndex(0, 2)}) ok = ok && divisor(p, s) == Complex(0.0);
    const double L4 = std::pow(small_divisor_L(s), 4);
    for (const auto& p : indices_up_to(10)) {
      if (is_free_index(p)) continue;
      const double v = std::abs(divisor(p, s));
      const double floor = std::max(L4, RecurrenceOptions{}.resonance_floor * std::pow(p.weight(), 4));
      ok = ok && v >= floor * (1.0 - 1e-12);
      worst_margin = std::min(worst_margin, v / floor);
    }
  }
  return {ok, "100 sigmas, exact zeros at seeds, min |divisor|/floor " + fmt("%.6f", worst_margin)};
}

// 4. Recurrence solutions have vanishing residual.
Outcome residual_check() {
  bool ok = true;
  std::string detail = "sigma=0.31+0.12i M=8:";
  for (const auto& ne : solvable_equations()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto f = solve_recurrence(ne.eq, random_seeds(), kSolveSigma, 8);
    const auto r = residual(ne.eq, f, 8);
    double worst = 0.0;
    for (const auto& [p, c] : r.terms())
      if (p.weight() <= 7) worst = std::max(worst, std::abs(c));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = ok && worst <= 1e-9 && secs < 10.0;
    detail += " " + ne.label + " " + sci(worst) + " (rel " + sci(worst / (f.max_abs() * f.max_abs())) + ")";
  }
  return {ok, detail};
}

// 5. Majorant dominance, radius and tail bound.
Outcome majorant_check() {
  bool ok = true;
  std::string detail;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& ne : solvable_equations()) {
    const auto seeds = random_seeds();
    const int M = 12, M2 = 24;
    const auto f = solve_recurrence(ne.eq, seeds, kSolveSigma, M2);
    const auto mc = majorant_constants(ne.eq, kSolveSigma, seeds);
    const auto b = majorant_coeffs(mc, M2);
    double slack = std::numeric_limits<double>::infinity();
    for (const auto& p : indices_up_to(M)) {
      if (p.weight() < 1) continue;
      auto it = b.find(p);
      const double bp = it == b.end() ? 0.0 : it->second;
      slack = std::min(slack, bp - std::abs(f.coeff(p)));
    }
    const double radius = radius_estimate(mc, 0.0).radius;
    const bool dom = slack >= -1e-12;
    bool tail_ok = false, cauchy = false;
    double observed = 0.0, bound = 0.0;
    if (radius > 0.0 && std::isfinite(radius)) {
      const double r = 0.5 * radius;
      const auto pt = majorant_point(kSolveSigma, r, 0.0);
      std::vector<double> by_weight(M2 + 1, 0.0);
      for (const auto& [p, c] : f.terms())
        by_weight[static_cast<std::size_t>(p.weight())] += std::abs(c) * std::pow(pt.X, p.m()) * std::pow(pt.Y, p.n());
      for (int w = M + 1; w <= M2; ++w) observed += by_weight[static_cast<std::size_t>(w)];
      bound = tail_bound(mc, b, r, M);
      tail_ok = observed <= bound;
      // successive tails shrink: sum_{w > k} decreases to 0 geometrically
      double tail_prev = observed;
      cauchy = true;
      for (int k = M + 1; k < M2; ++k) {
        const double tail = tail_prev - by_weight[static_cast<std::size_t>(k)];
        cauchy = cauchy && tail <= tail_prev;
        tail_prev = tail;
      }
    }
    ok = ok && dom && radius > 0.0 && tail_ok && cauchy;
    detail += ne.label + "[dom " + (dom ? "ok" : "FAIL") + " r=" + sci(radius) + " tail " + sci(observed) + "<=" +
              sci(bound) + "] ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < 30.0;
  return {ok, detail + fmt("%.2fs", secs)};
}

// 6. Support law.
Outcome support_law() {
  bool ok = true;
  std::string detail;
  for (const auto& ne : solvable_equations()) {
    const auto f = solve_recurrence(ne.eq, random_seeds(), kSolveSigma, 10);
    const auto prof = support_profile(f, 1e-10);
    ok = ok && prof.below_abs_x.empty();
    detail += ne.label + ":" + std::to_string(prof.below_abs_x.size()) + " ";
    if (prof.below_x_squared.empty()) {
      info("support " + ne.label + ": y >= x^2 holds through weight 10");
    } else {
      std::string pts;
      for (const auto& p : prof.below_x_squared) pts += p.to_string() + " ";
      info("support " + ne.label + ": y >= x^2 violated at " + std::to_string(prof.below_x_squared.size()) +
           " points: " + pts);
    }
  }
  return {ok, "points with y < |x| per equation: " + detail};
}

void print_table(const VIFit& fit) {
  std::printf("       residual table (%s): index value used\n", to_string(fit.convention).c_str());
  for (const auto& row : fit.table)
    std::printf("       %-10s %+.6e %+.6e %s\n", row.index.to_string().c_str(), row.value.real(), row.value.imag(),
                row.used_in_fit ? "fit" : "");
}

// 7. Combinatorial P_VI series against the bilinear equation.
Outcome vi_cross_validation() {
  const ThetaVI th{0.23, 0.37, 0.41, 0.29};
  const Complex sigma = 0.17, eta = 0.4;
  const int M = 6;

  const auto full = fit_vi_scalars(th, sigma, eta, M);
  for (const auto& f : full.fits)
    info("full Fourier sum |n|<=" + std::to_string(default_n_range(M)) + " " + to_string(f.convention) +
         ": max rel residual " + sci(f.max_rel_residual));
  const auto& w = full.winner();
  const auto chk = cross_check_vi(vi_f_series(th, sigma, eta, w.convention, M, default_n_range(M)), w, M);
  info("full Fourier sum winner " + to_string(w.convention) + ": e1=" + fmt("%.12g", w.e1.real()) +
       " e2=" + fmt("%.12g", w.e2.real()) + " sigma4=" + fmt("%.12g", w.sigma4.real()) +
       ", recurrence reproduces it to rel " + sci(chk.max_rel_difference));

  const auto single = fit_vi_scalars(th, sigma, eta, M, 0);
  std::string detail = "n=0 block, M=6:";
  for (const auto& f : single.fits) detail += " " + to_string(f.convention) + " " + sci(f.max_rel_residual);
  const bool ok = single.winner().max_rel_residual <= 1e-8;
  if (!ok) {
    detail += " (all conventions above 1e-8)";
    for (const auto& f : single.fits) print_table(f);
  }
  return {ok, detail};
}

// 8. Partition counts.
Outcome partition_counts() {
  std::vector<long long> euler(41, 0);
  euler[0] = 1;
  for (int k = 1; k <= 40; ++k)
    for (int j = 1;; ++j) {
      const int g1 = j * (3 * j - 1) / 2, g2 = j * (3 * j + 1) / 2;
      if (g1 > k) break;
      const long long sign = j % 2 ? 1 : -1;
      euler[static_cast<std::size_t>(k)] += sign * euler[static_cast<std::size_t>(k - g1)];
      if (g2 <= k) euler[static_cast<std::size_t>(k)] += sign * euler[static_cast<std::size_t>(k - g2)];
    }
  bool ok = euler[20] == 627;
  for (int k = 0; k <= 40; ++k) ok = ok && static_cast<long long>(partitions_of(k).size()) == euler[static_cast<std::size_t>(k)];
  for (int w = 0; w <= 16; ++w) {
    long long want = 0;
    for (int a = 0; a <= w; ++a) want += euler[static_cast<std::size_t>(a)] * euler[static_cast<std::size_t>(w - a)];
    ok = ok && static_cast<long long>(pairs_of_weight(w).size()) == want;
  }
  return {ok, "p(k) for k<=40 (p(20)=" + std::to_string(partitions_of(20).size()) + ", p(40)=" +
                  std::to_string(euler[40]) + "), pair counts for w<=16"};
}

// 9. sigma outside the strip.
Outcome sigma_normalization() {
  const Complex sigma = 2.3;
  const auto [reduced, k] = normalize_sigma(sigma);
  const auto eq = build_named_equation(EquationName::III3, {});
  // 0.3 is resonant from weight 4 on (divisor at (0,4) vanishes since 10 sigma = 3),
  // so the comparison stops at weight 3.
  const auto f = solve_recurrence(eq, {1.0, Complex(0.4, 0.1), Complex(-0.3, 0.2)}, reduced, 3);
  try {
    solve_recurrence(eq, {1.0, Complex(0.4, 0.1), Complex(-0.3, 0.2)}, reduced, 4);
  } catch (const Error& e) {
    info(std::string("sigma=0.3 at weight 4: ") + e.what());
  }
  // (exponent, coefficient) pairs from the reduced grid and from direct
  // (sigma + x)^2 + y bookkeeping with x shifted by the reduction.
  std::vector<std::pair<Complex, Complex>> grid, direct;
  for (const auto& [p, c] : f.terms()) {
    grid.emplace_back(f.exponent(p), c);
    const GilIndex g = gil_from_grid(p);
    const Complex xs = sigma + static_cast<double>(g.fourier_m - k);
    direct.emplace_back(xs * xs + static_cast<double>(g.level_n), c);
  }
  const auto by_exponent = [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.second.real() < b.second.real();
  };
  std::sort(grid.begin(), grid.end(), by_exponent);
  std::sort(direct.begin(), direct.end(), by_exponent);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max({worst, std::abs(grid[i].first - direct[i].first), std::abs(grid[i].second - direct[i].second)});

  BlockSpec a{{Complex(0.1, 0.2), 0.3, Complex(0.25, -0.1), 0.15}, 0.3, 0.4, ConventionFlag::signed_}, b = a;
  b.sigma = sigma;
  const auto ta = tau_vi_series(a, 2, 5), tb = tau_vi_series(b, 2, 5);
  double tau_diff = 0.0;
  for (const auto& p : indices_up_to(5)) tau_diff = std::max(tau_diff, std::abs(ta.coeff(p) - tb.coeff(p)));
  const bool ok = k == 2 && std::abs(reduced - 0.3) < 1e-14 && worst <= 1e-10 && tau_diff <= 1e-10;
  return {ok, "sigma=2.3 -> " + fmt("%.15g", reduced.real()) + " shift " + std::to_string(k) + ", " +
                  std::to_string(grid.size()) + " coefficients, max diff " + sci(worst) + ", tau diff " + sci(tau_diff)};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc == 3 && std::string(argv[1]) == "--criterion") only = std::atoi(argv[2]);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Hirota closed forms", hirota_closed_forms},
      {"normal-form classifier", classifier},
      {"divisor law", divisor_law},
      {"solver residual", residual_check},
      {"majorant dominance and tail", majorant_check},
      {"support law", support_law},
      {"P_VI combinatorial cross-validation", vi_cross_validation},
      {"partition counts", partition_counts},
      {"sigma normalization", sigma_normalization},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const Error& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
