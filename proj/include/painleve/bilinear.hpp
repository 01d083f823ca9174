#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "formal_series.hpp"
#include "operator_algebra.hpp"

namespace painleve {

/// One term  coeff * t^N (delta^i f)(delta^j f)  with i <= j.
struct BilinearTerm {
  int t_power = 0;
  int left_order = 0;
  int right_order = 0;
  Complex coeff{};
};

/// Term of a quadratic equation written with plain derivatives:
/// coeff * t^N * t^{K1+K2} f^{(K1)} f^{(K2)}.
struct DdtTerm {
  int t_power = 0;
  int K1 = 0;
  int K2 = 0;
  Complex coeff{};
};

/// Homogeneous quadratic differential expression in delta-form.
class BilinearForm {
 public:
  using Key = std::tuple<int, int, int>;  // (N, i, j), i <= j

  BilinearForm() = default;
  explicit BilinearForm(std::optional<std::string> name) : name_(std::move(name)) {}

  /// Accumulates c t^N (delta^i f)(delta^j f); the pair is stored with i <= j.
  void add(int N, int i, int j, Complex c) {
    require(N >= 0 && i >= 0 && j >= 0, "bilinear term orders must be nonnegative");
    if (i > j) std::swap(i, j);
    if (c == Complex{}) return;
    auto [it, inserted] = terms_.try_emplace(Key{N, i, j}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Complex{}) terms_.erase(it);
    }
  }
  void add(const BilinearTerm& t) { add(t.t_power, t.left_order, t.right_order, t.coeff); }

  Complex coeff(int N, int i, int j) const {
    if (i > j) std::swap(i, j);
    auto it = terms_.find(Key{N, i, j});
    return it == terms_.end() ? Complex{} : it->second;
  }

  std::vector<BilinearTerm> terms() const {
    std::vector<BilinearTerm> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_) out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), c});
    return out;
  }
  const std::map<Key, Complex>& term_map() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// The t^0 terms.
  BilinearForm lowest_part() const {
    BilinearForm out(name_);
    for (const auto& [k, c] : terms_)
      if (std::get<0>(k) == 0) out.terms_.emplace(k, c);
    return out;
  }

  int max_t_power() const {
    int m = 0;
    for (const auto& [k, c] : terms_) m = std::max(m, std::get<0>(k));
    return m;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  const std::optional<std::string>& name() const { return name_; }
  void set_name(std::optional<std::string> n) { name_ = std::move(n); }

  const std::vector<std::pair<std::string, Complex>>& parameters() const { return params_; }
  void set_parameter(const std::string& key, Complex v) { params_.emplace_back(key, v); }

  BilinearForm scaled(Complex s) const {
    BilinearForm out = *this;
    for (auto& [k, c] : out.terms_) c *= s;
    return out;
  }

  /// Sum over terms of both forms; metadata of the left operand is kept.
  friend BilinearForm operator+(BilinearForm a, const BilinearForm& b) {
    for (const auto& [k, c] : b.terms_) a.add(std::get<0>(k), std::get<1>(k), std::get<2>(k), c);
    return a;
  }

  /// Adds poly(t) * (L f)(R f) for normal-ordered operators L and R.
  void add_product(const std::vector<Complex>& poly, const Operator& left, const Operator& right) {
    for (std::size_t k = 0; k < poly.size(); ++k) {
      if (poly[k] == Complex{}) continue;
      for (const auto& [kl, cl] : left.terms())
        for (const auto& [kr, cr] : right.terms())
          add(static_cast<int>(k) + kl.first + kr.first, kl.second, kr.second,
              poly[k] * static_cast<double>(cl) * static_cast<double>(cr));
    }
  }

  /// Adds poly(t) * D_X^K (X^e f).f, the Hirota derivative with respect to the
  /// vector field X (delta for log t, or t(t-1) d/dt).
  void add_hirota(const std::vector<Complex>& poly, int K, const Operator& field, int extra = 0) {
    for (int i = 0; i <= K; ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      std::vector<Complex> scaled(poly);
      for (auto& c : scaled) c *= sign * static_cast<double>(binomial(K, i));
      add_product(scaled, field.pow(K - i + extra), field.pow(i));
    }
  }

  /// Drops coefficients with |c| <= rel_tol * max|c|.
  BilinearForm cleaned(double rel_tol) const {
    BilinearForm out = *this;
    const double cut = rel_tol * max_abs();
    std::erase_if(out.terms_, [cut](const auto& kv) { return std::abs(kv.second) <= cut; });
    return out;
  }

 private:
  std::optional<std::string> name_;
  std::vector<std::pair<std::string, Complex>> params_;
  std::map<Key, Complex> terms_;
};

/// D^4 f.f + D^2 f.f - 4 D^2 (delta f).f written out in delta-form.
inline BilinearForm canonical_form() {
  BilinearForm f(std::string("canonical"));
  f.add(0, 0, 4, 2.0);
  f.add(0, 1, 3, -8.0);
  f.add(0, 2, 2, 6.0);
  f.add(0, 0, 2, 2.0);
  f.add(0, 1, 1, -2.0);
  f.add(0, 0, 3, -4.0);
  f.add(0, 1, 2, 4.0);
  return f;
}

/// Converts an equation given with plain derivatives to delta-form via
/// t^K d^K/dt^K = delta (delta-1) ... (delta-K+1).
inline BilinearForm from_ddt_terms(const std::vector<DdtTerm>& terms, std::optional<std::string> name = std::nullopt) {
  BilinearForm out(std::move(name));
  for (const auto& t : terms) {
    require(t.t_power >= 0 && t.K1 >= 0 && t.K2 >= 0, "d/dt term orders must be nonnegative");
    const auto a = dtot_to_delta(t.K1);
    const auto b = dtot_to_delta(t.K2);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        if (a[i] != 0 && b[j] != 0)
          out.add(t.t_power, static_cast<int>(i), static_cast<int>(j), t.coeff * static_cast<double>(a[i] * b[j]));
  }
  return out;
}

/// Inverse of from_ddt_terms, with K1 <= K2 and merged duplicates.
inline std::vector<DdtTerm> to_ddt_terms(const BilinearForm& form) {
  std::map<std::tuple<int, int, int>, Complex> acc;
  for (const auto& t : form.terms()) {
    const auto a = delta_to_dtot(t.left_order);
    const auto b = delta_to_dtot(t.right_order);
    for (std::size_t K1 = 0; K1 < a.size(); ++K1)
      for (std::size_t K2 = 0; K2 < b.size(); ++K2) {
        if (a[K1] == 0 || b[K2] == 0) continue;
        int k1 = static_cast<int>(K1), k2 = static_cast<int>(K2);
        if (k1 > k2) std::swap(k1, k2);
        acc[{t.t_power, k1, k2}] += t.coeff * static_cast<double>(a[K1] * b[K2]);
      }
  }
  std::vector<DdtTerm> out;
  for (const auto& [k, c] : acc)
    if (c != Complex{}) out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), c});
  return out;
}

enum class EquationName { V, III1, III2, III3, VI };

inline std::string to_string(EquationName n) {
  switch (n) {
    case EquationName::V: return "V";
    case EquationName::III1: return "III1";
    case EquationName::III2: return "III2";
    case EquationName::III3: return "III3";
    case EquationName::VI: return "VI";
  }
  return "?";
}

inline EquationName parse_equation_name(const std::string& s) {
  if (s == "V") return EquationName::V;
  if (s == "III1") return EquationName::III1;
  if (s == "III2") return EquationName::III2;
  if (s == "III3") return EquationName::III3;
  if (s == "VI") return EquationName::VI;
  fail(ErrorCode::validation, "unknown equation name '" + s + "' (expected V, III1, III2, III3, VI)");
}

/// Parameters of the named equations. theta_ast is theta_* and theta_star is
/// theta_star (the two distinct symbols of the III'_1 Hamiltonian).
struct EquationParams {
  std::optional<Complex> theta0, thetat, theta1, thetainf;
  std::optional<Complex> theta_ast, theta_star;
  std::optional<Complex> e1, e2, sigma4;

  static Complex need(const std::optional<Complex>& v, const char* what) {
    if (!v) fail(ErrorCode::validation, std::string("missing parameter ") + what);
    return *v;
  }
};

/// v_1..v_4 of the P_V equation: theta_*/2 + theta_0, theta_*/2 - theta_0,
/// -theta_*/2 + theta_t, -theta_*/2 - theta_t.
inline std::vector<Complex> pv_v(Complex theta0, Complex thetat, Complex theta_ast) {
  return {0.5 * theta_ast + theta0, 0.5 * theta_ast - theta0, -0.5 * theta_ast + thetat, -0.5 * theta_ast - thetat};
}

/// Elementary symmetric polynomial e_k of the given values.
inline Complex elementary_symmetric(const std::vector<Complex>& v, int k) {
  std::vector<Complex> e(static_cast<std::size_t>(k) + 1, Complex{});
  e[0] = 1.0;
  for (const auto& x : v)
    for (int j = k; j >= 1; --j) e[static_cast<std::size_t>(j)] += x * e[static_cast<std::size_t>(j) - 1];
  return e[static_cast<std::size_t>(k)];
}

/// The tau-function bilinear equations, fully expanded to delta-form.
inline BilinearForm build_named_equation(EquationName name, const EquationParams& p) {
  BilinearForm eq(to_string(name));
  const Operator delta = Operator::delta();
  switch (name) {
    case EquationName::V: {
      const Complex th0 = EquationParams::need(p.theta0, "theta0");
      const Complex tht = EquationParams::need(p.thetat, "thetat");
      const Complex thast = EquationParams::need(p.theta_ast, "theta_ast");
      const auto v = pv_v(th0, tht, thast);
      const Complex s2 = elementary_symmetric(v, 2);
      const Complex s3 = elementary_symmetric(v, 3);
      eq.add_hirota({1.0}, 4, delta);
      eq.add_hirota({4.0 * s2 + 1.0, 0.0, -1.0}, 2, delta);
      eq.add_hirota({-4.0}, 2, delta, 1);
      eq.add(1, 0, 0, -4.0 * s3);
      eq.set_parameter("theta0", th0);
      eq.set_parameter("thetat", tht);
      eq.set_parameter("theta_ast", thast);
      eq.set_parameter("sigma2", s2);
      eq.set_parameter("sigma3", s3);
      break;
    }
    case EquationName::III1: {
      const Complex thstar = EquationParams::need(p.theta_star, "theta_star");
      const Complex thast = EquationParams::need(p.theta_ast, "theta_ast");
      eq = eq + canonical_form();
      eq.add(1, 0, 0, 4.0 * thstar * thast);
      eq.add(2, 0, 0, 1.0);
      eq.set_parameter("theta_star", thstar);
      eq.set_parameter("theta_ast", thast);
      break;
    }
    case EquationName::III2: {
      const Complex thast = EquationParams::need(p.theta_ast, "theta_ast");
      eq = eq + canonical_form();
      eq.add(1, 0, 0, 4.0 * thast);
      eq.set_parameter("theta_ast", thast);
      break;
    }
    case EquationName::III3: {
      eq = eq + canonical_form();
      eq.add(1, 0, 0, 4.0);
      break;
    }
    case EquationName::VI: {
      const Complex e1 = EquationParams::need(p.e1, "e1");
      const Complex e2 = EquationParams::need(p.e2, "e2");
      const Complex s4 = EquationParams::need(p.sigma4, "sigma4");
      const Operator dbar = Operator::dbar();
      eq.add_hirota({1.0}, 4, dbar);
      eq.add_hirota({1.0 - e1, -2.0, 2.0}, 2, dbar);
      eq.add_hirota({4.0, -8.0}, 2, dbar, 1);
      // -t(t-1)(2 sigma4 (2t-1) + e2) f.f
      eq.add_product({0.0, e2 - 2.0 * s4, 6.0 * s4 - e2, -4.0 * s4}, Operator::identity(), Operator::identity());
      eq.add_product({0.0, -4.0, 4.0}, dbar, dbar);
      for (const auto& [k, v] : std::vector<std::pair<const char*, const std::optional<Complex>*>>{
               {"theta0", &p.theta0}, {"thetat", &p.thetat}, {"theta1", &p.theta1}, {"thetainf", &p.thetainf}})
        if (*v) eq.set_parameter(k, **v);
      eq.set_parameter("e1", e1);
      eq.set_parameter("e2", e2);
      eq.set_parameter("sigma4", s4);
      break;
    }
  }
  eq.set_name(to_string(name));
  return eq;
}

/// Outcome of the lowest-degree-part test.
struct Classification {
  bool accepted = false;
  Complex scalar{};
  std::string reason;
  /// Failing sum rules sum_{i+j=K} alpha_{0,i,j} = 0 in delta coordinates.
  std::vector<std::string> sum_rule_failures_delta;
  /// The same sum rules evaluated on t^{K1+K2} d^{K1} f d^{K2} f coordinates (informational).
  std::vector<std::string> sum_rule_failures_ddt;
};

namespace detail {

inline std::string format_complex(Complex c) {
  std::ostringstream os;
  os.precision(12);
  os << c.real();
  if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

template <typename Coeffs>
std::vector<std::string> sum_rule_failures(const Coeffs& coeffs, double tol) {
  std::map<int, Complex> sums;
  std::map<int, std::string> labels;
  for (const auto& [ij, c] : coeffs) {
    const int K = ij.first + ij.second;
    sums[K] += c;
    auto& lab = labels[K];
    if (!lab.empty()) lab += "+";
    lab += "alpha_{0," + std::to_string(ij.first) + "," + std::to_string(ij.second) + "}";
  }
  std::vector<std::string> out;
  for (const auto& [K, s] : sums)
    if (std::abs(s) > tol) out.push_back("K=" + std::to_string(K) + ": " + labels[K] + " = " + format_complex(s));
  return out;
}

}  // namespace detail

/// Accepts iff the t^0 part of `eq` is c * canonical_form() for some c != 0.
///
/// Comparison uses a relative tolerance against the largest lowest-part
/// coefficient; integer-valued inputs compare exactly in practice.
inline Classification classify_normal_form(const BilinearForm& eq, double rel_tol = 1e-12) {
  Classification out;
  const BilinearForm low = eq.lowest_part();
  if (low.empty()) {
    out.reason = "no lowest-degree part";
    return out;
  }
  const double tol = rel_tol * low.max_abs();

  std::map<std::pair<int, int>, Complex> delta_coeffs;
  for (const auto& t : low.terms()) delta_coeffs[{t.left_order, t.right_order}] = t.coeff;
  out.sum_rule_failures_delta = detail::sum_rule_failures(delta_coeffs, tol);
  std::map<std::pair<int, int>, Complex> ddt_coeffs;
  for (const auto& t : to_ddt_terms(low)) ddt_coeffs[{t.K1, t.K2}] = t.coeff;
  out.sum_rule_failures_ddt = detail::sum_rule_failures(ddt_coeffs, tol);

  const BilinearForm canon = canonical_form();
  const Complex c = low.coeff(0, 0, 4) / 2.0;
  if (std::abs(c) <= tol) {
    out.reason = "coefficient of f.delta^4 f vanishes; lowest part is not a multiple of the canonical form";
    return out;
  }
  std::map<BilinearForm::Key, bool> keys;
  for (const auto& [k, v] : low.term_map()) keys[k] = true;
  for (const auto& [k, v] : canon.term_map()) keys[k] = true;
  for (const auto& [k, unused] : keys) {
    const auto [N, i, j] = k;
    const Complex expected = c * canon.coeff(N, i, j);
    const Complex got = low.coeff(N, i, j);
    if (std::abs(got - expected) > tol) {
      out.reason = "term (delta^" + std::to_string(i) + " f)(delta^" + std::to_string(j) + " f): expected " +
                   detail::format_complex(expected) + ", got " + detail::format_complex(got);
      return out;
    }
  }
  out.accepted = true;
  out.scalar = c;
  return out;
}

/// Substitutes delta -> delta + a in every term, i.e. rewrites the equation
/// for g where f = t^a g (an overall t^{2a} is dropped).
inline BilinearForm substitute_delta_shift(const BilinearForm& eq, Complex a) {
  BilinearForm out(eq.name());
  for (const auto& [k, v] : eq.parameters()) out.set_parameter(k, v);
  for (const auto& t : eq.terms()) {
    for (int i2 = 0; i2 <= t.left_order; ++i2) {
      const Complex li = static_cast<double>(binomial(t.left_order, i2)) * std::pow(a, t.left_order - i2);
      for (int j2 = 0; j2 <= t.right_order; ++j2) {
        const Complex rj = static_cast<double>(binomial(t.right_order, j2)) * std::pow(a, t.right_order - j2);
        out.add(t.t_power, i2, j2, t.coeff * li * rj);
      }
    }
  }
  return out;
}

struct GaugeResult {
  BilinearForm equation;
  Complex alpha{};
};

/// Removes the alpha D^2 f.f excess from a lowest part of the form
/// c (D^4 + (1+alpha) D^2 - 4 D^2(delta .)) via f = t^{alpha/4} g.
inline GaugeResult gauge_absorb(const BilinearForm& eq, double rel_tol = 1e-12) {
  const BilinearForm low = eq.lowest_part();
  require(!low.empty(), "gauge_absorb: equation has no lowest-degree part");
  const double tol = rel_tol * low.max_abs();
  const Complex c = low.coeff(0, 0, 4) / 2.0;
  if (std::abs(c) <= tol) fail(ErrorCode::validation, "gauge_absorb: lowest part lacks the D^4 block");
  const Complex alpha = (low.coeff(0, 0, 2) / c - 2.0) / 2.0;

  BilinearForm shape = canonical_form().scaled(c);
  shape.add(0, 0, 2, 2.0 * alpha * c);
  shape.add(0, 1, 1, -2.0 * alpha * c);
  std::map<BilinearForm::Key, bool> keys;
  for (const auto& [k, v] : low.term_map()) keys[k] = true;
  for (const auto& [k, v] : shape.term_map()) keys[k] = true;
  for (const auto& [k, unused] : keys) {
    const auto [N, i, j] = k;
    if (std::abs(low.coeff(N, i, j) - shape.coeff(N, i, j)) > tol)
      fail(ErrorCode::validation, "gauge_absorb: lowest part is not canonical plus a multiple of D^2 (term (" +
                                      std::to_string(i) + "," + std::to_string(j) + ") differs)");
  }
  if (alpha == Complex{}) return {eq, alpha};
  BilinearForm out = substitute_delta_shift(eq, alpha / 4.0).cleaned(1e-14);
  return {out, alpha};
}

/// Coefficients of the left side of `eq` with f substituted, through weight M.
/// The result is a product series (order 2 in sigma^2).
inline FormalSeries residual(const BilinearForm& eq, const FormalSeries& f, int M) {
  require(M >= 0, "residual weight must be nonnegative");
  const FormalSeries ft = f.truncated(2 * M);
  FormalSeries acc(ft.sigma(), 2 * M, 2 * ft.order(), 2.0 * ft.offset());
  std::map<int, FormalSeries> powers;
  auto power = [&](int k) -> const FormalSeries& {
    auto it = powers.find(k);
    if (it == powers.end()) it = powers.emplace(k, delta_apply(ft, k)).first;
    return it->second;
  };
  for (const auto& t : eq.terms()) {
    if (t.t_power > M) continue;
    const FormalSeries prod = shift_by_tpow(multiply(power(t.left_order), power(t.right_order)), t.t_power);
    acc = add_scaled(acc, prod, t.coeff);
  }
  return acc;
}

}  // namespace painleve
