#pragma once

#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bilinear.hpp"
#include "error.hpp"
#include "formal_series.hpp"
#include "partitions.hpp"
#include "recurrence.hpp"

namespace painleve::io {

using json = nlohmann::ordered_json;

inline json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

/// [re, im] or a bare number.
inline Complex complex_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(ErrorCode::validation, what + ": expected a number or [re, im]");
}

inline void require_finite(Complex c, const std::string& what) {
  require(std::isfinite(c.real()) && std::isfinite(c.imag()), what + " must be finite");
}

inline json series_to_json(const FormalSeries& f) {
  json j;
  j["sigma"] = complex_to_json(f.sigma());
  j["max_weight_x2"] = f.max_weight_x2();
  if (f.order() != 1) j["order"] = f.order();
  if (f.offset() != Complex{}) j["offset"] = complex_to_json(f.offset());
  json terms = json::array();
  for (const auto& [p, c] : f.terms())
    terms.push_back({{"m_x2", p.two_m()}, {"n_x2", p.two_n()}, {"re", c.real()}, {"im", c.imag()}});
  j["terms"] = std::move(terms);
  return j;
}

inline FormalSeries series_from_json(const json& j) {
  require(j.is_object(), "series JSON must be an object");
  for (const auto& [k, v] : j.items())
    require(k == "sigma" || k == "max_weight_x2" || k == "terms" || k == "order" || k == "offset",
            "unknown series field '" + k + "'");
  require(j.contains("sigma") && j.contains("max_weight_x2") && j.contains("terms"),
          "series JSON needs sigma, max_weight_x2, terms");
  const Complex sigma = complex_from_json(j["sigma"], "sigma");
  const int order = j.contains("order") ? j["order"].get<int>() : 1;
  const Complex offset = j.contains("offset") ? complex_from_json(j["offset"], "offset") : Complex{};
  std::vector<std::pair<GridIndex, Complex>> entries;
  for (const auto& t : j["terms"]) {
    require(t.contains("m_x2") && t.contains("n_x2") && t.contains("re") && t.contains("im"),
            "series term needs m_x2, n_x2, re, im");
    entries.emplace_back(GridIndex(t["m_x2"].get<int>(), t["n_x2"].get<int>()),
                         Complex(t["re"].get<double>(), t["im"].get<double>()));
  }
  return make_series(sigma, entries, j["max_weight_x2"].get<int>(), order, offset);
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline std::string series_to_csv(const FormalSeries& f) {
  std::string out = "m_x2,n_x2,re,im\n";
  for (const auto& [p, c] : f.terms())
    out += std::to_string(p.two_m()) + "," + std::to_string(p.two_n()) + "," + format_double(c.real()) + "," +
           format_double(c.imag()) + "\n";
  return out;
}

inline json form_to_json(const BilinearForm& form) {
  json j;
  j["name"] = form.name() ? json(*form.name()) : json(nullptr);
  json terms = json::array();
  for (const auto& t : form.terms())
    terms.push_back({{"N", t.t_power}, {"i", t.left_order}, {"j", t.right_order}, {"re", t.coeff.real()},
                     {"im", t.coeff.imag()}});
  j["terms"] = std::move(terms);
  return j;
}

/// Accepts delta-form terms {N,i,j,re,im} or derivative-form terms {N,K1,K2,re,im}.
inline BilinearForm form_from_json(const json& j) {
  require(j.is_object() && j.contains("terms"), "bilinear form JSON needs a terms array");
  for (const auto& [k, v] : j.items()) require(k == "name" || k == "terms", "unknown form field '" + k + "'");
  std::optional<std::string> name;
  if (j.contains("name") && !j["name"].is_null()) name = j["name"].get<std::string>();
  BilinearForm delta_part(name);
  std::vector<DdtTerm> ddt;
  for (const auto& t : j["terms"]) {
    for (const auto& [k, v] : t.items())
      require(k == "N" || k == "i" || k == "j" || k == "K1" || k == "K2" || k == "re" || k == "im",
              "unknown term field '" + k + "'");
    const Complex c(t.value("re", 0.0), t.value("im", 0.0));
    require_finite(c, "term coefficient");
    const int N = t.value("N", 0);
    if (t.contains("K1") || t.contains("K2")) {
      require(!t.contains("i") && !t.contains("j"), "a term cannot mix i/j with K1/K2");
      ddt.push_back({N, t.value("K1", 0), t.value("K2", 0), c});
    } else {
      delta_part.add(N, t.value("i", 0), t.value("j", 0), c);
    }
  }
  return delta_part + from_ddt_terms(ddt);
}

inline json classification_to_json(const Classification& c) {
  json j;
  j["verdict"] = c.accepted ? "accept" : "reject";
  if (c.accepted) j["scalar"] = complex_to_json(c.scalar);
  if (!c.reason.empty()) j["reason"] = c.reason;
  j["sum_rule_failures_delta"] = c.sum_rule_failures_delta;
  j["sum_rule_failures_ddt"] = c.sum_rule_failures_ddt;
  return j;
}

inline json radius_report(const MajorantConstants& mc, const RadiusEstimate& est,
                          const std::vector<GridIndex>& resonances) {
  json j;
  j["L"] = mc.L;
  j["R"] = mc.R;
  json A = json::array();
  int top = 0;
  for (const auto& [N, v] : mc.A) top = std::max(top, N);
  for (int N = 1; N <= top; ++N) A.push_back(mc.A_at(N));
  j["A"] = std::move(A);
  j["radius"] = std::isfinite(est.radius) ? json(est.radius) : json("inf");
  j["sector"] = est.sector_halfwidth;
  json res = json::array();
  for (const auto& p : resonances) res.push_back({p.two_m(), p.two_n()});
  j["resonances"] = std::move(res);
  j["witness"] = est.witness;
  return j;
}

inline json diagram_to_json(const YoungDiagram& d) { return json(d.rows()); }

inline YoungDiagram diagram_from_json(const json& j) {
  require(j.is_array(), "Young diagram JSON must be an integer array");
  return YoungDiagram(j.get<std::vector<int>>());
}

}  // namespace painleve::io
