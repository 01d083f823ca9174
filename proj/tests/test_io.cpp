#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace painleve;
using io::json;

TEST(Io, ComplexParsing) {
  EXPECT_EQ(io::complex_from_json(json(1.5), "x"), Complex(1.5));
  EXPECT_EQ(io::complex_from_json(json::array({1.0, -2.0}), "x"), Complex(1.0, -2.0));
  EXPECT_THROW(io::complex_from_json(json("1"), "x"), Error);
  EXPECT_THROW(io::complex_from_json(json::array({1.0}), "x"), Error);
}

TEST(Io, SeriesRoundTrip) {
  const auto f = testutil::random_series(Complex(0.2, -0.1), 3, Complex(0.05, 0.0));
  const auto g = io::series_from_json(io::series_to_json(f));
  EXPECT_EQ(g.sigma(), f.sigma());
  EXPECT_EQ(g.offset(), f.offset());
  EXPECT_EQ(g.max_weight_x2(), f.max_weight_x2());
  ASSERT_EQ(g.size(), f.size());
  for (const auto& [p, c] : f.terms()) EXPECT_EQ(g.coeff(p), c);
  // round trip through text as well
  const auto h = io::series_from_json(json::parse(io::series_to_json(f).dump()));
  for (const auto& [p, c] : f.terms()) EXPECT_EQ(h.coeff(p), c);
}

TEST(Io, SeriesRejectsUnknownKeysAndBadIndices) {
  auto j = io::series_to_json(make_series(0.2, {{GridIndex(0, 0), 1.0}}, 2));
  j["extra"] = 1;
  EXPECT_THROW(io::series_from_json(j), Error);
  auto k = io::series_to_json(make_series(0.2, {{GridIndex(0, 0), 1.0}}, 2));
  k["terms"].push_back({{"m_x2", 1}, {"n_x2", 0}, {"re", 1.0}, {"im", 0.0}});
  EXPECT_THROW(io::series_from_json(k), Error);
}

TEST(Io, SeriesCsv) {
  const auto f = make_series(0.2, {{GridIndex(0, 0), Complex(1.0, 0.5)}, {GridIndex(1, 1), 0.25}}, 2);
  EXPECT_EQ(io::series_to_csv(f), "m_x2,n_x2,re,im\n0,0,1,0.5\n1,1,0.25,0\n");
}

TEST(Io, FormRoundTripAndDerivativeInput) {
  const auto eq = build_named_equation(EquationName::III3, {});
  const auto back = io::form_from_json(io::form_to_json(eq));
  EXPECT_EQ(back.term_map(), eq.term_map());

  json ddt = {{"terms", json::array()}};
  for (const auto& t : to_ddt_terms(canonical_form()))
    ddt["terms"].push_back({{"N", t.t_power}, {"K1", t.K1}, {"K2", t.K2}, {"re", t.coeff.real()}});
  EXPECT_EQ(io::form_from_json(ddt).term_map(), canonical_form().term_map());

  json mixed = {{"terms", json::array({{{"N", 0}, {"i", 1}, {"K1", 1}, {"re", 1.0}}})}};
  EXPECT_THROW(io::form_from_json(mixed), Error);
  json unknown = {{"terms", json::array()}, {"kind", "x"}};
  EXPECT_THROW(io::form_from_json(unknown), Error);
}

TEST(Io, ClassificationJson) {
  const auto j = io::classification_to_json(classify_normal_form(canonical_form()));
  EXPECT_EQ(j["verdict"], "accept");
  EXPECT_EQ(j["scalar"][0], 1.0);
  BilinearForm bad = canonical_form();
  bad.add(0, 0, 0, 1.0);
  const auto r = io::classification_to_json(classify_normal_form(bad));
  EXPECT_EQ(r["verdict"], "reject");
  EXPECT_FALSE(r.contains("scalar"));
}

TEST(Io, DiagramRoundTrip) {
  const YoungDiagram d({3, 1, 1});
  EXPECT_EQ(io::diagram_from_json(io::diagram_to_json(d)), d);
  EXPECT_THROW(io::diagram_from_json(json::array({1, 2})), Error);
  EXPECT_THROW(io::diagram_from_json(json("3,1")), Error);
}
