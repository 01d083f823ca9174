#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "test_util.hpp"

using namespace painleve;
using testutil::random_complex;
using testutil::rel_err;

TEST(GridIndex, RejectsMixedParityAndNegatives) {
  EXPECT_THROW(GridIndex(1, 0), Error);
  EXPECT_THROW(GridIndex(-2, 0), Error);
  EXPECT_NO_THROW(GridIndex(1, 1));
  EXPECT_EQ(GridIndex(1, 3).weight(), 2);
  EXPECT_EQ(GridIndex(1, 1).to_string(), "(1/2,1/2)");
}

TEST(GridIndex, ExponentShift) {
  const Complex s(0.21, -0.3);
  EXPECT_LT(std::abs(GridIndex(2, 0).exponent_shift(s) - (2.0 * s + 1.0)), 1e-15);
  EXPECT_LT(std::abs(GridIndex(1, 1).exponent_shift(s) - 1.0), 1e-15);
}

TEST(GridIndex, OrderingIsByWeightThenM) {
  EXPECT_LT(GridIndex(2, 0), GridIndex(0, 4));
  EXPECT_LT(GridIndex(0, 2), GridIndex(1, 1));
  EXPECT_EQ(indices_of_weight(2).size(), 5u);
  EXPECT_EQ(indices_up_to(3).size(), 1u + 3u + 5u + 7u);
}

TEST(GilBridge, Examples) {
  EXPECT_EQ(grid_from_gil({0, 0}), GridIndex(0, 0));
  EXPECT_EQ(grid_from_gil({1, 0}), GridIndex(2, 0));
  EXPECT_EQ(grid_from_gil({-1, 0}), GridIndex(0, 2));
  EXPECT_EQ(grid_from_gil({0, 1}), GridIndex(1, 1));
  EXPECT_THROW(grid_from_gil({0, -1}), Error);
}

TEST(GilBridge, InjectiveAndInverse) {
  std::set<GridIndex> seen;
  for (int y = 0; y <= 20; ++y)
    for (int x = -6; x <= 6; ++x) {
      const GilIndex g{x, y};
      const GridIndex p = grid_from_gil(g);
      EXPECT_TRUE(seen.insert(p).second);
      EXPECT_EQ(gil_from_grid(p), g);
    }
}

TEST(GilBridge, ExponentIdentity) {
  const Complex s(0.13, 0.4);
  for (int x = -3; x <= 3; ++x)
    for (int y = 0; y <= 5; ++y) {
      const Complex want = (s + static_cast<double>(x)) * (s + static_cast<double>(x)) + static_cast<double>(y);
      const Complex got = s * s + grid_from_gil({x, y}).exponent_shift(s);
      EXPECT_LT(std::abs(got - want), 1e-13);
    }
}

TEST(FormalSeries, MakeSeriesValidation) {
  EXPECT_THROW(make_series(0.2, {{GridIndex(0, 0), 1.0}, {GridIndex(0, 0), 2.0}}, 4), Error);
  EXPECT_THROW(make_series(0.2, {{GridIndex(4, 2), 1.0}}, 4), Error);
  const auto f = make_series(0.2, {{GridIndex(0, 0), 1.0}, {GridIndex(1, 1), 0.0}}, 4);
  EXPECT_EQ(f.size(), 1u);  // exact zeros are not stored
}

TEST(FormalSeries, HirotaClosedForms) {
  for (int trial = 0; trial < 200; ++trial) {
    const Complex a = random_complex(), b = random_complex();
    const Complex alpha = random_complex(2.0), beta = random_complex(2.0);
    // a t^alpha and b t^beta as two order-1 series sharing offset 0 on a
    // single-point grid: encode each exponent in the offset instead.
    FormalSeries fa(0.0, 0, 1, alpha), fb(0.0, 0, 1, beta);
    fa.set(GridIndex(0, 0), a);
    fb.set(GridIndex(0, 0), b);
    // D^N (fa + fb).(fa + fb) = 2 * cross term, since self-pairings vanish.
    auto cross = [&](int N, bool delta_left) {
      FormalSeries l = delta_left ? delta_apply(fa, 1) : fa;
      FormalSeries r = delta_left ? delta_apply(fb, 1) : fb;
      const Complex ab = hirota_pair(N, l, fb).coeff(GridIndex(0, 0));
      const Complex ba = hirota_pair(N, r, fa).coeff(GridIndex(0, 0));
      return ab + ba;
    };
    const Complex d = alpha - beta;
    EXPECT_LT(rel_err(cross(4, false), 2.0 * std::pow(d, 4) * a * b), 1e-12);
    EXPECT_LT(rel_err(cross(2, false), 2.0 * d * d * a * b), 1e-12);
    EXPECT_LT(rel_err(cross(2, true), d * d * (alpha + beta) * a * b), 1e-12);
  }
}

TEST(FormalSeries, HirotaBilinearAndSymmetric) {
  const Complex s(0.17, 0.05);
  const auto f1 = testutil::random_series(s, 3), f2 = testutil::random_series(s, 3), g = testutil::random_series(s, 3);
  for (int N : {2, 3, 4}) {
    const auto lhs = hirota_pair(N, add_scaled(f1, f2), g);
    const auto rhs = add_scaled(hirota_pair(N, f1, g), hirota_pair(N, f2, g));
    for (const auto& p : indices_up_to(3)) EXPECT_LT(std::abs(lhs.coeff(p) - rhs.coeff(p)), 1e-10);
    if (N % 2 == 0) {
      const auto sym = hirota_pair(N, g, f1);
      const auto fwd = hirota_pair(N, f1, g);
      for (const auto& p : indices_up_to(3)) EXPECT_LT(std::abs(sym.coeff(p) - fwd.coeff(p)), 1e-10);
    }
  }
}

TEST(FormalSeries, DeltaCommutesWithShift) {
  const Complex s(-0.22, 0.31);
  const auto f = testutil::random_series(s, 3, Complex(0.1, 0.2));
  for (int N : {1, 2}) {
    const auto lhs = delta_apply(shift_by_tpow(f, N), 1);
    const auto shifted = shift_by_tpow(f, N);
    const auto rhs = add_scaled(shift_by_tpow(delta_apply(f, 1), N), shifted, static_cast<double>(N));
    for (const auto& [p, c] : lhs.terms()) EXPECT_LT(std::abs(c - rhs.coeff(p)), 1e-12);
  }
}

TEST(FormalSeries, MultiplyTruncatesToSmallerBound) {
  const Complex s(0.1, 0.0);
  const auto f = testutil::random_series(s, 4), g = testutil::random_series(s, 2);
  const auto h = multiply(f, g);
  EXPECT_EQ(h.max_weight_x2(), 4);
  EXPECT_EQ(h.order(), 2);
  for (const auto& [p, c] : h.terms()) EXPECT_LE(p.weight(), 2);
}

TEST(FormalSeries, EvalPartialBranch) {
  const Complex s(0.2, 0.1);
  auto f = make_series(s, {{GridIndex(0, 0), 1.0}}, 0);
  const Complex t = std::polar(0.5, 0.3);
  const Complex want = std::exp(s * s * Complex(std::log(0.5), 0.3));
  EXPECT_LT(rel_err(eval_partial(f, t, 0.3), want), 1e-14);
  const Complex other = eval_partial(f, t, 0.3 + 2.0 * std::numbers::pi);
  EXPECT_GT(std::abs(other - want), 1e-6);  // a different sheet
  EXPECT_THROW(eval_partial(f, t, 1.0), Error);
  EXPECT_THROW(eval_partial(f, 0.0, 0.0), Error);
}

TEST(FormalSeries, PartialSumsByWeight) {
  const Complex s(0.2, 0.0);
  auto f = make_series(s, {{GridIndex(0, 0), 1.0}, {GridIndex(1, 1), 2.0}, {GridIndex(2, 2), 3.0}}, 4);
  const auto sums = partial_sums_by_weight(f, 0.5, 0.0);
  ASSERT_EQ(sums.size(), 3u);
  const double base = std::pow(0.5, 0.04);
  EXPECT_NEAR(sums[0].real(), base, 1e-14);
  EXPECT_NEAR(sums[1].real(), base * (1.0 + 2.0 * 0.5), 1e-14);
  EXPECT_NEAR(sums[2].real(), base * (1.0 + 1.0 + 3.0 * 0.25), 1e-14);
}
