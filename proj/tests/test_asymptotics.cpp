#include "nlwave/asymptotics.hpp"
#include "nlwave/oracles.hpp"

#include <gtest/gtest.h>

using namespace nlwave;

namespace {
const Grid kDefault(400.0, std::size_t{1} << 17);
}

TEST(DecayFit, PurePowerTwo) {
  const auto f = GridFunction::sample(kDefault, [](double x) { return std::pow(japanese(x), -2.0); });
  const auto fit = fit_algebraic_decay(f);
  EXPECT_NEAR(fit.rho, 2.0, 0.02);
  EXPECT_FALSE(fit.low_confidence);
  EXPECT_FALSE(fit.super_algebraic);
  EXPECT_DOUBLE_EQ(fit.window.lo, 50.0);
  EXPECT_DOUBLE_EQ(fit.window.hi, 200.0);
  EXPECT_EQ(fit.log_x.size(), fit.nodes);
}

TEST(DecayFit, LcBothTails) {
  const auto u = lc_solution(LCParams{-1.0, 1.0, 1.0}, kDefault);
  for (Side s : {Side::Left, Side::Right, Side::Both}) {
    const auto fit = fit_algebraic_decay(u, Interval{50.0, 200.0}, s);
    EXPECT_NEAR(fit.rho, 1.0, 0.05) << side_name(s);
    EXPECT_GE(fit.r_squared, 0.99);
  }
}

TEST(DecayFit, BoTail) {
  const auto fit = fit_algebraic_decay(bo_soliton(BOParams{1.0}, kDefault), std::nullopt, Side::Both);
  EXPECT_NEAR(fit.rho, 2.0, 0.05);
}

TEST(DecayFit, ZerosAreFlagged) {
  const auto f = GridFunction::sample(kDefault, [](double x) { return std::abs(x) > 100.0 ? 0.0 : 1.0 / x; });
  const auto fit = fit_algebraic_decay(f);
  EXPECT_TRUE(fit.zeros_in_window);
  EXPECT_TRUE(fit.low_confidence);
}

TEST(DecayFit, ShortWindowRejected) {
  const auto f = GridFunction::sample(kDefault, [](double x) { return 1.0 / japanese(x); });
  EXPECT_THROW(fit_algebraic_decay(f, Interval{50.0, 50.05}), std::invalid_argument);
  EXPECT_THROW(fit_algebraic_decay(f, Interval{-1.0, 50.0}), std::invalid_argument);
}

TEST(DecayFit, ExponentialIsSuperAlgebraic) {
  const auto f = GridFunction::sample(kDefault, [](double x) { return std::exp(-std::abs(x) / 10.0); });
  const auto fit = fit_algebraic_decay(f);
  EXPECT_TRUE(fit.super_algebraic);
  EXPECT_TRUE(fit.low_confidence);
}

TEST(DecayFit, InnerEdgeStability) {
  const auto u = lc_solution(LCParams{-1.0, 1.0, 1.0}, kDefault);
  const auto a = fit_algebraic_decay(u, Interval{50.0, 200.0});
  const auto b = fit_algebraic_decay(u, Interval{100.0, 200.0});
  EXPECT_LT(std::abs(a.rho - b.rho), 0.05);
}

TEST(Ladder, LcExponents) {
  const auto rungs = derivative_decay_ladder(lc_solution(LCParams{-1.0, 1.0, 1.0}, kDefault), 3, Interval{50.0, 200.0});
  ASSERT_EQ(rungs.size(), 4u);
  for (const auto& r : rungs) {
    EXPECT_NEAR(r.right.rho, 1.0 + r.alpha, 0.1) << r.alpha;
    EXPECT_NEAR(r.left.rho, 1.0 + r.alpha, 0.1) << r.alpha;
  }
}

TEST(Ladder, GaussianIsFlagged) {
  const auto rungs = derivative_decay_ladder(
      GridFunction::sample(kDefault, [](double x) { return std::exp(-x * x); }), 1);
  for (const auto& r : rungs) {
    EXPECT_TRUE(r.right.super_algebraic);
    EXPECT_TRUE(r.right.low_confidence);
  }
}

TEST(Ladder, UnresolvedSpectrumRefused) {
  const Grid coarse(400.0, 1024);
  EXPECT_THROW(derivative_decay_ladder(lc_solution(LCParams{-10.0, 1.0, 1.0}, coarse), 2), NumericalError);
}

TEST(Strip, LcWidth) {
  const auto s = fit_strip_width(lc_solution(LCParams{-1.0, 1.0, 1.0}, kDefault));
  ASSERT_TRUE(s.accepted) << s.note;
  EXPECT_NEAR(s.b_est, 1.0, 0.02);
  EXPECT_GE(s.r_squared, 0.99);
}

TEST(Strip, BoWidth) {
  const auto s = fit_strip_width(bo_soliton(BOParams{2.0}, kDefault));
  ASSERT_TRUE(s.accepted) << s.note;
  EXPECT_NEAR(s.b_est, 2.0, 0.04);
}

TEST(Strip, ExactExponentialSpectrum) {
  // e^{-3|xi|} is the transform of 3 / (pi (x^2 + 9)).
  const auto f = GridFunction::sample(kDefault, [](double x) { return 3.0 / (pi * (x * x + 9.0)); });
  const auto s = fit_strip_width(f);
  ASSERT_TRUE(s.accepted) << s.note;
  EXPECT_NEAR(s.b_est, 3.0, 0.03);
}

TEST(Strip, AlgebraicSpectrumRejected) {
  // e^{-|x|} has transform 2 / (1 + xi^2).
  const auto s = fit_strip_width(GridFunction::sample(kDefault, [](double x) { return std::exp(-std::abs(x)); }));
  EXPECT_FALSE(s.accepted);
  EXPECT_TRUE(std::isnan(s.b_est));
}

TEST(Strip, GaussianSpectrumRejected) {
  const auto s = fit_strip_width(GridFunction::sample(kDefault, [](double x) { return std::exp(-x * x / 2.0); }));
  EXPECT_FALSE(s.accepted);
  EXPECT_TRUE(std::isnan(s.b_est));
}

TEST(Bootstrap, HandRecursions) {
  const auto a = bootstrap_schedule(0.3, 2, 1);
  EXPECT_EQ(a.epsilons, (std::vector<double>{0.3, 0.45, 0.675}));
  EXPECT_EQ(a.steps, 3);
  EXPECT_EQ(a.final_exponent, 1.0);

  const auto b = bootstrap_schedule(0.6, 2, 1);
  EXPECT_EQ(b.epsilons, std::vector<double>{0.6});
  EXPECT_EQ(b.steps, 1);

  const auto c = bootstrap_schedule(0.1, 3, 2);
  EXPECT_EQ(c.epsilons, (std::vector<double>{0.1, 0.2, 0.4, 0.8}));
  EXPECT_EQ(c.steps, 4);
}

TEST(Bootstrap, InvalidInputs) {
  EXPECT_THROW(bootstrap_schedule(0.0, 2, 1), std::invalid_argument);
  EXPECT_THROW(bootstrap_schedule(0.1, 1, 1), std::invalid_argument);
  EXPECT_THROW(bootstrap_schedule(0.1, 2, 0), std::invalid_argument);
}

TEST(LeastSquares, ExactLine) {
  const auto f = least_squares_line({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
  EXPECT_DOUBLE_EQ(f.slope, 2.0);
  EXPECT_DOUBLE_EQ(f.intercept, 1.0);
  EXPECT_DOUBLE_EQ(f.r_squared, 1.0);
}
