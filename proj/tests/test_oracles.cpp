#include "nlwave/oracles.hpp"
#include "nlwave/solver.hpp"

#include <gtest/gtest.h>

using namespace nlwave;

namespace {
const Grid kDefault(400.0, std::size_t{1} << 17);
}

TEST(LcOracle, PointValues) {
  const LCParams p{-1.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(lc_solution(p, 0.0), -2.0);
  EXPECT_DOUBLE_EQ(lc_solution(p, 1.0), -2.0);
  EXPECT_DOUBLE_EQ(lc_solution(p, -1.0), 0.0);
}

TEST(LcOracle, DerivedParameters) {
  const LCParams p{-0.5, 1.0, 2.0};
  EXPECT_DOUBLE_EQ(p.b(), 2.0);
  EXPECT_DOUBLE_EQ(p.c(), -1.0);
  EXPECT_THROW((LCParams{1.0, 1.0, 1.0}).validate(), std::invalid_argument);
  EXPECT_THROW((LCParams{-1.0, -1.0, 1.0}).validate(), std::invalid_argument);
  EXPECT_THROW((LCParams{-1.0, 1.0, 0.0}).validate(), std::invalid_argument);
}

TEST(LcOracle, FarFieldIsMinusTwoNuOverX) {
  const LCParams p{-1.0, 1.5, 1.0};
  for (double x : {1e4, 1e6, 1e8}) EXPECT_NEAR(x * lc_solution(p, x), -2.0 * p.nu, 10.0 / x);
}

TEST(LcOracle, ZeroAndAsymmetry) {
  const LCParams p{-0.5, 1.0, 1.5};
  EXPECT_NEAR(lc_solution(p, -p.b() * p.beta / p.nu), 0.0, 1e-15);
  EXPECT_GT(std::abs(lc_solution(p, 3.0) - lc_solution(p, -3.0)), 0.1);
}

TEST(LcOracle, FourierValueAtOnePlus) {
  const LCParams p{-1.0, 1.0, 1.0};
  const cplx want = cplx(-2.0 * pi, 2.0 * pi) * std::exp(-1.0);
  EXPECT_NEAR(std::abs(lc_fourier(p, 1.0) - want), 0.0, 1e-14);
  EXPECT_THROW(lc_fourier(p, 0.0), std::invalid_argument);
}

TEST(LcOracle, FourierModulus) {
  const LCParams p{-0.5, 1.0, 0.7};
  for (double xi : {-4.0, -0.3, 0.1, 2.5})
    EXPECT_NEAR(std::abs(lc_fourier(p, xi)),
                2.0 * pi * std::hypot(p.nu, p.beta) * std::exp(-p.b() * std::abs(xi)), 1e-13);
}

TEST(LcOracle, ZeroModeIsPrincipalValueIntegral) {
  const LCParams p{-1.0, 1.0, 1.0};
  // int_{-R}^{R} u dx = -4 beta atan(R / b), the odd part cancels.
  const double R = 1e9;
  EXPECT_NEAR(lc_fourier_zero_mode(p).real(), -4.0 * p.beta * std::atan(R / p.b()), 1e-8);
  const cplx avg = 0.5 * (lc_fourier(p, 1e-12) + lc_fourier(p, -1e-12));
  EXPECT_NEAR(std::abs(avg - lc_fourier_zero_mode(p)), 0.0, 1e-10);
}

TEST(LcOracle, TransformMatchesSampledSolution) {
  const LCParams p{-1.0, 1.0, 1.0};
  const auto s = forward_transform(lc_solution(p, kDefault), EvalMode::Line);
  double err = 0.0;
  for (std::size_t j = 0; j < kDefault.N; ++j) {
    const double xi = kDefault.xi(j);
    if (std::abs(xi) < 0.1 || std::abs(xi) > 10.0) continue;
    err = std::max(err, std::abs(s.values[j] - lc_fourier(p, xi)) / std::abs(lc_fourier(p, xi)));
  }
  EXPECT_LT(err, 1e-5);
}

TEST(LcOracle, RationalIdentity) {
  for (const LCParams& p : {LCParams{-1.0, 1.0, 1.0}, LCParams{-0.5, 2.0, -0.7}})
    for (double x = -20.0; x <= 20.0; x += 0.37) EXPECT_NEAR(lc_identity_residual(p, x), 0.0, 1e-13);
}

TEST(LcOracle, ResidualOnDefaultGrid) {
  const LCParams p{-1.0, 1.0, 1.0};
  EXPECT_LE(residual(p.symbol(), Nonlinearity{}, lc_solution(p, kDefault)), 1e-4);
}

TEST(BoOracle, PointValuesAndEvenness) {
  const BOParams p{1.0};
  EXPECT_DOUBLE_EQ(bo_soliton(p, 0.0), -2.0);
  EXPECT_DOUBLE_EQ(bo_soliton(p, 1.0), -1.0);
  EXPECT_DOUBLE_EQ(bo_soliton(p, -1.0), -1.0);
  for (double x : {0.3, 2.0, 17.0}) EXPECT_EQ(bo_soliton(p, x), bo_soliton(p, -x));
  EXPECT_DOUBLE_EQ(p.c(), -1.0);
  EXPECT_THROW((BOParams{0.0}).validate(), std::invalid_argument);
}

TEST(BoOracle, RationalIdentity) {
  for (double b : {0.5, 1.0, 3.0})
    for (double x = -20.0; x <= 20.0; x += 0.37) EXPECT_NEAR(bo_identity_residual(BOParams{b}, x), 0.0, 1e-13);
}

TEST(BoOracle, ResidualOnDefaultGrid) {
  const BOParams p{1.0};
  EXPECT_LE(residual(p.symbol(), Nonlinearity{}, bo_soliton(p, kDefault)), 1e-4);
}

TEST(BoOracle, TransformMatchesSampledSoliton) {
  const BOParams p{2.0};
  const auto s = forward_transform(bo_soliton(p, kDefault), EvalMode::Line);
  double err = 0.0;
  for (std::size_t j = 0; j < kDefault.N; ++j) {
    const double xi = kDefault.xi(j);
    if (std::abs(xi) < 0.1 || std::abs(xi) > 5.0) continue;
    err = std::max(err, std::abs(s.values[j] - bo_fourier(p, xi)) / std::abs(bo_fourier(p, xi)));
  }
  EXPECT_LT(err, 1e-5);
}
