#include "nlwave/oracles.hpp"
#include "nlwave/spectral.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nlwave;

namespace {

const Grid kDefault(400.0, std::size_t{1} << 17);
const Grid kSmall(60.0, 4096);

GridFunction gaussian(const Grid& g, double s = 1.0) {
  return GridFunction::sample(g, [s](double x) { return std::exp(-x * x / (2.0 * s * s)); });
}

double max_rel(const Spectrum& s, const std::function<cplx(double)>& want, double lo, double hi) {
  double m = 0.0;
  for (std::size_t j = 0; j < s.grid.N; ++j) {
    const double xi = s.grid.xi(j);
    if (std::abs(xi) < lo || std::abs(xi) > hi) continue;
    m = std::max(m, std::abs(s.values[j] - want(xi)) / std::abs(want(xi)));
  }
  return m;
}

} // namespace

TEST(Grid, NodesAndFrequencies) {
  const Grid g(10.0, 8);
  EXPECT_DOUBLE_EQ(g.x(0), -10.0);
  EXPECT_DOUBLE_EQ(g.x(4), 0.0);
  EXPECT_DOUBLE_EQ(g.xi(1), pi / 10.0);
  EXPECT_DOUBLE_EQ(g.xi(7), -pi / 10.0);
  EXPECT_DOUBLE_EQ(g.xi(4), -4.0 * pi / 10.0);
  EXPECT_THROW(Grid(1.0, 7), std::invalid_argument);
  EXPECT_THROW(Grid(-1.0, 8), std::invalid_argument);
}

TEST(ForwardTransform, PoissonKernelLineMode) {
  const Grid g(200.0, std::size_t{1} << 16);
  const auto f = GridFunction::sample(g, [](double x) { return 1.0 / (x * x + 1.0); });
  const auto s = forward_transform(f, EvalMode::Line);
  EXPECT_LT(max_rel(s, [](double xi) { return cplx(pi * std::exp(-std::abs(xi))); }, 0.0, 10.0), 1e-6);
}

TEST(ForwardTransform, ZeroMapsToZero) {
  const auto s = forward_transform(GridFunction(kSmall));
  EXPECT_EQ(s.peak(), 0.0);
}

TEST(ForwardTransform, Gaussian) {
  const auto s = forward_transform(gaussian(kSmall));
  EXPECT_LT(max_rel(s, [](double xi) { return cplx(std::sqrt(2.0 * pi) * std::exp(-xi * xi / 2.0)); }, 0.0, 4.0),
            1e-12);
}

TEST(ForwardTransform, RoundTripBothModes) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  GridFunction f(kSmall);
  for (auto& v : f.values) v = {nd(rng), nd(rng)};
  for (auto mode : {EvalMode::Periodic, EvalMode::Line}) {
    const auto back = inverse_transform(forward_transform(f, mode));
    EXPECT_LT((back - f).sup_norm() / f.sup_norm(), 1e-12);
  }
}

TEST(ForwardTransform, ParsevalPeriodic) {
  const auto f = GridFunction::sample(kSmall, [](double x) { return std::exp(-std::abs(x)) * std::sin(3 * x); });
  const auto s = forward_transform(f);
  double e = 0.0;
  for (auto v : s.values) e += std::norm(v);
  e /= 2.0 * kSmall.L;
  EXPECT_NEAR(e / std::pow(f.l2_norm(), 2), 1.0, 1e-12);
}

TEST(Multiplier, IdentitySymbol) {
  const Symbol one({{0.0, 1.0, 1.0, {}}});
  const auto f = GridFunction::sample(kSmall, [](double x) { return std::cos(x) / (1 + x * x); });
  EXPECT_LT((apply_multiplier(one, f) - f).sup_norm(), 1e-15);
  EXPECT_LT((apply_multiplier(one, f, {ZeroModeRule::Average, EvalMode::Line}) - f).sup_norm(), 1e-14);
}

TEST(Multiplier, HilbertOfPoissonKernel) {
  for (double b : {1.0, 2.0}) {
    const auto f = GridFunction::sample(kDefault, [b](double x) { return 1.0 / (x * x + b * b); });
    const auto want = GridFunction::sample(kDefault, [b](double x) { return x / (b * (x * x + b * b)); });
    const auto h = hilbert_transform(f, EvalMode::Line);
    EXPECT_LT((h - want).sup_norm({-200.0, 200.0}), 1e-5) << b;
  }
}

TEST(Multiplier, PeriodicHilbertShowsWrapError) {
  // The far-field correction matters: plain periodic evaluation is O(1/L) off.
  const auto f = GridFunction::sample(kDefault, [](double x) { return 1.0 / (x * x + 1.0); });
  const auto want = GridFunction::sample(kDefault, [](double x) { return x / (x * x + 1.0); });
  EXPECT_GT((hilbert_transform(f) - want).sup_norm({-200.0, 200.0}), 1e-4);
}

TEST(Multiplier, DerivativeOfModulatedBump) {
  const auto f = GridFunction::sample(kSmall, [](double x) { return std::sin(x) * std::exp(-x * x / 50.0); });
  const auto want = GridFunction::sample(kSmall, [](double x) {
    return (std::cos(x) - x / 25.0 * std::sin(x)) * std::exp(-x * x / 50.0);
  });
  EXPECT_LT((derivative(f, 1) - want).sup_norm(), 1e-6);
  const Symbol ixi({{1.0, {0.0, 1.0}, {0.0, -1.0}, {}}});
  EXPECT_LT((apply_multiplier(ixi, f) - want).sup_norm(), 1e-6);
}

TEST(Multiplier, ZeroModeRuleSelectsDcValue) {
  const auto c = GridFunction::sample(kSmall, [](double) { return 1.0; });
  const Symbol s({{0.0, 3.0, 1.0, {}}});
  EXPECT_NEAR(apply_multiplier(s, c, ZeroModeRule::Average).values[0].real(), 2.0, 1e-14);
  EXPECT_NEAR(apply_multiplier(s, c, ZeroModeRule::Plus).values[0].real(), 3.0, 1e-14);
  EXPECT_NEAR(apply_multiplier(s, c, ZeroModeRule::Minus).values[0].real(), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(apply_multiplier(s, c, ZeroModeRule::Zero).values[0]), 0.0, 1e-14);
}

TEST(InverseMultiplier, BoRoundTrip) {
  const auto f = gaussian(kDefault, 3.0);
  const Symbol p = bo_symbol(1.0);
  const auto back = apply_inverse_multiplier(p, apply_multiplier(p, f));
  EXPECT_LT((back - f).sup_norm(), 1e-10);
}

TEST(InverseMultiplier, LcIntegralFormReproducesClosedForm) {
  const LCParams prm{-1.0, 1.0, 1.0};
  const auto u = lc_solution(prm, kDefault);
  GridFunction rhs = u;
  for (auto& v : rhs.values) v = -v * v;
  const auto back = apply_inverse_multiplier(prm.symbol(), rhs, {ZeroModeRule::Average, EvalMode::Line});
  EXPECT_LT((back - u).sup_norm({-200.0, 200.0}), 1e-4);
}

TEST(InverseMultiplier, VanishingAveragedZeroModeRejected) {
  const auto f = gaussian(kSmall);
  EXPECT_THROW(apply_inverse_multiplier(hilbert_symbol(), f), std::invalid_argument);
}

TEST(InverseMultiplier, NonEllipticRejected) {
  const auto f = gaussian(kSmall);
  EXPECT_THROW(apply_inverse_multiplier(sivashinsky_symbol(1.0, 0.0), f), std::invalid_argument);
}

TEST(Hilbert, SquareIsMinusIdentityOffMean) {
  const auto f = GridFunction::sample(kSmall, [](double x) { return 0.3 + std::exp(-x * x / 4.0) * std::cos(2 * x); });
  const auto h2 = hilbert_transform(hilbert_transform(f));
  cplx mean{};
  for (auto v : f.values) mean += v;
  mean /= static_cast<double>(kSmall.N);
  double err = 0.0;
  for (std::size_t k = 0; k < kSmall.N; ++k) err = std::max(err, std::abs(h2.values[k] + f.values[k] - mean));
  EXPECT_LT(err, 1e-10);
}

TEST(Hilbert, ConstantMapsToZero) {
  const auto c = GridFunction::sample(kSmall, [](double) { return 5.0; });
  EXPECT_LT(hilbert_transform(c).sup_norm(), 1e-14);
}

TEST(Multiplier, LineModeIsLinear) {
  const Symbol p = lc_symbol(-1.0, 1.0, 1.0);
  const MultiplierOperator op(p, kDefault, {ZeroModeRule::Average, EvalMode::Line});
  const auto f = lc_solution(LCParams{}, kDefault);
  const auto g = gaussian(kDefault, 5.0);
  const cplx a(0.7, -0.2), b(-1.3, 0.4);
  const auto lhs = op.apply(a * f + b * g);
  const auto rhs = a * op.apply(f) + b * op.apply(g);
  EXPECT_LT((lhs - rhs).sup_norm(), 1e-12);
}

TEST(Multiplier, RealnessPreserved) {
  const auto f = lc_solution(LCParams{}, kDefault);
  for (auto mode : {EvalMode::Periodic, EvalMode::Line}) {
    const auto out = apply_multiplier(lc_symbol(-1.0, 1.0, 1.0), f, {ZeroModeRule::Average, mode});
    EXPECT_LE(out.imag_sup(), 1e-10 * f.sup_norm());
  }
}

TEST(Translate, ShiftsByDelta) {
  const auto f = GridFunction::sample(kDefault, [](double x) { return -2.0 / (x * x + 1.0); });
  const auto want = GridFunction::sample(kDefault, [](double x) { return -2.0 / ((x + 0.37) * (x + 0.37) + 1.0); });
  EXPECT_LT((translate(f, 0.37) - want).sup_norm({-200.0, 200.0}), 1e-10);
}

TEST(Weights, DefinitionAndOrigin) {
  for (double r : {0.0, 0.5, 2.0, 5.0})
    for (int d : {1, 2, 3}) EXPECT_DOUBLE_EQ((WeightSpec{WeightKind::W, r, d})(0.0), 1.0);
  EXPECT_DOUBLE_EQ((WeightSpec{WeightKind::V, 1.0, 1})(0.0), 1.0);
  const double x = 10.0, j = japanese(x);
  EXPECT_DOUBLE_EQ((WeightSpec{WeightKind::W, 0.5, 1})(x), std::pow(j, 0.5) / std::log1p(j));
  EXPECT_DOUBLE_EQ((WeightSpec{WeightKind::W, 3.0, 1})(x), j);
}

TEST(Weights, SupNormExamples) {
  const auto f = GridFunction::sample(kSmall, [](double x) { return 1.0 / japanese(x); });
  EXPECT_NEAR(weighted_sup_norm(f, {WeightKind::V, 1.0, 1}, {-30.0, 30.0}), 1.0, 1e-12);
  EXPECT_NEAR(weighted_sup_norm(f, {WeightKind::V, 1.0, 1}, {5.0, 7.0}), 1.0, 1e-12);
  const auto u = lc_solution(LCParams{}, kDefault);
  const double n = weighted_sup_norm(u, {WeightKind::V, 1.0, 1}, {50.0, 200.0});
  EXPECT_TRUE(std::isfinite(n));
  EXPECT_NEAR(n, 2.0, 0.05);
}

TEST(Weights, WindowErrors) {
  const auto f = gaussian(kSmall);
  EXPECT_THROW(weighted_sup_norm(f, {}, {2.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(weighted_sup_norm(f, {}, {0.0, 100.0}), std::invalid_argument);
  EXPECT_THROW(weighted_sup_norm(f, {}, {0.001, 0.002}), std::invalid_argument);
}

TEST(Weights, LogRegimeAndPowerRegime) {
  // w_r ~ <x>^r / log(1+<x>) for r <= d and ~ <x>^d for r > d at large x
  for (double x : {1e2, 1e4, 1e6}) {
    const double j = japanese(x);
    EXPECT_NEAR((WeightSpec{WeightKind::W, 1.0, 1})(x) / (j / std::log1p(j)), 1.0, 1e-12);
    EXPECT_NEAR((WeightSpec{WeightKind::W, 0.5, 2})(x) / (std::sqrt(j) / std::log1p(j)), 1.0, 1e-12);
    EXPECT_NEAR((WeightSpec{WeightKind::W, 1.5, 1})(x) / j, 1.0, 1e-12);
  }
}
