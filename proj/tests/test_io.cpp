#include "nlwave/io.hpp"
#include "nlwave/oracles.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <random>

using namespace nlwave;

namespace {

GridFunction noisy(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1e3);
  GridFunction f(g);
  for (auto& v : f.values) v = {nd(rng), nd(rng) * 1e-7};
  return f;
}

bool bit_equal(const GridFunction& a, const GridFunction& b) {
  return a.grid == b.grid && a.values.size() == b.values.size() &&
         std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(cplx)) == 0;
}

} // namespace

TEST(GridFunctionIo, BinaryRoundTripIsBitExact) {
  const auto f = noisy(Grid(123.25, 512), 3);
  std::stringstream ss;
  io::write_binary(ss, f);
  EXPECT_EQ(ss.str().size(), sizeof(double) + sizeof(std::uint64_t) + 512 * 2 * sizeof(double));
  EXPECT_TRUE(bit_equal(io::read_binary(ss), f));
}

TEST(GridFunctionIo, CsvRoundTripIsExact) {
  const auto f = noisy(Grid(400.0, 1024), 5);
  std::stringstream ss;
  io::write_csv(ss, f);
  const auto g = io::read_csv(ss);
  EXPECT_EQ(g.grid, f.grid);
  EXPECT_TRUE(bit_equal(g, f));
}

TEST(GridFunctionIo, CsvHeaderRequired) {
  std::stringstream ss("a,b,c\n1,2,3\n");
  EXPECT_THROW(io::read_csv(ss), std::invalid_argument);
}

TEST(GridFunctionIo, TruncatedBinaryRejected) {
  std::stringstream ss;
  io::write_binary(ss, noisy(Grid(10.0, 16), 1));
  const std::string cut = ss.str().substr(0, 40);
  std::stringstream in(cut);
  EXPECT_THROW(io::read_binary(in), std::invalid_argument);
}

TEST(Reports, SolveReportShape) {
  Solution s;
  s.residual_history = {1.0, 0.1, 1e-9};
  s.converged = true;
  s.iterations_used = 2;
  const auto j = io::solve_report("bo", {{"b", 1.0}}, s);
  for (const char* k : {"preset", "params", "iterations", "residual_history", "converged"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j.at("iterations"), 2);
  EXPECT_EQ(j.at("residual_history").size(), 3u);
}

TEST(Reports, RatioCsvAndSummary) {
  RatioReport r;
  r.r = 1.0;
  r.probe_xs = {0.0, 1.0};
  r.integrals = {2.0, 3.0};
  r.bounds = {1.0, 1.5};
  r.ratios = {2.0, 2.0};
  r.branches = {Branch::Power, Branch::Log};
  r.sup_ratio = 2.0;
  std::stringstream ss;
  io::write_ratio_csv(ss, r);
  EXPECT_EQ(ss.str(), "x,integral,bound,ratio\n0,2,1,2\n1,3,1.5,2\n");
  EXPECT_EQ(io::summary_json(r).at("binding_branch_at_x_max"), "log");
}

TEST(Reports, FitCsvAndJson) {
  DecayFit f;
  f.rho = 1.5;
  f.log_x = {1.0, 2.0};
  f.log_f = {-1.5, -3.0};
  std::stringstream ss;
  io::write_fit_csv(ss, f);
  EXPECT_EQ(ss.str(), "log_abs_x,log_abs_f\n1,-1.5\n2,-3\n");
  EXPECT_EQ(io::to_json(f).at("rho"), 1.5);
}

TEST(Reports, NonFiniteBecomesNull) {
  StripEstimate s;
  EXPECT_TRUE(io::to_json(s).at("b_est").is_null());
}

TEST(Symbols, RadialJson) {
  const Symbol s({HomogeneousTerm::radial(0.0, 1.0), HomogeneousTerm::radial(2.0, {0.5, 0.0})}, 3);
  const Symbol t = io::symbol_from_json(io::to_json(s));
  EXPECT_EQ(t.dimension(), 3);
  EXPECT_EQ(t.terms()[1].radial_coeff, cplx(0.5, 0.0));
}
