// Tail exponents of the LC wave and of its first derivatives.
#include "nlwave/nlwave.hpp"

#include <cstdio>

int main() {
  using namespace nlwave;
  const Grid g(400.0, std::size_t{1} << 17);
  const LCParams p{-1.0, 1.0, 1.0};
  const auto u = lc_solution(p, g);
  std::printf("residual %.3e\n", residual(p.symbol(), Nonlinearity{}, u));
  for (const auto& r : derivative_decay_ladder(u, 2, Interval{50.0, 200.0}))
    std::printf("alpha %d  rho right %.4f  left %.4f  (expected %d)\n", r.alpha, r.right.rho, r.left.rho,
                1 + r.alpha);
  const auto strip = fit_strip_width(u);
  std::printf("strip half-width %.6f (expected %.6f)\n", strip.b_est, p.b());
}
