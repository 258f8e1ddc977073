// Petviashvili solve of -u/b + H u' = -u^2 from a Gaussian.
#include "nlwave/nlwave.hpp"

#include <cstdio>

int main() {
  using namespace nlwave;
  const BOParams p{1.0};
  SolverConfig cfg;
  cfg.grid = Grid(400.0, std::size_t{1} << 17);
  cfg.initial_guess.width = 2.0;
  const Solution s = fixed_point_solve(p.symbol(), Nonlinearity{}, cfg);
  std::printf("converged %s after %d iterations, residual %.3e\n", s.converged ? "yes" : "no", s.iterations_used,
              s.residual_history.back());
  std::printf("distance to closed form %.3e\n", center_and_compare(s.u, bo_soliton(p, cfg.grid)));
  return s.converged ? 0 : 1;
}
