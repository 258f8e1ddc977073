#ifndef NLWAVE_ORACLES_HPP
#define NLWAVE_ORACLES_HPP

#include "nlwave/grid.hpp"
#include "nlwave/symbols.hpp"

namespace nlwave {

struct LCParams {
  double mu = -1.0;
  double nu = 1.0;
  double beta = 1.0;

  void validate() const {
    require(mu < 0.0, "LC parameters need mu < 0");
    require(nu > 0.0, "LC parameters need nu > 0");
    require(beta != 0.0, "LC parameters need beta != 0");
  }
  double b() const { return -nu / mu; }
  double c() const { return beta * mu / nu; }
  Symbol symbol() const { return lc_symbol(mu, nu, beta); }
};

struct BOParams {
  double b = 1.0;

  void validate() const { require(b > 0.0, "BO parameters need b > 0"); }
  double c() const { return -1.0 / b; }
  Symbol symbol() const { return bo_symbol(b); }
};

// u(x) = -(2 nu x + 2 b beta) / (x^2 + b^2)
inline double lc_solution(const LCParams& p, double x) {
  const double b = p.b();
  return -(2.0 * p.nu * x + 2.0 * b * p.beta) / (x * x + b * b);
}

inline GridFunction lc_solution(const LCParams& p, const Grid& g) {
  p.validate();
  return GridFunction::sample(g, [&](double x) { return lc_solution(p, x); });
}

// u^(xi) = (2 pi i nu sign xi - 2 pi beta) e^{-b |xi|}
inline cplx lc_fourier(const LCParams& p, double xi) {
  require(xi != 0.0, "lc_fourier is discontinuous at xi = 0; use one-sided limits");
  return cplx(-2.0 * pi * p.beta, 2.0 * pi * p.nu * sgn(xi)) * std::exp(-p.b() * std::abs(xi));
}

// Average of the one-sided limits, which equals the principal-value integral of u.
inline cplx lc_fourier_zero_mode(const LCParams& p) { return -2.0 * pi * p.beta; }

// u(x) = -2b / (x^2 + b^2), solving -c u + H u' = -u^2 with c = -1/b.
inline double bo_soliton(const BOParams& p, double x) { return -2.0 * p.b / (x * x + p.b * p.b); }

inline GridFunction bo_soliton(const BOParams& p, const Grid& g) {
  p.validate();
  return GridFunction::sample(g, [&](double x) { return bo_soliton(p, x); });
}

inline double bo_fourier(const BOParams& p, double xi) { return -2.0 * pi * std::exp(-p.b * std::abs(xi)); }

// Rational-identity residual -c u + (H u)' + u^2 for BO, written out by hand
// from H[1/(x^2+b^2)] = x / (b (x^2+b^2)). Vanishes identically.
inline double bo_identity_residual(const BOParams& p, double x) {
  const double b = p.b, q = x * x + b * b;
  const double u = -2.0 * b / q;
  const double hu_prime = -2.0 * (b * b - x * x) / (q * q);
  return -p.c() * u + hu_prime + u * u;
}

// Same check for LC: -c u + mu H u + beta (H u)' - nu u' + u^2, using also
// H[x/(x^2+b^2)] = -b/(x^2+b^2).
inline double lc_identity_residual(const LCParams& p, double x) {
  const double b = p.b(), q = x * x + b * b;
  const double u = -(2.0 * p.nu * x + 2.0 * b * p.beta) / q;
  // H[1/q] = x/(b q), H[x/q] = -b/q
  const double hu = -(2.0 * p.nu * (-b / q) + 2.0 * b * p.beta * (x / (b * q)));
  const double hu_prime = -(2.0 * p.nu * (2.0 * b * x / (q * q)) + 2.0 * p.beta * (b * b - x * x) / (q * q));
  const double u_prime = -(2.0 * p.nu * (b * b - x * x) / (q * q) - 4.0 * b * p.beta * x / (q * q));
  return -p.c() * u + p.mu * hu + p.beta * hu_prime - p.nu * u_prime + u * u;
}

} // namespace nlwave

#endif
