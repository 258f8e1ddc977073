#ifndef NLWAVE_SOLVER_HPP
#define NLWAVE_SOLVER_HPP

#include "nlwave/spectral.hpp"

#include <array>
#include <limits>
#include <optional>
#include <vector>

namespace nlwave {

// F(u) = coefficient * u^exponent
struct Nonlinearity {
  int exponent = 2;
  cplx coefficient{-1.0, 0.0};

  void validate() const {
    require(exponent >= 2, "nonlinearity exponent must be >= 2");
    require(coefficient != cplx{}, "nonlinearity coefficient must be nonzero");
  }

  cplx operator()(cplx u) const {
    cplx v = u;
    for (int k = 1; k < exponent; ++k) v *= u;
    return coefficient * v;
  }

  GridFunction apply(const GridFunction& u) const {
    GridFunction out = u;
    for (auto& v : out.values) v = (*this)(v);
    return out;
  }

  double petviashvili_gamma() const { return static_cast<double>(exponent) / (exponent - 1); }
};

struct InitialGuess {
  // Gaussian amplitude * exp(-x^2 / (2 width^2)). An unset amplitude takes
  // magnitude 1 and the sign of the nonlinearity coefficient.
  std::optional<double> amplitude;
  double width = 2.0;
  std::optional<GridFunction> profile;

  GridFunction make(const Grid& g, const Nonlinearity& F) const {
    if (profile) {
      require(profile->grid == g, "initial profile lives on a different grid");
      return *profile;
    }
    require(width > 0.0, "initial guess width must be positive");
    const double a = amplitude.value_or(F.coefficient.real() < 0.0 ? -1.0 : 1.0);
    return GridFunction::sample(g, [&](double x) { return a * std::exp(-x * x / (2.0 * width * width)); });
  }
};

struct SolverConfig {
  Grid grid;
  int max_iterations = 200;
  double residual_tol = 1e-8;
  std::optional<double> gamma;
  double damping = 1.0;
  InitialGuess initial_guess;
  EvalMode mode = EvalMode::Periodic;
  std::optional<Interval> residual_window; // whole grid when unset

  void validate() const {
    require(max_iterations >= 0, "max_iterations must be nonnegative");
    require(residual_tol > 0.0, "residual_tol must be positive");
    require(damping > 0.0 && damping <= 1.0, "damping must lie in (0, 1]");
    if (gamma) require(*gamma > 1.0, "gamma must exceed 1");
  }
};

struct Solution {
  GridFunction u;
  std::vector<double> residual_history;
  bool converged = false;
  int iterations_used = 0;
};

namespace detail {

inline double window_sup(const GridFunction& f, const std::optional<Interval>& w) {
  return w ? f.sup_norm(*w) : f.sup_norm();
}

inline Interval central_window(const Grid& g) { return {-0.5 * g.L, 0.5 * g.L}; }

} // namespace detail

// sup over window of |p(D)u - F(u)| / max(1, sup|u|).
inline double residual(const MultiplierOperator& op, const Nonlinearity& F, const GridFunction& u,
                       const Interval& window) {
  const double scale = std::max(1.0, u.sup_norm());
  return (op.apply(u) - F.apply(u)).sup_norm(window) / scale;
}

inline double residual(const Symbol& sym, const Nonlinearity& F, const GridFunction& u,
                       std::optional<Interval> window = std::nullopt, EvalMode mode = EvalMode::Line) {
  F.validate();
  const auto rep = check_ellipticity(sym);
  if (!rep.elliptic) throw std::invalid_argument("residual needs an elliptic symbol");
  MultiplierOperator op(sym, u.grid, {ZeroModeRule::Average, mode});
  return residual(op, F, u, window.value_or(detail::central_window(u.grid)));
}

// Petviashvili iteration u <- S^gamma p(D)^{-1} F(u).
//
// Periodic mode uses S = <p(D)u, u> / <F(u), u> and the differential residual.
// Line mode uses the integral form throughout, S = <u, u> / <p(D)^{-1}F(u), u>
// and |u - p(D)^{-1}F(u)|; both agree with the former at a fixed point.
inline Solution fixed_point_solve(const Symbol& sym, const Nonlinearity& F, const SolverConfig& cfg) {
  cfg.validate();
  F.validate();
  MultiplierOperator op(sym, cfg.grid, {ZeroModeRule::Average, cfg.mode});
  op.ensure_invertible();

  GridFunction u = cfg.initial_guess.make(cfg.grid, F);
  const bool real = F.coefficient.imag() == 0.0 && sym.conjugate_symmetric() && u.is_real();
  const double gamma = cfg.gamma.value_or(F.petviashvili_gamma());

  Solution sol;
  for (int it = 0;; ++it) {
    const GridFunction Fu = F.apply(u);
    const cplx fu = inner(Fu, u);
    if (std::abs(fu) < 1e-30) throw NumericalError("stabilizing factor undefined: <F(u), u> vanishes");

    std::optional<GridFunction> v;
    cplx S;
    double res;
    const double scale = std::max(1.0, u.sup_norm());
    if (cfg.mode == EvalMode::Periodic) {
      const GridFunction Pu = op.apply(u);
      S = inner(Pu, u) / fu;
      res = detail::window_sup(Pu - Fu, cfg.residual_window) / scale;
    } else {
      v = op.apply_inverse(Fu);
      const cplx den = inner(*v, u);
      if (std::abs(den) < 1e-30) throw NumericalError("stabilizing factor undefined");
      S = inner(u, u) / den;
      res = detail::window_sup(u - *v, cfg.residual_window) / scale;
    }
    if (real) S = S.real();
    sol.residual_history.push_back(res);
    if (!std::isfinite(res)) throw NumericalError("solver produced a non-finite residual");

    if (res <= cfg.residual_tol) {
      sol.converged = true;
      sol.iterations_used = it;
      break;
    }
    const std::size_t h = sol.residual_history.size();
    if (h > 20 && res > 10.0 * sol.residual_history[h - 21])
      throw NumericalError("solver diverged: residual grew tenfold over 20 iterations");
    if (it == cfg.max_iterations) {
      sol.iterations_used = it;
      break;
    }

    if (!v) v = op.apply_inverse(Fu);
    const cplx factor = std::pow(S, gamma);
    for (std::size_t k = 0; k < u.size(); ++k) {
      cplx next = factor * v->values[k];
      next = (1.0 - cfg.damping) * u.values[k] + cfg.damping * next;
      u.values[k] = real ? cplx(next.real()) : next;
    }
  }
  sol.u = std::move(u);
  return sol;
}

namespace detail {

// Location of the largest-magnitude extremum, refined below the grid spacing
// by a Newton step on a degree-6 interpolant through the 7 nearest nodes.
inline double extremum_location(const GridFunction& f) {
  const Grid& g = f.grid;
  std::size_t kmax = 0;
  double vmax = -1.0, vmin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < g.N; ++k) {
    const double a = std::abs(f.values[k]);
    if (a > vmax) {
      vmax = a;
      kmax = k;
    }
    vmin = std::min(vmin, a);
  }
  if (!(vmax > vmin)) throw std::invalid_argument("flat input has no extremum");
  if (kmax < 3 || kmax + 3 >= g.N) return g.x(kmax);

  // Work with the real profile rotated by the phase at the peak.
  const cplx rot = std::conj(f.values[kmax]) / std::abs(f.values[kmax]);
  std::array<double, 7> y{};
  for (int j = -3; j <= 3; ++j) y[j + 3] = (f.values[kmax + j] * rot).real();

  // Monomial coefficients on t in {-3..3} by Gaussian elimination.
  std::array<std::array<double, 8>, 7> A{};
  for (int r = 0; r < 7; ++r) {
    double t = r - 3, p = 1.0;
    for (int c = 0; c < 7; ++c, p *= t) A[r][c] = p;
    A[r][7] = y[r];
  }
  for (int c = 0; c < 7; ++c) {
    int piv = c;
    for (int r = c + 1; r < 7; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    std::swap(A[c], A[piv]);
    for (int r = 0; r < 7; ++r) {
      if (r == c) continue;
      const double m = A[r][c] / A[c][c];
      for (int k = c; k < 8; ++k) A[r][k] -= m * A[c][k];
    }
  }
  std::array<double, 7> a{};
  for (int c = 0; c < 7; ++c) a[c] = A[c][7] / A[c][c];

  double t = 0.0;
  for (int iter = 0; iter < 50; ++iter) {
    double d1 = 0.0, d2 = 0.0, p = 1.0;
    for (int c = 1; c < 7; ++c, p *= t) d1 += c * a[c] * p;
    p = 1.0;
    for (int c = 2; c < 7; ++c, p *= t) d2 += c * (c - 1) * a[c] * p;
    if (d2 == 0.0) break;
    const double step = d1 / d2;
    t -= step;
    if (std::abs(t) > 1.0) return g.x(kmax);
    if (std::abs(step) < 1e-15) break;
  }
  return g.x(kmax) + t * g.dx();
}

} // namespace detail

// Shifts u so its dominant extremum sits on the oracle's, then returns the
// sup distance on |x| <= L/2.
inline double center_and_compare(const GridFunction& u, const GridFunction& oracle) {
  require(u.grid == oracle.grid, "center_and_compare needs both functions on one grid");
  const double delta = detail::extremum_location(u) - detail::extremum_location(oracle);
  const GridFunction shifted = translate(u, delta, EvalMode::Line);
  return (shifted - oracle).sup_norm(detail::central_window(u.grid));
}

} // namespace nlwave

#endif
