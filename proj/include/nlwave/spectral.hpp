#ifndef NLWAVE_SPECTRAL_HPP
#define NLWAVE_SPECTRAL_HPP

#include "nlwave/fft.hpp"
#include "nlwave/grid.hpp"
#include "nlwave/symbols.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace nlwave {

// Periodic treats samples as one period of a 2L-periodic function; it is the
// exact discrete algebra. Line removes a fitted far field a/(1-ix) + b/(1+ix)
// first and handles it in closed form, which suppresses the O(1/L) wrap-around
// error of slowly decaying profiles.
enum class EvalMode { Periodic, Line };

struct MultiplierOptions {
  ZeroModeRule zero_mode = ZeroModeRule::Average;
  EvalMode mode = EvalMode::Periodic;
};

namespace detail {

// (-1)^n = e^{i xi_n L}, the phase between the DFT and nodes starting at -L.
inline double grid_phase(const Grid& g, std::size_t j) { return (g.mode(j) % 2 == 0) ? 1.0 : -1.0; }

inline std::vector<cplx> symbol_samples(const Symbol& sym, const Grid& g, ZeroModeRule rule) {
  require(sym.dimension() == 1, "grid multipliers need a one-dimensional symbol");
  std::vector<cplx> p(g.N);
  for (std::size_t j = 0; j < g.N; ++j) p[j] = (j == 0) ? sym.eval(0.0, rule) : sym.eval(g.xi(j));
  // The Nyquist mode stands for both +xi_max and -xi_max.
  const double a = g.xi_max();
  p[g.nyquist()] = 0.5 * (sym.eval(a) + sym.eval(-a));
  return p;
}

} // namespace detail

// Least-squares fit of f ~ a/(1-ix) + b/(1+ix) on |x| >= L/2. Both basis
// functions have closed-form transforms supported on one half-line.
class FarField {
public:
  explicit FarField(const Grid& g) : grid_(g), g_(g.N), h_(g.N) {
    for (std::size_t k = 0; k < g.N; ++k) {
      const double x = g.x(k);
      g_[k] = 1.0 / cplx(1.0, -x);
      h_[k] = 1.0 / cplx(1.0, x);
      if (std::abs(x) >= 0.5 * g.L) idx_.push_back(k);
    }
    // Modified Gram-Schmidt on the two restricted columns.
    double n1 = 0.0;
    for (auto k : idx_) n1 += std::norm(g_[k]);
    r11_ = std::sqrt(n1);
    cplx d{};
    for (auto k : idx_) d += std::conj(g_[k]) * h_[k];
    r12_ = d / r11_;
    double n2 = 0.0;
    for (auto k : idx_) n2 += std::norm(h_[k] - r12_ * g_[k] / r11_);
    r22_ = std::sqrt(n2);
  }

  const Grid& grid() const { return grid_; }
  const std::vector<cplx>& g() const { return g_; }
  const std::vector<cplx>& h() const { return h_; }

  std::pair<cplx, cplx> fit(const std::vector<cplx>& f) const {
    cplx c1{}, c2{};
    for (auto k : idx_) c1 += std::conj(g_[k]) * f[k];
    c1 /= r11_;
    for (auto k : idx_) c2 += std::conj(h_[k] - r12_ * g_[k] / r11_) * f[k];
    c2 /= r22_;
    const cplx b = c2 / r22_;
    const cplx a = (c1 - r12_ * b) / r11_;
    return {a, b};
  }

  std::vector<cplx> eval(cplx a, cplx b) const {
    std::vector<cplx> t(grid_.N);
    for (std::size_t k = 0; k < grid_.N; ++k) t[k] = a * g_[k] + b * h_[k];
    return t;
  }

  // Transform of a/(1-ix) + b/(1+ix): 2 pi a e^{-xi} on xi > 0, 2 pi b e^{xi}
  // on xi < 0, and the midpoint value at xi = 0.
  static cplx transform(cplx a, cplx b, double xi) {
    if (xi > 0.0) return 2.0 * pi * a * std::exp(-xi);
    if (xi < 0.0) return 2.0 * pi * b * std::exp(xi);
    return pi * (a + b);
  }

private:
  Grid grid_;
  std::vector<cplx> g_, h_;
  std::vector<std::size_t> idx_;
  double r11_ = 0.0, r22_ = 0.0;
  cplx r12_{};
};

inline Spectrum forward_transform(const GridFunction& f, EvalMode mode = EvalMode::Periodic) {
  const Grid& g = f.grid;
  Spectrum out{g, {}, {}, {}};
  std::vector<cplx> r = f.values;
  if (mode == EvalMode::Line) {
    FarField ff(g);
    std::tie(out.tail_plus, out.tail_minus) = ff.fit(f.values);
    const auto t = ff.eval(out.tail_plus, out.tail_minus);
    for (std::size_t k = 0; k < g.N; ++k) r[k] -= t[k];
  }
  out.values = fft::forward(r);
  const double dx = g.dx();
  for (std::size_t j = 0; j < g.N; ++j) {
    out.values[j] *= dx * detail::grid_phase(g, j);
    if (mode == EvalMode::Line) out.values[j] += FarField::transform(out.tail_plus, out.tail_minus, g.xi(j));
  }
  return out;
}

inline GridFunction inverse_transform(const Spectrum& s) {
  const Grid& g = s.grid;
  require(s.values.size() == g.N, "spectrum length must equal grid size");
  const bool tail = s.tail_plus != cplx{} || s.tail_minus != cplx{};
  std::vector<cplx> v = s.values;
  const double dx = g.dx();
  for (std::size_t j = 0; j < g.N; ++j) {
    if (tail) v[j] -= FarField::transform(s.tail_plus, s.tail_minus, g.xi(j));
    v[j] *= detail::grid_phase(g, j) / dx;
  }
  GridFunction out(g, fft::inverse(v));
  if (tail) {
    FarField ff(g);
    const auto t = ff.eval(s.tail_plus, s.tail_minus);
    for (std::size_t k = 0; k < g.N; ++k) out.values[k] += t[k];
  }
  return out;
}

// p(D) and p(D)^{-1} on a fixed grid, with symbol samples and far-field data
// computed once. Immutable after construction.
class MultiplierOperator {
public:
  MultiplierOperator(Symbol sym, const Grid& g, MultiplierOptions opt = {})
      : sym_(std::move(sym)), grid_(g), opt_(opt), p_(detail::symbol_samples(sym_, g, opt.zero_mode)) {
    if (opt_.mode == EvalMode::Line) {
      ff_ = std::make_shared<FarField>(g);
      build_closed_forms();
    }
  }

  const Symbol& symbol() const { return sym_; }
  const Grid& grid() const { return grid_; }
  const MultiplierOptions& options() const { return opt_; }
  const std::vector<cplx>& samples() const { return p_; }

  GridFunction apply(const GridFunction& f) const {
    check_grid(f);
    if (opt_.mode == EvalMode::Periodic) return periodic(f.values, p_);
    return line_apply(f.values);
  }

  // Verifies the preconditions of p(D)^{-1} once; later calls are free.
  void ensure_invertible() const {
    std::call_once(inv_->once, [this] { prepare_inverse(); });
  }

  GridFunction apply_inverse(const GridFunction& f) const {
    check_grid(f);
    ensure_invertible();
    if (opt_.mode == EvalMode::Periodic) {
      return periodic(f.values, inv_->q);
    }
    // One-sided constant part in closed form, the rest of 1/p is continuous
    // at xi = 0 and acts on the line transform of f.
    GridFunction out = inv_->dc->apply(f);
    const auto [a, b] = ff_->fit(f.values);
    const auto t = ff_->eval(a, b);
    std::vector<cplx> r(grid_.N);
    for (std::size_t k = 0; k < grid_.N; ++k) r[k] = f.values[k] - t[k];
    auto rh = fft::forward(r);
    const double dx = grid_.dx();
    for (std::size_t j = 0; j < grid_.N; ++j) {
      const cplx fh = rh[j] * dx + FarField::transform(a, b, grid_.xi(j)) * detail::grid_phase(grid_, j);
      rh[j] = inv_->q_rest[j] * fh;
    }
    const auto back = fft::inverse(rh);
    for (std::size_t k = 0; k < grid_.N; ++k) out.values[k] += back[k] / dx;
    return out;
  }

private:
  struct InverseData {
    std::once_flag once;
    std::vector<cplx> q;
    std::shared_ptr<MultiplierOperator> dc;
    std::vector<cplx> q_rest;
  };

  void prepare_inverse() const {
    if (std::abs(sym_.averaged_zero_mode()) == 0.0)
      throw std::invalid_argument("symbol has vanishing averaged zero mode");
    const auto rep = check_ellipticity(sym_);
    if (!rep.elliptic)
      throw std::invalid_argument("symbol is not elliptic (c_estimate " + std::to_string(rep.c_estimate) +
                                  " at xi = " + std::to_string(rep.argmin_xi) + ")");
    auto& d = *inv_;
    d.q.resize(grid_.N);
    for (std::size_t j = 0; j < grid_.N; ++j) {
      if (p_[j] == cplx{}) throw std::invalid_argument("symbol vanishes on a grid frequency");
      d.q[j] = 1.0 / p_[j];
    }
    if (opt_.mode != EvalMode::Line) return;
    const cplx lp = sym_.limit_plus(), lm = sym_.limit_minus();
    if (lp == cplx{} || lm == cplx{})
      throw std::invalid_argument("line-mode inverse needs nonzero one-sided limits at xi = 0");
    d.dc = std::make_shared<MultiplierOperator>(Symbol({{0.0, 1.0 / lp, 1.0 / lm, std::nullopt}}), grid_,
                                                MultiplierOptions{ZeroModeRule::Average, EvalMode::Line});
    d.q_rest.assign(grid_.N, {});
    for (std::size_t j = 1; j < grid_.N; ++j)
      d.q_rest[j] = d.q[j] - (grid_.xi(j) > 0.0 ? 1.0 / lp : 1.0 / lm);
    d.q_rest[grid_.nyquist()] = d.q[grid_.nyquist()] - 0.5 * (1.0 / lp + 1.0 / lm);
  }

  void check_grid(const GridFunction& f) const {
    require(f.grid == grid_, "grid function does not live on the operator's grid");
  }

  GridFunction periodic(const std::vector<cplx>& f, const std::vector<cplx>& m) const {
    auto fh = fft::forward(f);
    for (std::size_t j = 0; j < grid_.N; ++j) fh[j] *= m[j];
    return GridFunction(grid_, fft::inverse(fh));
  }

  // p(D)[(1-ix)^{-1}] = sum_j c+_j Gamma(m_j + 1) (1-ix)^{-(m_j+1)}, mirrored for (1+ix)^{-1}.
  void build_closed_forms() {
    cf_plus_.assign(grid_.N, {});
    cf_minus_.assign(grid_.N, {});
    for (const auto& t : sym_.terms()) {
      const double gm = std::tgamma(t.degree + 1.0);
      const double e = -(t.degree + 1.0);
      const bool integral = t.degree == std::round(t.degree);
      for (std::size_t k = 0; k < grid_.N; ++k) {
        const cplx gk = ff_->g()[k], hk = ff_->h()[k];
        const cplx gp = integral ? ipow(gk, static_cast<int>(t.degree) + 1) : std::pow(cplx(1.0, -grid_.x(k)), e);
        const cplx hp = integral ? ipow(hk, static_cast<int>(t.degree) + 1) : std::pow(cplx(1.0, grid_.x(k)), e);
        cf_plus_[k] += t.coeff_plus * gm * gp;
        cf_minus_[k] += t.coeff_minus * gm * hp;
      }
    }
  }

  static cplx ipow(cplx z, int n) {
    cplx r{1.0, 0.0};
    while (n > 0) {
      if (n & 1) r *= z;
      z *= z;
      n >>= 1;
    }
    return r;
  }

  GridFunction line_apply(const std::vector<cplx>& f) const {
    auto [a, b] = ff_->fit(f);
    const auto t = ff_->eval(a, b);
    std::vector<cplx> r(grid_.N);
    for (std::size_t k = 0; k < grid_.N; ++k) r[k] = f[k] - t[k];
    if (sym_.has_jump_at_zero()) {
      // Move the mean of the remainder into the far field so the ambiguous
      // zero mode of p never sees any mass.
      cplx sr{}, se{};
      for (std::size_t k = 0; k < grid_.N; ++k) {
        sr += r[k];
        se += (ff_->g()[k] + ff_->h()[k]) / (2.0 * pi);
      }
      const cplx cc = sr / se;
      for (std::size_t k = 0; k < grid_.N; ++k) r[k] -= cc * (ff_->g()[k] + ff_->h()[k]) / (2.0 * pi);
      a += cc / (2.0 * pi);
      b += cc / (2.0 * pi);
    }
    GridFunction out = periodic(r, p_);
    for (std::size_t k = 0; k < grid_.N; ++k) out.values[k] += a * cf_plus_[k] + b * cf_minus_[k];
    return out;
  }

  Symbol sym_;
  Grid grid_;
  MultiplierOptions opt_;
  std::vector<cplx> p_;
  std::shared_ptr<FarField> ff_;
  std::vector<cplx> cf_plus_, cf_minus_;
  std::shared_ptr<InverseData> inv_ = std::make_shared<InverseData>();
};

inline GridFunction apply_multiplier(const Symbol& sym, const GridFunction& f, MultiplierOptions opt = {}) {
  return MultiplierOperator(sym, f.grid, opt).apply(f);
}

inline GridFunction apply_multiplier(const Symbol& sym, const GridFunction& f, ZeroModeRule rule) {
  return apply_multiplier(sym, f, MultiplierOptions{rule, EvalMode::Periodic});
}

inline GridFunction apply_inverse_multiplier(const Symbol& sym, const GridFunction& f,
                                             MultiplierOptions opt = {}) {
  return MultiplierOperator(sym, f.grid, opt).apply_inverse(f);
}

inline GridFunction hilbert_transform(const GridFunction& f, EvalMode mode = EvalMode::Periodic) {
  return apply_multiplier(hilbert_symbol(), f, MultiplierOptions{ZeroModeRule::Average, mode});
}

inline GridFunction derivative(const GridFunction& f, int k, EvalMode mode = EvalMode::Periodic) {
  if (k == 0) return f;
  return apply_multiplier(derivative_symbol(k), f, MultiplierOptions{ZeroModeRule::Average, mode});
}

// g(x) = f(x + delta), with the far field shifted in closed form.
inline GridFunction translate(const GridFunction& f, double delta, EvalMode mode = EvalMode::Line) {
  const Grid& g = f.grid;
  cplx a{}, b{};
  std::vector<cplx> r = f.values;
  if (mode == EvalMode::Line) {
    FarField ff(g);
    std::tie(a, b) = ff.fit(f.values);
    const auto t = ff.eval(a, b);
    for (std::size_t k = 0; k < g.N; ++k) r[k] -= t[k];
  }
  auto rh = fft::forward(r);
  for (std::size_t j = 0; j < g.N; ++j) {
    rh[j] *= (j == g.nyquist()) ? cplx(std::cos(g.xi_max() * delta)) : std::exp(cplx(0.0, g.xi(j) * delta));
  }
  GridFunction out(g, fft::inverse(rh));
  if (mode == EvalMode::Line) {
    for (std::size_t k = 0; k < g.N; ++k) {
      const double y = g.x(k) + delta;
      out.values[k] += a / cplx(1.0, -y) + b / cplx(1.0, y);
    }
  }
  return out;
}

} // namespace nlwave

#endif
