#ifndef NLWAVE_GRID_HPP
#define NLWAVE_GRID_HPP

#include "nlwave/core.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace nlwave {

// Uniform grid on [-L, L) with period 2L. Frequencies are kept in FFT order:
// index j carries n = j for j < N/2 and n = j - N otherwise.
struct Grid {
  double L = 400.0;
  std::size_t N = std::size_t{1} << 17;

  Grid() = default;
  Grid(double half_length, std::size_t size) : L(half_length), N(size) {
    require(L > 0.0 && std::isfinite(L), "grid half-length must be positive");
    require(N >= 4 && N % 2 == 0, "grid size must be even and >= 4");
  }

  double dx() const { return 2.0 * L / static_cast<double>(N); }
  double x(std::size_t k) const { return -L + dx() * static_cast<double>(k); }

  long mode(std::size_t j) const {
    const long n = static_cast<long>(j);
    return j < N / 2 ? n : n - static_cast<long>(N);
  }
  double xi(std::size_t j) const { return pi * static_cast<double>(mode(j)) / L; }
  double xi_max() const { return pi * static_cast<double>(N / 2) / L; }
  std::size_t nyquist() const { return N / 2; }

  std::vector<double> nodes() const {
    std::vector<double> v(N);
    for (std::size_t k = 0; k < N; ++k) v[k] = x(k);
    return v;
  }
  std::vector<double> frequencies() const {
    std::vector<double> v(N);
    for (std::size_t j = 0; j < N; ++j) v[j] = xi(j);
    return v;
  }

  bool operator==(const Grid& o) const { return L == o.L && N == o.N; }
};

struct GridFunction {
  Grid grid;
  std::vector<cplx> values;

  GridFunction() = default;
  GridFunction(Grid g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    require(values.size() == grid.N, "grid function length must equal grid size");
  }
  explicit GridFunction(Grid g) : grid(g), values(g.N) {}

  template <class F>
  static GridFunction sample(const Grid& g, F&& f) {
    GridFunction out(g);
    for (std::size_t k = 0; k < g.N; ++k) out.values[k] = cplx(f(g.x(k)));
    return out;
  }

  std::size_t size() const { return values.size(); }
  cplx operator[](std::size_t k) const { return values[k]; }

  double sup_norm() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double sup_norm(const Interval& window) const {
    double m = 0.0;
    for (std::size_t k = 0; k < grid.N; ++k)
      if (window.contains(grid.x(k))) m = std::max(m, std::abs(values[k]));
    return m;
  }
  // Trapezoidal L^2 norm, exact for periodic samples.
  double l2_norm() const {
    double s = 0.0;
    for (const auto& v : values) s += std::norm(v);
    return std::sqrt(s * grid.dx());
  }
  double imag_sup() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v.imag()));
    return m;
  }
  bool is_real() const {
    return std::all_of(values.begin(), values.end(), [](cplx v) { return v.imag() == 0.0; });
  }
  GridFunction real_part() const {
    GridFunction out = *this;
    for (auto& v : out.values) v = v.real();
    return out;
  }
};

inline GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require(a.grid == b.grid, "grid functions live on different grids");
  GridFunction out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.values[k] -= b.values[k];
  return out;
}

inline GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require(a.grid == b.grid, "grid functions live on different grids");
  GridFunction out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.values[k] += b.values[k];
  return out;
}

inline GridFunction operator*(cplx s, const GridFunction& a) {
  GridFunction out = a;
  for (auto& v : out.values) v *= s;
  return out;
}

// Discrete pairing <f, g> = dx sum f conj(g).
inline cplx inner(const GridFunction& f, const GridFunction& g) {
  require(f.grid == g.grid, "grid functions live on different grids");
  cplx s{};
  for (std::size_t k = 0; k < f.size(); ++k) s += f.values[k] * std::conj(g.values[k]);
  return s * f.grid.dx();
}

// Spectral samples approximating f^(xi_n) = int e^{-i x xi_n} f(x) dx, FFT order.
// tail_plus/tail_minus hold the far-field coefficients a, b of a/(1-ix) + b/(1+ix)
// when the transform was taken in line mode; they are zero otherwise.
struct Spectrum {
  Grid grid;
  std::vector<cplx> values;
  cplx tail_plus{};
  cplx tail_minus{};

  double peak() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }
};

enum class WeightKind { V, W };

// v_r(x) = <x>^r ; w_r(x) = min{<x>^r / log(1 + <x>), <x>^d}.
struct WeightSpec {
  WeightKind kind = WeightKind::V;
  double r = 0.0;
  int d = 1;

  double operator()(double x) const {
    require(r >= 0.0 && d >= 1, "weight needs r >= 0 and d >= 1");
    const double jx = japanese(x);
    const double vr = std::pow(jx, r);
    if (kind == WeightKind::V) return vr;
    return std::min(vr / std::log1p(jx), std::pow(jx, d));
  }
};

inline double weighted_sup_norm(const GridFunction& f, const WeightSpec& w, const Interval& window) {
  require(window.lo <= window.hi, "empty window");
  require(window.lo >= -f.grid.L - 1e-12 && window.hi <= f.grid.L + 1e-12,
          "window must lie inside [-L, L]");
  double m = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double x = f.grid.x(k);
    if (!window.contains(x)) continue;
    any = true;
    m = std::max(m, w(x) * std::abs(f.values[k]));
  }
  if (!any) throw std::invalid_argument("window contains no grid nodes");
  return m;
}

} // namespace nlwave

#endif
