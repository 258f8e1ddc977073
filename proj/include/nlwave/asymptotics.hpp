#ifndef NLWAVE_ASYMPTOTICS_HPP
#define NLWAVE_ASYMPTOTICS_HPP

#include "nlwave/spectral.hpp"

#include <charconv>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace nlwave {

enum class Side { Left, Right, Both };

inline std::string side_name(Side s) {
  switch (s) {
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::Both: return "both";
  }
  return "";
}

struct DecayFit {
  double rho = 0.0;          // |f| ~ C |x|^{-rho}
  double log_constant = 0.0; // log C
  Interval window;           // in |x|
  double r_squared = 0.0;
  Side side = Side::Right;
  std::size_t nodes = 0;
  bool low_confidence = false;
  bool zeros_in_window = false;
  bool super_algebraic = false;
  std::vector<double> log_x, log_f;
};

struct LineFit {
  double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};

inline LineFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "line fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0.0, "line fit needs distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  const double ssr = syy - f.slope * sxy;
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
  return f;
}

namespace detail {

// Super-algebraic decay shows up as a local exponent that keeps growing:
// compare the inner and outer halves of the log window.
inline bool accelerating(const std::vector<double>& lx, const std::vector<double>& ly) {
  if (lx.size() < 16) return false;
  const auto [mn, mx] = std::minmax_element(lx.begin(), lx.end());
  const double mid = 0.5 * (*mn + *mx);
  std::vector<double> ax, ay, bx, by;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    (lx[i] < mid ? ax : bx).push_back(lx[i]);
    (lx[i] < mid ? ay : by).push_back(ly[i]);
  }
  if (ax.size() < 8 || bx.size() < 8) return false;
  const double inner = -least_squares_line(ax, ay).slope;
  const double outer = -least_squares_line(bx, by).slope;
  return outer > inner + 0.25 + 0.25 * std::abs(inner);
}

} // namespace detail

inline DecayFit fit_algebraic_decay(const GridFunction& f, std::optional<Interval> window = std::nullopt,
                                    Side side = Side::Right) {
  const Grid& g = f.grid;
  const Interval w = window.value_or(Interval{g.L / 8.0, g.L / 2.0});
  require(w.lo > 0.0 && w.hi > w.lo, "decay window must satisfy 0 < lo < hi");
  DecayFit fit;
  fit.window = w;
  fit.side = side;
  std::vector<double> mags;
  for (std::size_t k = 0; k < g.N; ++k) {
    const double x = g.x(k);
    const bool ok = (side != Side::Left && w.contains(x)) || (side != Side::Right && w.contains(-x));
    if (!ok) continue;
    fit.log_x.push_back(std::log(std::abs(x)));
    mags.push_back(std::abs(f.values[k]));
  }
  fit.nodes = mags.size();
  if (fit.nodes < 16) throw std::invalid_argument("decay window holds fewer than 16 nodes");
  // Nodes at the rounding floor of the whole profile carry no tail signal.
  const double rounding = 1e-13 * f.sup_norm();
  std::size_t zeros = 0, floored = 0;
  for (double m : mags) {
    zeros += (m == 0.0);
    floored += (m <= rounding);
  }
  fit.zeros_in_window = zeros > 0;
  const double floor = fit.zeros_in_window ? 1e-30 : 0.0;
  for (double m : mags) fit.log_f.push_back(std::log(m + floor));

  const auto lf = least_squares_line(fit.log_x, fit.log_f);
  fit.rho = -lf.slope;
  fit.log_constant = lf.intercept;
  fit.r_squared = lf.r_squared;
  fit.super_algebraic = 2 * floored >= fit.nodes || detail::accelerating(fit.log_x, fit.log_f);
  fit.low_confidence = fit.r_squared < 0.99 || fit.zeros_in_window || fit.super_algebraic;
  return fit;
}

struct LadderRung {
  int alpha = 0;
  DecayFit right;
  DecayFit left;
};

// Fraction of the spectrum's peak left in the top eighth of the band.
inline double spectral_tail_level(const GridFunction& u) {
  const Spectrum s = forward_transform(u, EvalMode::Line);
  const double peak = s.peak();
  if (peak == 0.0) return 0.0;
  double tail = 0.0;
  for (std::size_t j = 0; j < s.grid.N; ++j)
    if (std::abs(s.grid.xi(j)) >= 0.875 * s.grid.xi_max()) tail = std::max(tail, std::abs(s.values[j]));
  return tail / peak;
}

inline std::vector<LadderRung> derivative_decay_ladder(const GridFunction& u, int alpha_max,
                                                       std::optional<Interval> window = std::nullopt) {
  require(alpha_max >= 0, "alpha_max must be nonnegative");
  const double level = spectral_tail_level(u);
  if (level > 1e-10)
    throw NumericalError("unresolved spectral tail (" + std::to_string(level) +
                         " of peak); increase N");
  std::vector<LadderRung> out;
  for (int a = 0; a <= alpha_max; ++a) {
    const GridFunction d = derivative(u, a, EvalMode::Line);
    out.push_back({a, fit_algebraic_decay(d, window, Side::Right), fit_algebraic_decay(d, window, Side::Left)});
  }
  return out;
}

struct StripEstimate {
  double b_est = std::numeric_limits<double>::quiet_NaN();
  Interval fit_window; // in |xi|
  double r_squared = 0.0;
  bool accepted = false;
  std::string note;
  std::size_t nodes = 0;
};

// Exponential rate of |f^(xi)| where it falls from 1e-2 to 1e-12 of its peak.
inline StripEstimate fit_strip_width(const GridFunction& f) {
  const Spectrum s = forward_transform(f, EvalMode::Line);
  const Grid& g = s.grid;
  const double peak = s.peak();
  StripEstimate est;
  if (peak == 0.0) {
    est.note = "zero spectrum";
    return est;
  }
  std::vector<double> xs, ys;
  // Walk outward on each side and keep the first contiguous band in range.
  for (int sign : {1, -1}) {
    bool entered = false;
    for (std::size_t n = 1; n < g.N / 2; ++n) {
      const std::size_t j = sign > 0 ? n : g.N - n;
      const double rel = std::abs(s.values[j]) / peak;
      if (rel > 1e-2) {
        if (entered) break;
        continue;
      }
      if (rel < 1e-12) break;
      entered = true;
      xs.push_back(std::abs(g.xi(j)));
      ys.push_back(std::log(std::abs(s.values[j])));
    }
  }
  est.nodes = xs.size();
  if (xs.size() < 8) {
    est.note = "fewer than 8 spectral samples in the fit band";
    return est;
  }
  est.fit_window = {*std::min_element(xs.begin(), xs.end()), *std::max_element(xs.begin(), xs.end())};
  const auto lf = least_squares_line(xs, ys);
  est.r_squared = lf.r_squared;

  // A straight line in (|xi|, log|f^|) is the signature of a strip; algebraic
  // and Gaussian spectra bend one way or the other.
  const double mid = 0.5 * (est.fit_window.lo + est.fit_window.hi);
  std::vector<double> ax, ay, bx, by;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    (xs[i] < mid ? ax : bx).push_back(xs[i]);
    (xs[i] < mid ? ay : by).push_back(ys[i]);
  }
  bool bent = false;
  if (ax.size() >= 4 && bx.size() >= 4) {
    const double s1 = least_squares_line(ax, ay).slope, s2 = least_squares_line(bx, by).slope;
    bent = std::abs(s2 - s1) > 0.05 * std::abs(lf.slope);
  }
  if (lf.slope >= 0.0) {
    est.note = "spectrum does not decay";
  } else if (est.r_squared < 0.99 || bent) {
    est.note = "spectrum is not exponential over the fit band";
  } else {
    est.accepted = true;
    est.b_est = -lf.slope;
  }
  return est;
}

struct BootstrapSchedule {
  std::vector<double> epsilons;
  double final_exponent = 0.0;
  int steps = 0;
};

namespace detail {

// Nearest double to the 15-significant-digit decimal of v, so that hand
// recursions such as 0.3 * 1.5 = 0.45 come out as the decimal literal.
inline double decimal15(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
  *res.ptr = '\0';
  return std::strtod(buf, nullptr);
}

} // namespace detail

// eps <- eps (p+1)/2 while p eps <= d.
inline BootstrapSchedule bootstrap_schedule(double eps0, int p, int d) {
  require(eps0 > 0.0 && std::isfinite(eps0), "eps0 must be positive");
  require(p >= 2, "p must be >= 2");
  require(d >= 1, "d must be positive");
  const double q = 0.5 * (p + 1);
  BootstrapSchedule s;
  s.final_exponent = d;
  double eps = detail::decimal15(eps0);
  s.epsilons.push_back(eps);
  while (p * eps <= d) {
    eps = detail::decimal15(eps * q);
    s.epsilons.push_back(eps);
  }
  s.steps = static_cast<int>(s.epsilons.size());
  return s;
}

inline int bootstrap_step_bound(double eps0, int p, int d) {
  const double q = 0.5 * (p + 1);
  return static_cast<int>(std::ceil(std::log(d / eps0) / std::log(q))) + 1;
}

} // namespace nlwave

#endif
