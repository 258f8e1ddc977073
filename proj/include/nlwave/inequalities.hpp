#ifndef NLWAVE_INEQUALITIES_HPP
#define NLWAVE_INEQUALITIES_HPP

#include "nlwave/asymptotics.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <functional>
#include <set>

namespace nlwave {

enum class Branch { Log, Power };

struct RatioReport {
  double r = 0.0;
  int d = 1;
  std::vector<double> probe_xs;
  std::vector<double> integrals;
  std::vector<double> bounds;
  std::vector<double> ratios;
  std::vector<Branch> branches; // which term of the bound is the max
  double sup_ratio = 0.0;
  double sup_location = 0.0;
  double max_rel_error = 0.0; // largest quadrature error estimate seen
};

struct QuadratureOptions {
  double tolerance = 1e-11;  // requested relative accuracy per piece
  double acceptance = 1e-8;  // reported error above this fails
  unsigned max_depth = 25;

  // Tenfold tighter. Requests much below this sit under the roundoff floor of
  // the error estimate and bisect to max_depth.
  static QuadratureOptions refined() {
    QuadratureOptions o;
    o.tolerance = 1e-12;
    return o;
  }
};

namespace detail {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

inline QuadResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                                   const QuadratureOptions& opt) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, opt.max_depth,
                                                                                  opt.tolerance, &err);
  return {v, err};
}

inline QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                        const QuadratureOptions& opt) {
  boost::math::quadrature::exp_sinh<double> q(12);
  double err = 0.0, l1 = 0.0;
  const double v = q.integrate([&](double t) { return f(a + t); }, 0.0,
                               std::numeric_limits<double>::infinity(), opt.tolerance, &err, &l1);
  return {v, err};
}

// Integral over [0, inf) or R with breakpoints, finite pieces by adaptive
// Gauss-Kronrod and the unbounded ends by exp-sinh.
inline QuadResult integrate_split(const std::function<double(double)>& f, std::set<double> pts, bool two_sided,
                                  const QuadratureOptions& opt) {
  QuadResult total;
  const std::vector<double> p(pts.begin(), pts.end());
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const auto q = integrate_finite(f, p[i], p[i + 1], opt);
    total.value += q.value;
    total.error += q.error * std::abs(q.value);
  }
  const auto right = integrate_to_infinity(f, p.back(), opt);
  total.value += right.value;
  total.error += right.error * std::abs(right.value);
  if (two_sided) {
    const auto left = integrate_to_infinity([&](double t) { return f(-t); }, -p.front(), opt);
    total.value += left.value;
    total.error += left.error * std::abs(left.value);
  }
  total.error /= std::abs(total.value);
  return total;
}

} // namespace detail

// Angular integral of <x - y>^{-d} over the sphere |y| = rho with |x| = X.
// A - B = 1 + (X - rho)^2 and A + B = 1 + (X + rho)^2.
inline double angular_integral(int d, double X, double rho) {
  const double am = 1.0 + (X - rho) * (X - rho);
  const double ap = 1.0 + (X + rho) * (X + rho);
  if (d == 2) return 2.0 * pi / std::sqrt(am * ap);
  if (d == 3) {
    const double A = 0.5 * (am + ap), B = 2.0 * X * rho;
    const double t = B / A;
    if (t < 1e-2) {
      // Series of (1-t)^{-1/2} - (1+t)^{-1/2} avoids the cancellation.
      const double t2 = t * t;
      return 4.0 * pi * std::pow(A, -1.5) *
             (1.0 + t2 * (5.0 / 8.0 + t2 * (63.0 / 128.0 + t2 * 429.0 / 1024.0)));
    }
    return 2.0 * pi * (2.0 / B) * (1.0 / std::sqrt(am) - 1.0 / std::sqrt(ap));
  }
  throw std::invalid_argument("angular_integral supports d = 2 or 3");
}

// I(x) = int <x - y>^{-d} <y>^{-r} dy, split at |y| = |x|/2, |x|, 2|x|.
inline detail::QuadResult convolution_integral(double x, double r, int d, const QuadratureOptions& opt = {}) {
  const double X = std::abs(x);
  if (d == 1) {
    auto f = [=](double y) { return std::pow(japanese(X - y), -1.0) * std::pow(japanese(y), -r); };
    std::set<double> pts{-1.0, 0.0, 1.0};
    if (X > 0.0) pts = {-2.0 * X, -0.5 * X, 0.0, 0.5 * X, X - 1.0, X, X + 1.0, 2.0 * X};
    return detail::integrate_split(f, pts, true, opt);
  }
  require(d == 2 || d == 3, "convolution bound supports d = 1, 2, 3");
  auto f = [=](double rho) { return std::pow(rho, d - 1) * std::pow(japanese(rho), -r) * angular_integral(d, X, rho); };
  std::set<double> pts{0.0, 1.0};
  if (X > 0.0) {
    pts = {0.0, 0.5 * X, X, X + 1.0, 2.0 * X};
    if (X > 1.0) pts.insert(X - 1.0);
  }
  return detail::integrate_split(f, pts, false, opt);
}

// B(x) = max{log(1 + <x>) / <x>^r, <x>^{-d}}
inline std::pair<double, Branch> convolution_bound(double x, double r, int d) {
  const double jx = japanese(x);
  const double lg = std::log1p(jx) / std::pow(jx, r);
  const double pw = std::pow(jx, -d);
  return lg >= pw ? std::make_pair(lg, Branch::Log) : std::make_pair(pw, Branch::Power);
}

// 0 followed by per_decade log-spaced points from x_min up to x_max.
inline std::vector<double> convolution_probe(double x_max, int per_decade = 8, double x_min = 1e-2) {
  require(x_max > x_min && x_min > 0.0 && per_decade >= 1, "invalid probe range");
  std::vector<double> xs{0.0};
  const double a = std::log10(x_min), b = std::log10(x_max);
  const int n = static_cast<int>(std::ceil((b - a) * per_decade - 1e-9));
  for (int k = 0; k <= n; ++k) xs.push_back(std::pow(10.0, std::min(b, a + static_cast<double>(k) / per_decade)));
  return xs;
}

inline RatioReport verify_convolution_bound(double r, int d, const std::vector<double>& probe,
                                            const QuadratureOptions& opt = {}) {
  require(r > 0.0, "convolution bound needs r > 0");
  require(d >= 1 && d <= 3, "convolution bound supports d = 1, 2, 3");
  require(!probe.empty(), "empty probe grid");
  RatioReport rep;
  rep.r = r;
  rep.d = d;
  for (double x : probe) {
    const auto q = convolution_integral(x, r, d, opt);
    if (!std::isfinite(q.value) || q.error > opt.acceptance)
      throw NumericalError("quadrature did not reach relative tolerance at x = " + std::to_string(x));
    const auto [B, br] = convolution_bound(x, r, d);
    rep.probe_xs.push_back(x);
    rep.integrals.push_back(q.value);
    rep.bounds.push_back(B);
    rep.ratios.push_back(q.value / B);
    rep.branches.push_back(br);
    rep.max_rel_error = std::max(rep.max_rel_error, q.error);
    if (rep.ratios.back() > rep.sup_ratio) {
      rep.sup_ratio = rep.ratios.back();
      rep.sup_location = x;
    }
  }
  return rep;
}

enum class KernelBranch { Even, Odd, Sign };

inline std::string kernel_branch_name(KernelBranch b) {
  switch (b) {
    case KernelBranch::Even: return "even";
    case KernelBranch::Odd: return "odd";
    case KernelBranch::Sign: return "sign";
  }
  return "";
}

struct KernelDecayOptions {
  std::size_t N = std::size_t{1} << 17;
  Interval xi_window{200.0, 2000.0}; // in units of xi * W
};

// exp(-1 / (1 - (x/W)^2)) on |x| < W
inline double smooth_bump(double x, double W) {
  const double t = x / W;
  return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
}

inline double homogeneous_factor(double x, double r, KernelBranch b) {
  switch (b) {
    case KernelBranch::Even: return x == 0.0 ? (r == 0.0 ? 1.0 : 0.0) : std::pow(std::abs(x), r);
    case KernelBranch::Odd: return x == 0.0 ? 0.0 : sgn(x) * std::pow(std::abs(x), r);
    case KernelBranch::Sign: return sgn(x);
  }
  return 0.0;
}

// Decay exponent of the envelope of |(chi f)^(xi)|, expected 1 + r.
inline DecayFit verify_kernel_decay(double r, KernelBranch branch, double cutoff_width,
                                    const KernelDecayOptions& opt = {}) {
  require(r >= 0.0, "kernel degree must be nonnegative");
  require(branch != KernelBranch::Sign || r == 0.0, "the sign branch has degree 0");
  require(cutoff_width > 0.0, "cutoff width must be positive");
  require(opt.xi_window.lo > 0.0 && opt.xi_window.hi > opt.xi_window.lo, "invalid frequency window");
  const double W = cutoff_width;
  const Grid g(W, opt.N);
  // Trapezoid sampling must resolve the top of the fit window well below Nyquist.
  if (opt.xi_window.hi / W * g.dx() > 0.1)
    throw NumericalError("kernel transform unresolved: increase N for this frequency window");

  const GridFunction chi_f =
      GridFunction::sample(g, [&](double x) { return smooth_bump(x, W) * homogeneous_factor(x, r, branch); });
  const Spectrum s = forward_transform(chi_f, EvalMode::Periodic);

  const std::size_t half = g.N / 2;
  std::vector<double> env(half, 0.0);
  double run = 0.0;
  for (std::size_t n = half - 1; n >= 1; --n) {
    run = std::max(run, std::abs(s.values[n]));
    env[n] = run;
  }
  const double peak = s.peak();

  DecayFit fit;
  fit.side = Side::Right;
  fit.window = {opt.xi_window.lo / W, opt.xi_window.hi / W};
  std::size_t in_window = 0;
  for (std::size_t n = 1; n < half; ++n) {
    const double xi = g.xi(n);
    if (!fit.window.contains(xi)) continue;
    ++in_window;
    if (env[n] <= 1e-13 * peak) continue; // rounding floor
    fit.log_x.push_back(std::log(xi));
    fit.log_f.push_back(std::log(env[n]));
  }
  fit.nodes = fit.log_x.size();
  if (in_window < 16) throw NumericalError("frequency window holds fewer than 16 samples");
  const bool floored = 2 * fit.nodes < in_window;
  if (fit.nodes >= 16) {
    const auto lf = least_squares_line(fit.log_x, fit.log_f);
    fit.rho = -lf.slope;
    fit.log_constant = lf.intercept;
    fit.r_squared = lf.r_squared;
  } else {
    fit.rho = std::numeric_limits<double>::infinity();
  }
  fit.super_algebraic = floored || detail::accelerating(fit.log_x, fit.log_f);
  fit.low_confidence = fit.r_squared < 0.99 || fit.super_algebraic;
  return fit;
}

struct InterpolationOptions {
  EvalMode mode = EvalMode::Line;
  std::optional<double> window_end; // defaults to L/2
};

// ||D^l u|| / (||u||^{1 - l/n} ||D^n u||^{l/n}) with sup norms over [a, end].
inline double verify_interpolation(const GridFunction& u, int ell, int n, double half_line_start,
                                   const InterpolationOptions& opt = {}) {
  require(n >= 1 && ell >= 0 && ell <= n, "interpolation needs 0 <= ell <= n and n >= 1");
  const Grid& g = u.grid;
  const Interval I{half_line_start, opt.window_end.value_or(0.5 * g.L)};
  require(I.hi > I.lo, "interpolation interval is empty");
  const double scale = u.sup_norm();
  // Sup norms below rounding level of a spectral k-th derivative count as 0.
  auto norm_k = [&](int k) {
    const double v = derivative(u, k, opt.mode).sup_norm(I);
    return v <= 1e-12 * scale * std::pow(g.xi_max(), k) ? 0.0 : v;
  };
  const double num = norm_k(ell);
  if (num == 0.0) return 0.0;
  const double t = static_cast<double>(ell) / n;
  const double den = std::pow(norm_k(0), 1.0 - t) * std::pow(norm_k(n), t);
  if (den == 0.0) throw NumericalError("interpolation denominator underflows while numerator does not");
  return num / den;
}

} // namespace nlwave

#endif
