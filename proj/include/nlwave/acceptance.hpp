#ifndef NLWAVE_ACCEPTANCE_HPP
#define NLWAVE_ACCEPTANCE_HPP

#include "nlwave/asymptotics.hpp"
#include "nlwave/inequalities.hpp"
#include "nlwave/oracles.hpp"
#include "nlwave/solver.hpp"

#include <functional>
#include <random>
#include <sstream>

namespace nlwave::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
};

struct Options {
  Grid grid{400.0, std::size_t{1} << 17};
  std::uint64_t seed = 20240613;
};

namespace detail {

inline std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline CriterionResult guarded(int id, std::string title, const std::function<bool(std::string&)>& body) {
  CriterionResult r{id, std::move(title), false, {}};
  try {
    r.passed = body(r.detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  return r;
}

} // namespace detail

inline CriterionResult lc_residual(const Options& o) {
  return detail::guarded(1, "LC closed form solves the conservative equation", [&](std::string& d) {
    const LCParams p{-1.0, 1.0, 1.0};
    double identity = 0.0;
    for (double x = -50.0; x <= 50.0; x += 0.25) identity = std::max(identity, std::abs(lc_identity_residual(p, x)));
    const double res = residual(p.symbol(), Nonlinearity{}, lc_solution(p, o.grid));
    d = "residual " + detail::num(res) + " (tol 1e-4), rational identity " + detail::num(identity);
    return res <= 1e-4 && identity <= 1e-12;
  });
}

inline CriterionResult bo_residual(const Options& o) {
  return detail::guarded(2, "BO closed form solves -cu + Hu' = -u^2", [&](std::string& d) {
    const BOParams p{1.0};
    double identity = 0.0;
    for (double x = -50.0; x <= 50.0; x += 0.25) identity = std::max(identity, std::abs(bo_identity_residual(p, x)));
    const double res = residual(p.symbol(), Nonlinearity{}, bo_soliton(p, o.grid));
    d = "residual " + detail::num(res) + " (tol 1e-4), rational identity " + detail::num(identity);
    return res <= 1e-4 && identity <= 1e-12;
  });
}

inline CriterionResult solver_convergence(const Options& o) {
  return detail::guarded(3, "Petviashvili solve of BO(b=1) from a Gaussian", [&](std::string& d) {
    const BOParams p{1.0};
    SolverConfig cfg;
    cfg.grid = o.grid;
    cfg.initial_guess.amplitude = -1.0;
    cfg.initial_guess.width = 2.0;
    const Solution s = fixed_point_solve(p.symbol(), Nonlinearity{}, cfg);
    const double dist = center_and_compare(s.u, bo_soliton(p, o.grid));
    d = "iterations " + std::to_string(s.iterations_used) + ", residual " + detail::num(s.residual_history.back()) +
        ", centered distance " + detail::num(dist);
    return s.converged && s.iterations_used <= 200 && s.residual_history.back() <= 1e-8 && dist <= 1e-3;
  });
}

inline CriterionResult lc_decay(const Options& o) {
  return detail::guarded(4, "LC tail exponent is 1 on both sides", [&](std::string& d) {
    const auto u = lc_solution(LCParams{-1.0, 1.0, 1.0}, o.grid);
    const auto r = fit_algebraic_decay(u, Interval{50.0, 200.0}, Side::Right);
    const auto l = fit_algebraic_decay(u, Interval{50.0, 200.0}, Side::Left);
    d = "rho right " + detail::num(r.rho) + ", left " + detail::num(l.rho) + " (1 +- 0.05)";
    return std::abs(r.rho - 1.0) <= 0.05 && std::abs(l.rho - 1.0) <= 0.05;
  });
}

inline CriterionResult ladder(const Options& o) {
  return detail::guarded(5, "LC derivative ladder exponents are 1 + alpha", [&](std::string& d) {
    const auto u = lc_solution(LCParams{-1.0, 1.0, 1.0}, o.grid);
    const auto rungs = derivative_decay_ladder(u, 3, Interval{50.0, 200.0});
    bool ok = true;
    for (const auto& r : rungs) {
      const double want = 1.0 + r.alpha;
      ok = ok && std::abs(r.right.rho - want) <= 0.1 && std::abs(r.left.rho - want) <= 0.1;
      d += (r.alpha ? ", " : "") + std::string("a=") + std::to_string(r.alpha) + ": " + detail::num(r.right.rho) +
           "/" + detail::num(r.left.rho);
    }
    return ok;
  });
}

inline CriterionResult strip(const Options& o) {
  return detail::guarded(6, "Fourier exponential rate recovers the strip half-width", [&](std::string& d) {
    const auto lc = fit_strip_width(lc_solution(LCParams{-1.0, 1.0, 1.0}, o.grid));
    const auto bo = fit_strip_width(bo_soliton(BOParams{2.0}, o.grid));
    d = "LC b_est " + detail::num(lc.b_est) + " (b=1), BO b_est " + detail::num(bo.b_est) + " (b=2), tol 2%";
    return lc.accepted && bo.accepted && std::abs(lc.b_est - 1.0) <= 0.02 && std::abs(bo.b_est - 2.0) <= 0.04;
  });
}

inline CriterionResult bootstrap(const Options& o) {
  return detail::guarded(7, "Bootstrap schedule and its step bound", [&](std::string& d) {
    const auto s = bootstrap_schedule(0.3, 2, 1);
    const bool exact = s.epsilons == std::vector<double>{0.3, 0.45, 0.675} && s.steps == 3;
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> pd(2, 7), dd(1, 4);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int violations = 0;
    for (int t = 0; t < 100; ++t) {
      const int p = pd(rng), dim = dd(rng);
      const double eps0 = dim * (1e-3 + (1.0 - 2e-3) * u01(rng));
      const auto sch = bootstrap_schedule(eps0, p, dim);
      if (sch.steps > bootstrap_step_bound(eps0, p, dim)) ++violations;
    }
    d = std::string("(0.3,2,1) ") + (exact ? "exact" : "mismatch") + ", bound violations " +
        std::to_string(violations) + "/100";
    return exact && violations == 0;
  });
}

inline CriterionResult convolution(const Options&) {
  return detail::guarded(8, "Weighted convolution bound: sup-ratio drift and quadrature stability", [&](std::string& d) {
    bool ok = true;
    for (double r : {0.5, 1.0, 3.0}) {
      const auto a = verify_convolution_bound(r, 1, convolution_probe(1e4));
      const auto b = verify_convolution_bound(r, 1, convolution_probe(1e5));
      QuadratureOptions fine = QuadratureOptions::refined();
      const auto c = verify_convolution_bound(r, 1, convolution_probe(1e4), fine);
      double stab = 0.0;
      for (std::size_t i = 0; i < a.ratios.size(); ++i)
        stab = std::max(stab, std::abs(c.ratios[i] / a.ratios[i] - 1.0));
      const double drift = std::abs(b.sup_ratio / a.sup_ratio - 1.0);
      ok = ok && drift < 0.05 && stab < 1e-6;
      d += (d.empty() ? "" : "; ") + std::string("r=") + detail::num(r) + " drift " + detail::num(drift) +
           " refine " + detail::num(stab);
    }
    return ok;
  });
}

inline CriterionResult kernel(const Options&) {
  return detail::guarded(9, "Homogeneous-cutoff kernel decay exponents", [&](std::string& d) {
    const auto s = verify_kernel_decay(0.0, KernelBranch::Sign, 1.0);
    const auto a = verify_kernel_decay(1.0, KernelBranch::Even, 1.0);
    d = "chi sign " + detail::num(s.rho) + " (1 +- 0.1), chi |x| " + detail::num(a.rho) + " (2 +- 0.1)";
    return std::abs(s.rho - 1.0) <= 0.1 && std::abs(a.rho - 2.0) <= 0.1;
  });
}

inline CriterionResult spectral_infrastructure(const Options& o) {
  return detail::guarded(10, "Round trip, H^2 = -(Id - mean) and Parseval", [&](std::string& d) {
    const Grid& g = o.grid;
    const auto f = GridFunction::sample(g, [](double x) { return std::exp(-x * x / 8.0) * std::cos(x); });
    double rt = 0.0;
    for (const Symbol& sym : {LCParams{-1.0, 1.0, 1.0}.symbol(), BOParams{1.0}.symbol()}) {
      const MultiplierOperator op(sym, g);
      rt = std::max(rt, (op.apply_inverse(op.apply(f)) - f).sup_norm() / f.sup_norm());
    }
    const auto h2 = hilbert_transform(hilbert_transform(f));
    cplx mean{};
    for (auto v : f.values) mean += v;
    mean /= static_cast<double>(g.N);
    double herr = 0.0;
    for (std::size_t k = 0; k < g.N; ++k) herr = std::max(herr, std::abs(h2.values[k] + f.values[k] - mean));
    herr /= f.sup_norm();

    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> nd;
    GridFunction z(g);
    for (auto& v : z.values) v = {nd(rng), nd(rng)};
    const Spectrum zs = forward_transform(z);
    double energy = 0.0;
    for (auto v : zs.values) energy += std::norm(v);
    energy /= 2.0 * g.L;
    const double l2 = z.l2_norm();
    const double pars = std::abs(energy / (l2 * l2) - 1.0);
    d = "round trip " + detail::num(rt) + ", H^2 " + detail::num(herr) + ", Parseval " + detail::num(pars);
    return rt <= 1e-10 && herr <= 1e-10 && pars <= 1e-12;
  });
}

inline CriterionResult ellipticity(const Options&) {
  return detail::guarded(11, "Ellipticity gate", [&](std::string& d) {
    const auto lc = check_ellipticity(LCParams{-1.0, 1.0, 1.0}.symbol());
    const auto bo = check_ellipticity(BOParams{1.0}.symbol());
    const auto sv = check_ellipticity(sivashinsky_symbol(1.0, 0.0));
    d = "LC c " + detail::num(lc.c_estimate) + ", BO c " + detail::num(bo.c_estimate) + ", Sivashinsky c " +
        detail::num(sv.c_estimate) + " at xi " + detail::num(sv.argmin_xi);
    return lc.elliptic && bo.elliptic && !sv.elliptic && std::abs(std::abs(sv.argmin_xi) - 1.0) <= 1e-3;
  });
}

inline std::vector<CriterionResult> run_all(const Options& o = {}) {
  return {lc_residual(o), bo_residual(o), solver_convergence(o), lc_decay(o), ladder(o), strip(o),
          bootstrap(o),   convolution(o), kernel(o),             spectral_infrastructure(o), ellipticity(o)};
}

} // namespace nlwave::acceptance

#endif
