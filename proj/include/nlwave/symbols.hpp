#ifndef NLWAVE_SYMBOLS_HPP
#define NLWAVE_SYMBOLS_HPP

#include "nlwave/core.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nlwave {

// How a symbol is evaluated at xi = 0, where one-sided limits may differ.
enum class ZeroModeRule { Average, Plus, Minus, Zero };

// Positively homogeneous term c_{+-} |xi|^m. In d = 1 the two one-sided
// coefficients fix it completely; radial_coeff is the d >= 1 form c |xi|^m.
struct HomogeneousTerm {
  double degree = 0.0;
  cplx coeff_plus{0.0, 0.0};
  cplx coeff_minus{0.0, 0.0};
  std::optional<cplx> radial_coeff;

  static HomogeneousTerm radial(double m, cplx c) { return {m, c, c, c}; }

  cplx eval(double xi) const {
    if (xi == 0.0) return degree == 0.0 ? 0.5 * (coeff_plus + coeff_minus) : cplx{};
    const double a = std::pow(std::abs(xi), degree);
    return (xi > 0.0 ? coeff_plus : coeff_minus) * a;
  }

  // Smooth at the origin iff it is a polynomial: even degree with equal
  // coefficients or odd degree with opposite ones.
  bool smooth_at_zero() const {
    const double r = std::round(degree);
    if (std::abs(degree - r) > 0.0) return false;
    const long k = static_cast<long>(r);
    if (k % 2 == 0) return coeff_plus == coeff_minus;
    return coeff_plus == -coeff_minus;
  }
};

struct EllipticityReport {
  double c_estimate = 0.0;
  double argmin_xi = 0.0;
  bool elliptic = false;
  double threshold = 0.0;
};

class Symbol {
public:
  Symbol() = default;

  explicit Symbol(std::vector<HomogeneousTerm> terms, int dimension = 1)
      : terms_(std::move(terms)), dimension_(dimension) {
    require(dimension_ >= 1, "symbol dimension must be positive");
    require(!terms_.empty(), "symbol needs at least one term");
    for (std::size_t j = 0; j < terms_.size(); ++j) {
      require(std::isfinite(terms_[j].degree) && terms_[j].degree >= 0.0,
              "term degree must be finite and nonnegative");
      if (j > 0)
        require(terms_[j].degree > terms_[j - 1].degree,
                "term degrees must be strictly increasing");
      if (dimension_ > 1)
        require(terms_[j].radial_coeff.has_value(),
                "terms in dimension > 1 must be radial");
    }
  }

  const std::vector<HomogeneousTerm>& terms() const { return terms_; }
  int dimension() const { return dimension_; }
  double order() const { return terms_.back().degree; }

  cplx eval(double xi) const {
    require(xi != 0.0, "eval at xi = 0 needs a zero-mode rule");
    cplx s{};
    for (const auto& t : terms_) s += t.eval(xi);
    return s;
  }

  cplx eval(double xi, ZeroModeRule rule) const {
    if (xi != 0.0) return eval(xi);
    switch (rule) {
      case ZeroModeRule::Plus: return limit_plus();
      case ZeroModeRule::Minus: return limit_minus();
      case ZeroModeRule::Zero: return {};
      case ZeroModeRule::Average: break;
    }
    return averaged_zero_mode();
  }

  // Radial evaluation c |xi|^m summed, for |xi| = rho in any dimension.
  cplx eval_radial(double rho) const {
    cplx s{};
    for (const auto& t : terms_)
      s += t.radial_coeff.value_or(t.coeff_plus) * std::pow(rho, t.degree);
    return s;
  }

  cplx limit_plus() const { return degree_zero().first; }
  cplx limit_minus() const { return degree_zero().second; }
  cplx averaged_zero_mode() const { return 0.5 * (limit_plus() + limit_minus()); }

  bool has_jump_at_zero() const { return limit_plus() != limit_minus(); }

  // p(-xi) = conj(p(xi)) for all xi, i.e. the convolution kernel is real.
  bool conjugate_symmetric() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const HomogeneousTerm& t) {
      return t.coeff_minus == std::conj(t.coeff_plus);
    });
  }

private:
  std::pair<cplx, cplx> degree_zero() const {
    if (terms_.empty() || terms_.front().degree != 0.0) return {{}, {}};
    return {terms_.front().coeff_plus, terms_.front().coeff_minus};
  }

  std::vector<HomogeneousTerm> terms_;
  int dimension_ = 1;
};

// Signed probe grid: n log-spaced points per sign in [lo, hi].
inline std::vector<double> log_probe(std::size_t n_per_sign = 4096, double lo = 1e-6,
                                     double hi = 1e6) {
  require(n_per_sign >= 2 && lo > 0.0 && hi > lo, "invalid probe specification");
  std::vector<double> out;
  out.reserve(2 * n_per_sign);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t k = 0; k < n_per_sign; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n_per_sign - 1);
    out.push_back(std::exp(a + t * (b - a)));
  }
  for (std::size_t k = 0; k < n_per_sign; ++k) out.push_back(-out[k]);
  return out;
}

inline EllipticityReport check_ellipticity(const Symbol& sym, const std::vector<double>& probe,
                                           double threshold = 1e-8) {
  require(!probe.empty(), "empty probe grid");
  require(threshold > 0.0, "ellipticity threshold must be positive");
  const double M = sym.order();
  auto ratio = [&](double xi) {
    return std::abs(sym.eval(xi)) / std::pow(japanese(xi), M);
  };
  EllipticityReport rep;
  rep.threshold = threshold;
  rep.c_estimate = std::numeric_limits<double>::infinity();
  for (double xi : probe) {
    if (xi == 0.0) continue;
    const double v = ratio(xi);
    if (v < rep.c_estimate) {
      rep.c_estimate = v;
      rep.argmin_xi = xi;
    }
  }
  require(std::isfinite(rep.c_estimate), "probe grid has no nonzero points");

  // A zero of p between two probe points would otherwise be missed by up to
  // the grid spacing, so polish the minimum inside its bracket.
  std::vector<double> side;
  for (double xi : probe)
    if (xi != 0.0 && sgn(xi) == sgn(rep.argmin_xi)) side.push_back(std::abs(xi));
  std::sort(side.begin(), side.end());
  const auto it = std::lower_bound(side.begin(), side.end(), std::abs(rep.argmin_xi));
  if (side.size() >= 3 && it != side.begin() && std::next(it) != side.end()) {
    const double s = sgn(rep.argmin_xi);
    auto f = [&](double a) { return ratio(s * a); };
    auto [amin, vmin] =
        boost::math::tools::brent_find_minima(f, *std::prev(it), *std::next(it), 52);
    if (vmin < rep.c_estimate) {
      rep.c_estimate = vmin;
      rep.argmin_xi = s * amin;
    }
  }
  rep.elliptic = rep.c_estimate > threshold;
  return rep;
}

inline EllipticityReport check_ellipticity(const Symbol& sym) {
  return check_ellipticity(sym, log_probe());
}

enum class Preset { LC, BO, Sivashinsky };

inline Preset parse_preset(const std::string& s) {
  if (s == "lc" || s == "LC") return Preset::LC;
  if (s == "bo" || s == "BO") return Preset::BO;
  if (s == "sivashinsky" || s == "Sivashinsky") return Preset::Sivashinsky;
  throw std::invalid_argument("unknown preset '" + s + "'");
}

inline std::string preset_name(Preset p) {
  switch (p) {
    case Preset::LC: return "lc";
    case Preset::BO: return "bo";
    case Preset::Sivashinsky: return "sivashinsky";
  }
  return "";
}

// p = -c - i mu sign(xi) + beta |xi| - i nu xi with c = beta mu / nu.
inline Symbol lc_symbol(double mu, double nu, double beta) {
  require(nu != 0.0, "LC preset requires nu != 0");
  const double c = beta * mu / nu;
  return Symbol({{0.0, {-c, -mu}, {-c, mu}, std::nullopt},
                 {1.0, {beta, -nu}, {beta, nu}, std::nullopt}});
}

// p = 1/b + |xi|, the travelling Benjamin-Ono operator with c = -1/b.
inline Symbol bo_symbol(double b) {
  require(b > 0.0, "BO preset requires b > 0");
  return Symbol({{0.0, {1.0 / b, 0.0}, {1.0 / b, 0.0}, std::nullopt},
                 {1.0, {1.0, 0.0}, {1.0, 0.0}, std::nullopt}});
}

// beta = 0, mu = -1: p = -c + i sign(xi) - i nu xi.
inline Symbol sivashinsky_symbol(double nu, double c) {
  return Symbol({{0.0, {-c, 1.0}, {-c, -1.0}, std::nullopt},
                 {1.0, {0.0, -nu}, {0.0, nu}, std::nullopt}});
}

inline double param_or(const std::map<std::string, double>& params, const std::string& key,
                       std::optional<double> fallback = std::nullopt) {
  if (auto it = params.find(key); it != params.end()) return it->second;
  if (fallback) return *fallback;
  throw std::invalid_argument("missing preset parameter '" + key + "'");
}

inline Symbol preset_symbol(Preset preset, const std::map<std::string, double>& params) {
  switch (preset) {
    case Preset::LC:
      return lc_symbol(param_or(params, "mu"), param_or(params, "nu"), param_or(params, "beta"));
    case Preset::BO: return bo_symbol(param_or(params, "b"));
    case Preset::Sivashinsky:
      return sivashinsky_symbol(param_or(params, "nu"), param_or(params, "c"));
  }
  throw std::invalid_argument("unknown preset");
}

inline Symbol hilbert_symbol() { return Symbol({{0.0, {0.0, -1.0}, {0.0, 1.0}, std::nullopt}}); }

// (i xi)^k as a single homogeneous term.
inline Symbol derivative_symbol(int k) {
  require(k >= 0, "derivative order must be nonnegative");
  static const cplx powers[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  const cplx ip = powers[k % 4];
  const cplx im = std::conj(ip);
  return Symbol({{static_cast<double>(k), ip, im, std::nullopt}});
}

} // namespace nlwave

#endif
