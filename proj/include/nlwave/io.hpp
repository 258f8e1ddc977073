#ifndef NLWAVE_IO_HPP
#define NLWAVE_IO_HPP

#include "nlwave/asymptotics.hpp"
#include "nlwave/inequalities.hpp"
#include "nlwave/solver.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace nlwave::io {

using json = nlohmann::json;

// Shortest decimal that reads back to the same double.
inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  while (b < e && *b == ' ') ++b;
  auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc{} || r.ptr != e) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

// JSON has no NaN; non-finite values become null.
inline json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  require(j.is_array() && j.size() == 2, "complex value must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

// ---- Symbol ----

inline json to_json(const Symbol& s) {
  json terms = json::array();
  for (const auto& t : s.terms()) {
    json jt{{"degree", t.degree}, {"coeff_plus", to_json(t.coeff_plus)}, {"coeff_minus", to_json(t.coeff_minus)}};
    if (t.radial_coeff) jt["radial_coeff"] = to_json(*t.radial_coeff);
    terms.push_back(jt);
  }
  return {{"dimension", s.dimension()}, {"terms", terms}};
}

inline Symbol symbol_from_json(const json& j) {
  require(j.is_object() && j.contains("terms"), "symbol JSON needs a terms array");
  std::vector<HomogeneousTerm> terms;
  for (const auto& jt : j.at("terms")) {
    HomogeneousTerm t;
    t.degree = jt.at("degree").get<double>();
    if (jt.contains("radial_coeff")) {
      t.radial_coeff = complex_from_json(jt.at("radial_coeff"));
      t.coeff_plus = t.coeff_minus = *t.radial_coeff;
    }
    if (jt.contains("coeff_plus")) t.coeff_plus = complex_from_json(jt.at("coeff_plus"));
    if (jt.contains("coeff_minus")) t.coeff_minus = complex_from_json(jt.at("coeff_minus"));
    terms.push_back(t);
  }
  return Symbol(std::move(terms), j.value("dimension", 1));
}

// ---- GridFunction: CSV (x, re, im) ----

inline void write_csv(std::ostream& os, const GridFunction& f) {
  os << "x,re,im\n";
  for (std::size_t k = 0; k < f.size(); ++k)
    os << fmt(f.grid.x(k)) << ',' << fmt(f.values[k].real()) << ',' << fmt(f.values[k].imag()) << '\n';
}

// The grid is recovered from the first node and the spacing.
inline GridFunction read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,re,im", 0) != 0) throw std::invalid_argument("missing CSV header x,re,im");
  std::vector<double> xs;
  std::vector<cplx> vs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
      throw std::invalid_argument("malformed CSV row: " + line);
    xs.push_back(parse_double(a));
    vs.emplace_back(parse_double(b), parse_double(c));
  }
  require(xs.size() >= 4, "CSV holds too few rows");
  const double L = -xs.front();
  Grid g(L, xs.size());
  return GridFunction(g, std::move(vs));
}

// ---- GridFunction: binary (double L, uint64 N, then N interleaved re/im) ----

inline void write_binary(std::ostream& os, const GridFunction& f) {
  const double L = f.grid.L;
  const std::uint64_t N = f.grid.N;
  os.write(reinterpret_cast<const char*>(&L), sizeof L);
  os.write(reinterpret_cast<const char*>(&N), sizeof N);
  os.write(reinterpret_cast<const char*>(f.values.data()),
           static_cast<std::streamsize>(f.values.size() * sizeof(cplx)));
}

inline GridFunction read_binary(std::istream& is) {
  double L = 0.0;
  std::uint64_t N = 0;
  is.read(reinterpret_cast<char*>(&L), sizeof L);
  is.read(reinterpret_cast<char*>(&N), sizeof N);
  if (!is) throw std::invalid_argument("truncated binary header");
  Grid g(L, static_cast<std::size_t>(N));
  std::vector<cplx> v(g.N);
  is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(cplx)));
  if (!is) throw std::invalid_argument("truncated binary payload");
  return GridFunction(g, std::move(v));
}

template <class W, class T>
void save(const std::string& path, const T& obj, W writer, std::ios::openmode mode = std::ios::out) {
  std::ofstream os(path, mode);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  writer(os, obj);
}

// ---- analysis records ----

inline json to_json(const DecayFit& f) {
  return {{"rho", num(f.rho)},
          {"log_constant", num(f.log_constant)},
          {"window", {f.window.lo, f.window.hi}},
          {"r_squared", num(f.r_squared)},
          {"side", side_name(f.side)},
          {"nodes", f.nodes},
          {"low_confidence", f.low_confidence},
          {"zeros_in_window", f.zeros_in_window},
          {"super_algebraic", f.super_algebraic}};
}

inline void write_fit_csv(std::ostream& os, const DecayFit& f) {
  os << "log_abs_x,log_abs_f\n";
  for (std::size_t i = 0; i < f.log_x.size(); ++i) os << fmt(f.log_x[i]) << ',' << fmt(f.log_f[i]) << '\n';
}

inline json to_json(const StripEstimate& s) {
  return {{"b_est", num(s.b_est)},
          {"fit_window", {num(s.fit_window.lo), num(s.fit_window.hi)}},
          {"r_squared", num(s.r_squared)},
          {"accepted", s.accepted},
          {"nodes", s.nodes},
          {"note", s.note}};
}

inline json to_json(const BootstrapSchedule& s) {
  return {{"epsilons", s.epsilons}, {"final_exponent", s.final_exponent}, {"steps", s.steps}};
}

inline json to_json(const EllipticityReport& e) {
  return {{"c_estimate", num(e.c_estimate)},
          {"argmin_xi", e.argmin_xi},
          {"elliptic", e.elliptic},
          {"threshold", e.threshold}};
}

inline json summary_json(const RatioReport& r) {
  json branches = json::array();
  for (auto b : r.branches) branches.push_back(b == Branch::Log ? "log" : "power");
  return {{"r", r.r},
          {"d", r.d},
          {"probe_count", r.probe_xs.size()},
          {"x_max", r.probe_xs.empty() ? 0.0 : r.probe_xs.back()},
          {"sup_ratio", r.sup_ratio},
          {"sup_location", r.sup_location},
          {"max_rel_error", r.max_rel_error},
          {"binding_branch_at_x_max", branches.empty() ? json(nullptr) : branches.back()}};
}

inline void write_ratio_csv(std::ostream& os, const RatioReport& r) {
  os << "x,integral,bound,ratio\n";
  for (std::size_t i = 0; i < r.probe_xs.size(); ++i)
    os << fmt(r.probe_xs[i]) << ',' << fmt(r.integrals[i]) << ',' << fmt(r.bounds[i]) << ',' << fmt(r.ratios[i])
       << '\n';
}

inline json solve_report(const std::string& preset, const json& params, const Solution& s) {
  json hist = json::array();
  for (double h : s.residual_history) hist.push_back(num(h));
  return {{"preset", preset},
          {"params", params},
          {"iterations", s.iterations_used},
          {"residual_history", hist},
          {"converged", s.converged}};
}

} // namespace nlwave::io

#endif
