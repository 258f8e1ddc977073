#include "cli_config.hpp"
#include "nlwave/acceptance.hpp"
#include "nlwave/nlwave.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace nlwave;
using cli::json;

namespace {

struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  std::string relation; // how value compares to limit when passing
  bool passed = false;
};

struct Outcome {
  json outputs = json::object();
  std::vector<Check> checks;
};

Check at_most(std::string name, double value, double limit) {
  return {std::move(name), value, limit, "<=", std::isfinite(value) && value <= limit};
}

Check flag(std::string name, bool ok) { return {std::move(name), ok ? 1.0 : 0.0, 1.0, "==", ok}; }

double num(const json& c, const char* k) { return c.at(k).get<double>(); }
int inum(const json& c, const char* k) { return static_cast<int>(c.at(k).get<long>()); }
std::string str(const json& c, const char* k) { return c.at(k).get<std::string>(); }

Grid grid_of(const json& c) { return Grid(num(c, "L"), static_cast<std::size_t>(c.at("N").get<long>())); }

LCParams lc_of(const json& c) { return {num(c, "mu"), num(c, "nu"), num(c, "beta")}; }

GridFunction oracle_of(const json& c, const Grid& g) {
  return str(c, "preset") == "lc" ? lc_solution(lc_of(c), g) : bo_soliton(BOParams{num(c, "b")}, g);
}

// Tail exponent of the closed form: LC decays like |x|^-1, BO like |x|^-2.
double base_decay(const json& c) { return str(c, "preset") == "lc" ? 1.0 : 2.0; }

double strip_width(const json& c) { return str(c, "preset") == "lc" ? lc_of(c).b() : num(c, "b"); }

template <class T, class W>
void artifact(const fs::path& dir, const std::string& name, const T& obj, W writer, Outcome& o) {
  io::save((dir / name).string(), obj, writer);
  o.outputs["artifacts"].push_back(name);
}

void write_profile(std::ostream& os, const GridFunction& f) { io::write_csv(os, f); }

Outcome run_solve(const json& c, const fs::path& dir) {
  Outcome o;
  const Symbol sym = cli::symbol_from_params(str(c, "preset"), c);
  const auto ell = check_ellipticity(sym);
  o.outputs["ellipticity"] = io::to_json(ell);
  o.checks.push_back(flag("elliptic", ell.elliptic));
  if (!ell.elliptic) return o;

  const Grid g = grid_of(c);
  Nonlinearity F;
  F.exponent = inum(c, "exponent");
  F.coefficient = num(c, "coefficient");
  SolverConfig cfg;
  cfg.grid = g;
  cfg.max_iterations = inum(c, "max-iterations");
  cfg.residual_tol = num(c, "residual-tol");
  cfg.gamma = num(c, "gamma");
  cfg.damping = num(c, "damping");
  cfg.mode = str(c, "mode") == "line" ? EvalMode::Line : EvalMode::Periodic;
  cfg.initial_guess.amplitude = num(c, "guess-amplitude");
  cfg.initial_guess.width = num(c, "guess-width");
  if (str(c, "guess") == "oracle") cfg.initial_guess.profile = oracle_of(c, g);

  const Solution s = fixed_point_solve(sym, F, cfg);
  const json rep = io::solve_report(str(c, "preset"), json::object(), s);
  for (const char* k : {"iterations", "converged", "residual_history"}) o.outputs[k] = rep.at(k);
  o.outputs["final_residual"] = io::num(s.residual_history.back());
  o.checks.push_back(flag("converged", s.converged));
  o.checks.push_back(at_most("final_residual", s.residual_history.back(), cfg.residual_tol));

  // The closed forms solve the equation with F(u) = -u^2.
  if (str(c, "preset") != "sivashinsky" && F.exponent == 2 && F.coefficient == cplx{-1.0, 0.0}) {
    const double dist = center_and_compare(s.u, oracle_of(c, g));
    o.outputs["oracle_distance"] = io::num(dist);
    o.checks.push_back(at_most("oracle_distance", dist, num(c, "oracle-tol")));
  }
  artifact(dir, "profile.csv", s.u, write_profile, o);
  artifact(dir, "residual_history.csv", s.residual_history,
           [](std::ostream& os, const std::vector<double>& h) {
             os << "iteration,residual\n";
             for (std::size_t i = 0; i < h.size(); ++i) os << i << ',' << io::fmt(h[i]) << '\n';
           },
           o);
  return o;
}

Outcome run_residual(const json& c, const fs::path& dir) {
  Outcome o;
  const Grid g = grid_of(c);
  const auto u = oracle_of(c, g);
  const double w = num(c, "window");
  const EvalMode mode = str(c, "mode") == "line" ? EvalMode::Line : EvalMode::Periodic;
  const double res = residual(cli::symbol_from_params(str(c, "preset"), c), Nonlinearity{}, u, Interval{-w, w}, mode);
  o.outputs["residual"] = io::num(res);
  o.checks.push_back(at_most("residual", res, num(c, "tol")));
  artifact(dir, "profile.csv", u, write_profile, o);
  return o;
}

Outcome run_decay(const json& c, const fs::path& dir) {
  Outcome o;
  const auto u = oracle_of(c, grid_of(c));
  const Interval w{num(c, "window-lo"), num(c, "window-hi")};
  const double want = base_decay(c);
  o.outputs["expected_rho"] = want;
  for (Side side : {Side::Right, Side::Left}) {
    const auto fit = fit_algebraic_decay(u, w, side);
    const std::string name = side_name(side);
    o.outputs[name] = io::to_json(fit);
    o.checks.push_back(at_most("rho_error_" + name, std::abs(fit.rho - want), num(c, "tol")));
    artifact(dir, "fit_" + name + ".csv", fit, io::write_fit_csv, o);
  }
  return o;
}

Outcome run_ladder(const json& c, const fs::path& dir) {
  Outcome o;
  const auto u = oracle_of(c, grid_of(c));
  const auto rungs = derivative_decay_ladder(u, inum(c, "alpha-max"), Interval{num(c, "window-lo"), num(c, "window-hi")});
  o.outputs["rungs"] = json::array();
  for (const auto& r : rungs) {
    const double want = base_decay(c) + r.alpha;
    o.outputs["rungs"].push_back(
        {{"alpha", r.alpha}, {"expected_rho", want}, {"right", io::to_json(r.right)}, {"left", io::to_json(r.left)}});
    const std::string a = std::to_string(r.alpha);
    o.checks.push_back(at_most("rho_error_right_alpha" + a, std::abs(r.right.rho - want), num(c, "tol")));
    o.checks.push_back(at_most("rho_error_left_alpha" + a, std::abs(r.left.rho - want), num(c, "tol")));
  }
  artifact(dir, "ladder.csv", rungs,
           [](std::ostream& os, const std::vector<LadderRung>& rs) {
             os << "alpha,rho_right,rho_left,r_squared_right,r_squared_left\n";
             for (const auto& r : rs)
               os << r.alpha << ',' << io::fmt(r.right.rho) << ',' << io::fmt(r.left.rho) << ','
                  << io::fmt(r.right.r_squared) << ',' << io::fmt(r.left.r_squared) << '\n';
           },
           o);
  return o;
}

Outcome run_strip(const json& c, const fs::path&) {
  Outcome o;
  const auto est = fit_strip_width(oracle_of(c, grid_of(c)));
  const double want = strip_width(c);
  o.outputs["strip"] = io::to_json(est);
  o.outputs["expected_b"] = want;
  o.checks.push_back(flag("accepted", est.accepted));
  o.checks.push_back(at_most("relative_error", std::abs(est.b_est / want - 1.0), num(c, "tol")));
  return o;
}

Outcome run_bootstrap(const json& c, const fs::path& dir) {
  Outcome o;
  const double eps0 = num(c, "eps0");
  const int p = inum(c, "p"), d = inum(c, "d");
  const auto s = bootstrap_schedule(eps0, p, d);
  const int bound = bootstrap_step_bound(eps0, p, d);
  o.outputs = io::to_json(s);
  o.outputs["step_bound"] = bound;
  o.checks.push_back(at_most("steps", s.steps, bound));
  artifact(dir, "schedule.csv", s.epsilons,
           [](std::ostream& os, const std::vector<double>& e) {
             os << "step,epsilon\n";
             for (std::size_t i = 0; i < e.size(); ++i) os << i << ',' << io::fmt(e[i]) << '\n';
           },
           o);
  return o;
}

Outcome run_conv(const json& c, const fs::path& dir) {
  Outcome o;
  const double r = num(c, "r");
  const int d = inum(c, "d"), per = inum(c, "per-decade");
  const auto base = verify_convolution_bound(r, d, convolution_probe(num(c, "x-max"), per));
  const auto ext = verify_convolution_bound(r, d, convolution_probe(num(c, "x-extend"), per));
  QuadratureOptions fine = QuadratureOptions::refined();
  const auto ref = verify_convolution_bound(r, d, convolution_probe(num(c, "x-max"), per), fine);
  double refine = 0.0;
  for (std::size_t i = 0; i < base.ratios.size(); ++i)
    refine = std::max(refine, std::abs(ref.ratios[i] / base.ratios[i] - 1.0));
  const double drift = std::abs(ext.sup_ratio / base.sup_ratio - 1.0);
  o.outputs["base"] = io::summary_json(base);
  o.outputs["extended"] = io::summary_json(ext);
  o.outputs["drift"] = drift;
  o.outputs["refinement_change"] = refine;
  o.checks.push_back(at_most("sup_ratio_drift", drift, num(c, "drift-tol")));
  o.checks.push_back(at_most("refinement_change", refine, num(c, "refine-tol")));
  artifact(dir, "ratios.csv", base, io::write_ratio_csv, o);
  artifact(dir, "ratios_extended.csv", ext, io::write_ratio_csv, o);
  return o;
}

Outcome run_kernel(const json& c, const fs::path& dir) {
  Outcome o;
  const double r = num(c, "degree");
  const std::string b = str(c, "branch");
  const KernelBranch br = b == "even" ? KernelBranch::Even : b == "odd" ? KernelBranch::Odd : KernelBranch::Sign;
  KernelDecayOptions opt;
  opt.N = static_cast<std::size_t>(c.at("samples").get<long>());
  const auto fit = verify_kernel_decay(r, br, num(c, "width"), opt);
  // |x|^r with even integer r, and sgn(x)|x|^r with odd integer r, are smooth.
  const bool integer = r == std::floor(r);
  const bool even_r = integer && std::fmod(r, 2.0) == 0.0;
  const bool smooth = (br == KernelBranch::Even && even_r) || (br == KernelBranch::Odd && integer && !even_r);
  o.outputs["fit"] = io::to_json(fit);
  o.outputs["smooth"] = smooth;
  if (smooth) {
    o.checks.push_back(flag("super_algebraic", fit.super_algebraic));
  } else {
    o.outputs["expected_rho"] = 1.0 + r;
    o.checks.push_back(at_most("rho_error", std::abs(fit.rho - (1.0 + r)), num(c, "tol")));
  }
  artifact(dir, "fit.csv", fit, io::write_fit_csv, o);
  return o;
}

Outcome run_interp(const json& c, const fs::path&) {
  Outcome o;
  const Grid g = grid_of(c);
  const GridFunction u = str(c, "preset") == "gaussian"
                             ? GridFunction::sample(g, [](double x) { return std::exp(-x * x); })
                             : oracle_of(c, g);
  const double ratio = verify_interpolation(u, inum(c, "ell"), inum(c, "n"), num(c, "start"));
  o.outputs["ratio"] = io::num(ratio);
  o.checks.push_back(at_most("ratio", ratio, num(c, "c-max")));
  return o;
}

Outcome run_all(const json& c, const fs::path&) {
  Outcome o;
  acceptance::Options opt;
  opt.grid = grid_of(c);
  opt.seed = static_cast<std::uint64_t>(c.at("seed").get<long>());
  o.outputs["criteria"] = json::array();
  for (const auto& r : acceptance::run_all(opt)) {
    o.outputs["criteria"].push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
    o.checks.push_back(flag("criterion_" + std::to_string(r.id), r.passed));
  }
  return o;
}

Outcome dispatch(const std::string& cmd, const json& c, const fs::path& dir) {
  if (cmd == "solve") return run_solve(c, dir);
  if (cmd == "residual") return run_residual(c, dir);
  if (cmd == "decay") return run_decay(c, dir);
  if (cmd == "ladder") return run_ladder(c, dir);
  if (cmd == "strip") return run_strip(c, dir);
  if (cmd == "bootstrap") return run_bootstrap(c, dir);
  if (cmd == "verify-conv") return run_conv(c, dir);
  if (cmd == "verify-kernel") return run_kernel(c, dir);
  if (cmd == "verify-interp") return run_interp(c, dir);
  return run_all(c, dir);
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << j.dump(2) << '\n';
}

int execute(const std::string& cmd, cli::Raw raw) {
  std::string out_dir;
  if (auto it = raw.find("out-dir"); it != raw.end()) {
    out_dir = it->second;
    raw.erase(it);
  }
  const json inputs = cli::resolve(cmd, raw);
  const std::string hash = cli::config_hash(cmd, inputs);
  const fs::path dir = out_dir.empty() ? fs::path("runs") / (cmd + "-" + hash) : fs::path(out_dir);
  fs::create_directories(dir);

  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  json report{{"command", cmd}, {"config_hash", hash}, {"inputs", inputs}};
  int status = 0;
  try {
    Outcome o = dispatch(cmd, inputs, dir);
    json checks = json::array();
    bool all = true;
    for (const auto& ch : o.checks) {
      checks.push_back({{"name", ch.name},
                        {"value", io::num(ch.value)},
                        {"limit", ch.limit},
                        {"relation", ch.relation},
                        {"passed", ch.passed}});
      all = all && ch.passed;
      std::cout << (ch.passed ? "PASS " : "FAIL ") << ch.name << ": " << io::fmt(ch.value) << ' ' << ch.relation
                << ' ' << io::fmt(ch.limit) << '\n';
    }
    report["outputs"] = o.outputs;
    report["checks"] = checks;
    report["passed"] = all;
    status = all ? 0 : 1;
  } catch (const NumericalError& e) {
    report["outputs"] = json::object();
    report["checks"] = json::array();
    report["error"] = e.what();
    report["passed"] = false;
    std::cerr << "numerical failure: " << e.what() << '\n';
    status = 1;
  }
  write_json(dir / "report.json", report);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_json(dir / "run_meta.json",
             {{"started_utc", started}, {"finished_utc", utc_now()}, {"elapsed_seconds", secs}, {"out_dir", dir.string()}});
  std::cout << "report: " << (dir / "report.json").string() << '\n';
  return status;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal semilinear elliptic equation lab"};
  app.require_subcommand(1);
  // Node-based storage keeps option targets stable.
  std::map<std::string, std::map<std::string, std::string>> flags;
  std::map<std::string, std::string> config_path;
  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : cli::commands()) {
    auto* sub = app.add_subcommand(cmd);
    subs[cmd] = sub;
    sub->add_option("--config", config_path[cmd], "flat key = value or JSON config file (flags override it)");
    auto keys = cli::schema(cmd);
    keys.push_back({"out-dir", "", "output directory (default runs/<command>-<hash>)"});
    for (const auto& k : keys) {
      std::string help = k.help;
      if (!k.fallback.empty()) help += " [" + k.fallback + "]";
      sub->add_option("--" + k.name, flags[cmd][k.name], help);
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (const auto& cmd : cli::commands()) {
    auto* sub = subs[cmd];
    if (!sub->parsed()) continue;
    try {
      cli::Raw raw;
      if (!config_path[cmd].empty()) raw = cli::load_config_file(config_path[cmd], cmd);
      for (const auto& [k, v] : flags[cmd])
        if (sub->get_option("--" + k)->count() > 0) raw[k] = v;
      return execute(cmd, raw);
    } catch (const cli::UsageError& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return 2;
    } catch (const std::invalid_argument& e) {
      std::cerr << "invalid input: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}
