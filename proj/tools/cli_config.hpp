#ifndef NLWAVE_CLI_CONFIG_HPP
#define NLWAVE_CLI_CONFIG_HPP

#include "nlwave/nlwave.hpp"

#include <algorithm>
#include <cmath>

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace nlwave::cli {

using json = nlohmann::json;

// Bad configuration: reported with exit status 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct KeySpec {
  std::string name;
  std::string fallback; // default, "auto" when it depends on other keys
  std::string help;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"solve",         "residual",      "decay",         "ladder", "strip",
                                          "bootstrap",     "verify-conv",   "verify-kernel", "verify-interp", "all"};
  return c;
}

inline std::vector<KeySpec> preset_keys(const std::string& preset) {
  return {{"preset", preset, "lc, bo or sivashinsky"},
          {"mu", "-1", "LC parameter mu < 0"},
          {"nu", "1", "LC or Sivashinsky parameter nu"},
          {"beta", "1", "LC parameter beta"},
          {"b", "1", "BO parameter b > 0"},
          {"c", "0", "Sivashinsky wave speed c"}};
}

inline std::vector<KeySpec> grid_keys() {
  return {{"L", "400", "grid half-length"}, {"N", "131072", "grid size (even)"}};
}

inline std::vector<KeySpec> schema(const std::string& cmd) {
  std::vector<KeySpec> k;
  auto add = [&](std::vector<KeySpec> more) { k.insert(k.end(), more.begin(), more.end()); };
  if (cmd == "solve") {
    add(preset_keys("bo"));
    add(grid_keys());
    add({{"max-iterations", "200", "iteration cap"},
         {"residual-tol", "auto", "stop when the residual drops below this (lc 1e-6, else 1e-8)"},
         {"gamma", "auto", "Petviashvili exponent (default p/(p-1))"},
         {"damping", "1", "relaxation in (0, 1]"},
         {"guess", "auto", "gaussian or oracle (lc: oracle, else gaussian)"},
         {"guess-amplitude", "auto", "Gaussian amplitude (sign of the coefficient)"},
         {"guess-width", "2", "Gaussian width"},
         {"mode", "auto", "periodic or line (lc: line, else periodic)"},
         {"exponent", "2", "F(u) = coefficient u^exponent"},
         {"coefficient", "-1", "real coefficient of F"},
         {"oracle-tol", "1e-3", "allowed centered distance to the closed form"}});
  } else if (cmd == "residual") {
    add(preset_keys("lc"));
    add(grid_keys());
    add({{"window", "auto", "half-width of the window (default L/2)"},
         {"mode", "line", "periodic or line"},
         {"tol", "1e-4", "allowed residual"}});
  } else if (cmd == "decay" || cmd == "ladder") {
    add(preset_keys("lc"));
    add(grid_keys());
    add({{"window-lo", "auto", "inner edge of the fit window (default L/8)"},
         {"window-hi", "auto", "outer edge of the fit window (default L/2)"},
         {"tol", cmd == "decay" ? "0.05" : "0.1", "allowed exponent error"}});
    if (cmd == "ladder") add({{"alpha-max", "3", "highest derivative order"}});
  } else if (cmd == "strip") {
    add(preset_keys("lc"));
    add(grid_keys());
    add({{"tol", "0.02", "allowed relative error of b_est"}});
  } else if (cmd == "bootstrap") {
    add({{"eps0", "0.3", "starting exponent"}, {"p", "2", "nonlinearity degree"}, {"d", "1", "dimension"}});
  } else if (cmd == "verify-conv") {
    add({{"r", "0.5", "weight exponent r > 0"},
         {"d", "1", "dimension (1, 2 or 3)"},
         {"x-max", "1e4", "probe range [0, x-max]"},
         {"x-extend", "1e5", "extended probe range"},
         {"per-decade", "8", "probe points per decade"},
         {"drift-tol", "0.05", "allowed relative sup-ratio drift"},
         {"refine-tol", "1e-6", "allowed ratio change under quadrature refinement"}});
  } else if (cmd == "verify-kernel") {
    add({{"degree", "0", "homogeneity degree r"},
         {"branch", "sign", "even, odd or sign"},
         {"width", "1", "cutoff half-width W"},
         {"samples", "131072", "transform grid size"},
         {"tol", "0.1", "allowed exponent error"}});
  } else if (cmd == "verify-interp") {
    add(preset_keys("gaussian"));
    add(grid_keys());
    add({{"ell", "1", "lower derivative order"},
         {"n", "2", "upper derivative order"},
         {"start", "0", "left end of the half-line"},
         {"c-max", "2", "declared bound on the ratio"}});
  } else if (cmd == "all") {
    add(grid_keys());
    add({{"seed", "20240613", "seed for randomized criteria"}});
  } else {
    throw UsageError("unknown command '" + cmd + "'");
  }
  return k;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  std::string t = s.substr(b, e - b + 1);
  if (t.size() >= 2 && (t.front() == '"' || t.front() == '\'') && t.back() == t.front()) t = t.substr(1, t.size() - 2);
  return t;
}

using Raw = std::map<std::string, std::string>;

inline std::string json_scalar(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return io::fmt(v.get<double>());
  throw UsageError("config key '" + key + "' must be a scalar");
}

// Flat "key = value" lines (# comments) or a JSON object. A report.json is
// accepted too: its "inputs" block is the resolved configuration.
inline Raw parse_config_text(const std::string& text, const std::string& command) {
  Raw raw;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const std::exception& e) {
      throw UsageError(std::string("invalid JSON config: ") + e.what());
    }
    if (j.contains("inputs") && j.at("inputs").is_object()) {
      if (j.contains("command") && j.at("command") != command)
        throw UsageError("report was produced by command '" + j.at("command").get<std::string>() + "'");
      j = j.at("inputs");
    }
    for (const auto& [k, v] : j.items()) raw[k] = json_scalar(v, k);
    return raw;
  }
  std::istringstream is(text);
  std::string line;
  int no = 0;
  while (std::getline(is, line)) {
    ++no;
    if (const auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(no) + ": expected key = value");
    const std::string k = trim(line.substr(0, eq));
    if (k.empty()) throw UsageError("config line " + std::to_string(no) + ": empty key");
    if (raw.count(k)) throw UsageError("config key '" + k + "' given twice");
    raw[k] = trim(line.substr(eq + 1));
  }
  return raw;
}

inline Raw load_config_file(const std::string& path, const std::string& command) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str(), command);
}

// 64-bit FNV-1a
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 15];
  return s;
}

// Typed view over the merged raw values with defaults and validation.
class Resolver {
public:
  Resolver(std::string command, Raw raw) : cmd_(std::move(command)), raw_(std::move(raw)) {
    for (const auto& k : schema(cmd_)) spec_[k.name] = k;
    for (const auto& [k, v] : raw_)
      if (!spec_.count(k)) throw UsageError("unknown key '" + k + "' for command " + cmd_);
  }

  bool given(const std::string& k) const { return raw_.count(k) > 0; }

  std::string text(const std::string& k) const {
    if (auto it = raw_.find(k); it != raw_.end()) return it->second;
    return spec_.at(k).fallback;
  }

  bool is_auto(const std::string& k) const { return text(k) == "auto"; }

  double real(const std::string& k) const {
    try {
      const double v = io::parse_double(text(k));
      if (!std::isfinite(v)) throw std::invalid_argument("");
      return v;
    } catch (const std::invalid_argument&) {
      throw UsageError("key '" + k + "' needs a finite number, got '" + text(k) + "'");
    }
  }

  double positive(const std::string& k) const {
    const double v = real(k);
    if (!(v > 0.0)) throw UsageError("key '" + k + "' must be positive");
    return v;
  }

  long integer(const std::string& k) const {
    const double v = real(k);
    if (v != std::floor(v) || std::abs(v) > 1e15) throw UsageError("key '" + k + "' needs an integer");
    return static_cast<long>(v);
  }

  std::string choice(const std::string& k, const std::set<std::string>& allowed) const {
    const std::string v = text(k);
    if (!allowed.count(v)) throw UsageError("key '" + k + "' has invalid value '" + v + "'");
    return v;
  }

  // Preset parameters that the chosen preset does not use must not be set.
  json preset_params(const std::string& preset) const {
    static const std::map<std::string, std::vector<std::string>> used{
        {"lc", {"mu", "nu", "beta"}}, {"bo", {"b"}}, {"sivashinsky", {"nu", "c"}}, {"gaussian", {}}};
    const auto& mine = used.at(preset);
    for (const char* k : {"mu", "nu", "beta", "b", "c"})
      if (given(k) && std::find(mine.begin(), mine.end(), k) == mine.end())
        throw UsageError(std::string("key '") + k + "' does not apply to preset " + preset);
    json p = json::object();
    for (const auto& k : mine) p[k] = real(k);
    return p;
  }

  json grid() const {
    const double L = positive("L");
    const long N = integer("N");
    if (N < 64 || N % 2 != 0 || N > (1L << 24)) throw UsageError("N must be even and in [64, 2^24]");
    return {{"L", L}, {"N", N}};
  }

private:
  std::string cmd_;
  Raw raw_;
  std::map<std::string, KeySpec> spec_;
};

inline Symbol symbol_from_params(const std::string& preset, const json& p) {
  std::map<std::string, double> m;
  for (const char* k : {"mu", "nu", "beta", "b", "c"})
    if (p.contains(k)) m[k] = p.at(k).get<double>();
  return preset_symbol(parse_preset(preset), m);
}

// Fully resolved flat configuration: every default and "auto" is replaced
// by its concrete value.
inline json resolve(const std::string& cmd, const Raw& raw) {
  Resolver r(cmd, raw);
  json c = json::object();
  auto oracle_preset = [&]() {
    const auto pr = r.choice("preset", {"lc", "bo", "sivashinsky"});
    if (pr == "sivashinsky") throw UsageError("command " + cmd + " needs a preset with a closed form (lc or bo)");
    return pr;
  };
  auto window = [&]() {
    const double L = c.at("L").get<double>();
    const double lo = r.is_auto("window-lo") ? L / 8.0 : r.positive("window-lo");
    const double hi = r.is_auto("window-hi") ? L / 2.0 : r.positive("window-hi");
    if (!(hi > lo) || hi > L) throw UsageError("fit window must satisfy 0 < lo < hi <= L");
    c["window-lo"] = lo;
    c["window-hi"] = hi;
  };
  auto validate_params = [&](const std::string& preset, const json& params) {
    try {
      if (preset == "lc") LCParams{params.at("mu").get<double>(), params.at("nu").get<double>(), params.at("beta").get<double>()}
                                .validate();
      if (preset == "bo") BOParams{params.at("b").get<double>()}.validate();
      if (preset == "sivashinsky") symbol_from_params(preset, params);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  };

  if (cmd == "solve") {
    const auto pr = r.choice("preset", {"lc", "bo", "sivashinsky"});
    c["preset"] = pr;
    c.update(r.preset_params(pr));
    validate_params(pr, c);
    c.update(r.grid());
    c["max-iterations"] = r.integer("max-iterations");
    if (c["max-iterations"].get<long>() < 0) throw UsageError("max-iterations must be nonnegative");
    c["residual-tol"] = r.is_auto("residual-tol") ? (pr == "lc" ? 1e-6 : 1e-8) : r.positive("residual-tol");
    const long p = r.integer("exponent");
    if (p < 2) throw UsageError("exponent must be >= 2");
    c["exponent"] = p;
    c["coefficient"] = r.real("coefficient");
    if (c["coefficient"].get<double>() == 0.0) throw UsageError("coefficient must be nonzero");
    c["gamma"] = r.is_auto("gamma") ? static_cast<double>(p) / (p - 1) : r.real("gamma");
    if (!(c["gamma"].get<double>() > 1.0)) throw UsageError("gamma must exceed 1");
    c["damping"] = r.positive("damping");
    if (c["damping"].get<double>() > 1.0) throw UsageError("damping must lie in (0, 1]");
    c["guess"] = r.is_auto("guess") ? (pr == "lc" ? "oracle" : "gaussian") : r.choice("guess", {"gaussian", "oracle"});
    if (c["guess"] == "oracle" && pr == "sivashinsky") throw UsageError("sivashinsky has no closed form to start from");
    c["guess-amplitude"] = r.is_auto("guess-amplitude") ? (c["coefficient"].get<double>() < 0 ? -1.0 : 1.0)
                                                        : r.real("guess-amplitude");
    c["guess-width"] = r.positive("guess-width");
    c["mode"] = r.is_auto("mode") ? (pr == "lc" ? "line" : "periodic") : r.choice("mode", {"periodic", "line"});
    c["oracle-tol"] = r.positive("oracle-tol");
  } else if (cmd == "residual") {
    const auto pr = oracle_preset();
    c["preset"] = pr;
    c.update(r.preset_params(pr));
    validate_params(pr, c);
    c.update(r.grid());
    c["window"] = r.is_auto("window") ? c["L"].get<double>() / 2.0 : r.positive("window");
    c["mode"] = r.choice("mode", {"periodic", "line"});
    c["tol"] = r.positive("tol");
  } else if (cmd == "decay" || cmd == "ladder" || cmd == "strip") {
    const auto pr = oracle_preset();
    c["preset"] = pr;
    c.update(r.preset_params(pr));
    validate_params(pr, c);
    c.update(r.grid());
    c["tol"] = r.positive("tol");
    if (cmd != "strip") window();
    if (cmd == "ladder") {
      c["alpha-max"] = r.integer("alpha-max");
      if (c["alpha-max"].get<long>() < 0 || c["alpha-max"].get<long>() > 8) throw UsageError("alpha-max must be in [0, 8]");
    }
  } else if (cmd == "bootstrap") {
    c["eps0"] = r.positive("eps0");
    c["p"] = r.integer("p");
    c["d"] = r.integer("d");
    if (c["p"].get<long>() < 2) throw UsageError("p must be >= 2");
    if (c["d"].get<long>() < 1) throw UsageError("d must be positive");
  } else if (cmd == "verify-conv") {
    c["r"] = r.positive("r");
    c["d"] = r.integer("d");
    if (c["d"].get<long>() < 1 || c["d"].get<long>() > 3) throw UsageError("d must be 1, 2 or 3");
    c["x-max"] = r.positive("x-max");
    c["x-extend"] = r.positive("x-extend");
    if (!(c["x-extend"].get<double>() > c["x-max"].get<double>()) || c["x-max"].get<double>() <= 0.01)
      throw UsageError("need 0.01 < x-max < x-extend");
    c["per-decade"] = r.integer("per-decade");
    if (c["per-decade"].get<long>() < 1) throw UsageError("per-decade must be positive");
    c["drift-tol"] = r.positive("drift-tol");
    c["refine-tol"] = r.positive("refine-tol");
  } else if (cmd == "verify-kernel") {
    c["degree"] = r.real("degree");
    if (c["degree"].get<double>() < 0.0) throw UsageError("degree must be nonnegative");
    c["branch"] = r.choice("branch", {"even", "odd", "sign"});
    if (c["branch"] == "sign" && c["degree"].get<double>() != 0.0) throw UsageError("the sign branch has degree 0");
    c["width"] = r.positive("width");
    c["samples"] = r.integer("samples");
    if (c["samples"].get<long>() < 64 || c["samples"].get<long>() % 2) throw UsageError("samples must be even and >= 64");
    c["tol"] = r.positive("tol");
  } else if (cmd == "verify-interp") {
    const auto pr = r.choice("preset", {"gaussian", "lc", "bo"});
    c["preset"] = pr;
    c.update(r.preset_params(pr));
    validate_params(pr, c);
    c.update(r.grid());
    c["ell"] = r.integer("ell");
    c["n"] = r.integer("n");
    if (c["n"].get<long>() < 1 || c["ell"].get<long>() < 0 || c["ell"].get<long>() > c["n"].get<long>())
      throw UsageError("need 0 <= ell <= n and n >= 1");
    c["start"] = r.real("start");
    if (c["start"].get<double>() >= c["L"].get<double>() / 2.0) throw UsageError("start must lie below L/2");
    c["c-max"] = r.positive("c-max");
  } else if (cmd == "all") {
    c.update(r.grid());
    c["seed"] = r.integer("seed");
  }
  return c;
}

// Keys of the resolved config are the flag names, so it feeds back unchanged.
inline std::string config_hash(const std::string& cmd, const json& resolved) {
  return hex64(fnv1a(cmd + '\n' + resolved.dump()));
}

} // namespace nlwave::cli

#endif
