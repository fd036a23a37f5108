#include "wavescope/config.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "wavescope/io.hpp"

namespace wavescope {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ConfigText parse_config_text(const std::string& text, const std::string& origin) {
  ConfigText cfg;
  std::string section = "run";
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        fail("ParseError", origin + ":" + std::to_string(lineno) +
                               ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        fail("ParseError", origin + ":" + std::to_string(lineno) +
                               ": empty section name");
      }
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail("ParseError", origin + ":" + std::to_string(lineno) +
                             ": expected key = value in section [" + section + "]");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      fail("ParseError", origin + ":" + std::to_string(lineno) + ": empty key");
    }
    auto& sec = cfg.sections[section];
    if (sec.count(key)) {
      fail("ParseError", origin + ":" + std::to_string(lineno) +
                             ": duplicate key '" + key + "' in section [" +
                             section + "]");
    }
    sec[key] = {value, lineno};
  }
  return cfg;
}

bool ConfigText::has(const std::string& sec, const std::string& key) const {
  auto it = sections.find(sec);
  return it != sections.end() && it->second.count(key) > 0;
}

std::string ConfigText::get(const std::string& sec, const std::string& key,
                            const std::string& fallback) const {
  auto it = sections.find(sec);
  if (it == sections.end()) return fallback;
  auto jt = it->second.find(key);
  return jt == it->second.end() ? fallback : jt->second.first;
}

double ConfigText::get_num(const std::string& sec, const std::string& key,
                           double fallback) const {
  if (!has(sec, key)) return fallback;
  const std::string v = get(sec, key, "");
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') {
    fail("ParseError", "section [" + sec + "] key '" + key +
                           "': not a number: '" + v + "'");
  }
  return x;
}

long long ConfigText::get_int(const std::string& sec, const std::string& key,
                              long long fallback) const {
  const double x = get_num(sec, key, static_cast<double>(fallback));
  if (x != std::floor(x)) {
    fail("ParseError", "section [" + sec + "] key '" + key + "': not an integer");
  }
  return static_cast<long long>(x);
}

namespace {

void validate(const RunConfig& c) {
  static const std::set<std::string> commands = {"solve", "fbi-check",
                                                 "three-sphere", "chain",
                                                 "stability"};
  if (!commands.count(c.command)) {
    fail("ValidationError", "unknown command '" + c.command + "'");
  }
  if (!(c.rho0 > 0.0)) fail("ValidationError", "rho0 must be positive");
  if (!(c.E >= 1.0)) fail("ValidationError", "E must be >= 1");
  const double lam = c.anisotropy_kind == "identity"
                         ? 1.0
                         : std::min({c.a11, c.a22, 1.0 / c.a11, 1.0 / c.a22});
  if (!(lam > 0.0 && lam <= 1.0)) {
    fail("ValidationError", "ellipticity lambda must lie in (0, 1]");
  }
  if (!(c.c_cfl > 0.0 && c.c_cfl <= 0.75)) {
    fail("ValidationError", "c_cfl must lie in (0, 0.75]");
  }
  if (!(c.T > 0.0)) fail("ValidationError", "T must be positive");
  if (!(c.t1 >= c.rho0)) fail("ValidationError", "t1 must be >= rho0");
  if (!(c.vartheta2 > 0.0 && c.vartheta2 <= 1.0)) {
    fail("ValidationError", "vartheta2 must lie in (0, 1]");
  }
  if (!(c.beta1 >= 1.0)) fail("ValidationError", "beta1 must be >= 1");
  if (!(c.C_F >= 2.0)) fail("ValidationError", "C_F must be >= 2");
  if (!(c.sigma_bar > 0.0 && c.sigma_bar <= 1.0)) {
    fail("ValidationError", "sigma_bar must lie in (0, 1]");
  }
  if (!(c.d0_frac > 0.0 && c.d0_frac <= 1.0)) {
    fail("ValidationError", "d0_frac must lie in (0, 1]");
  }
  if (c.nx < 9 || c.ny < 9) fail("ValidationError", "grid too small (min 9x9)");
  if (c.rungs < 0) fail("ValidationError", "rungs must be >= 0");
}

}  // namespace

RunConfig parse_config_string(const std::string& text, const std::string& origin) {
  const ConfigText t = parse_config_text(text, origin);

  // rho0 carries the unit; multiple declarations must agree.
  double rho0 = -1.0;
  for (const auto& [sec, kv] : t.sections) {
    auto it = kv.find("rho0");
    if (it == kv.end()) continue;
    const double v = std::strtod(it->second.first.c_str(), nullptr);
    if (rho0 < 0.0) {
      rho0 = v;
    } else if (v != rho0) {
      fail("ValidationError",
           "rho0 declared twice with different values (section [" + sec + "])");
    }
  }

  RunConfig c;
  auto track = [&](const std::string& sec, const std::string& key) {
    if (!t.has(sec, key)) c.defaulted.push_back(sec + "." + key);
  };

  c.command = t.get("run", "command", "solve");
  track("run", "command");
  c.out_dir = t.get("run", "out", c.out_dir);
  track("run", "out");
  c.seed = static_cast<unsigned long long>(t.get_int("run", "seed", 1));
  track("run", "seed");
  c.threads = static_cast<int>(t.get_int("run", "threads", 1));
  track("run", "threads");

  c.domain_kind = t.get("domain", "kind", c.domain_kind);
  c.charts_csv = t.get("domain", "charts", c.charts_csv);
  c.length = t.get_num("domain", "length", c.length);
  c.height = t.get_num("domain", "height", c.height);
  c.rho0 = rho0 > 0.0 ? rho0 : c.rho0;
  c.E = t.get_num("domain", "E", c.E);
  for (const char* k : {"kind", "length", "height", "rho0", "E"}) track("domain", k);

  c.anisotropy_kind = t.get("anisotropy", "kind", c.anisotropy_kind);
  c.a11 = t.get_num("anisotropy", "a11", c.a11);
  c.a22 = t.get_num("anisotropy", "a22", c.a22);
  if (t.has("anisotropy", "lambda")) {
    const double lam = t.get_num("anisotropy", "lambda", 1.0);
    if (!(lam > 0.0 && lam <= 1.0)) {
      fail("ValidationError", "ellipticity lambda must lie in (0, 1]");
    }
  }

  c.ramp_power = static_cast<int>(t.get_int("boundary_data", "ramp_power", c.ramp_power));
  c.t1 = t.get_num("boundary_data", "t1", c.t1);
  c.data_amplitude = t.get_num("boundary_data", "amplitude", c.data_amplitude);
  for (const char* k : {"ramp_power", "t1", "amplitude"}) track("boundary_data", k);

  c.nx = static_cast<int>(t.get_int("grid", "nx", c.nx));
  c.ny = static_cast<int>(t.get_int("grid", "ny", c.ny));
  c.c_cfl = t.get_num("grid", "c_cfl", c.c_cfl);
  c.T = t.get_num("grid", "T", c.T);
  for (const char* k : {"nx", "ny", "c_cfl", "T"}) track("grid", k);

  c.mu = t.get_num("fbi", "mu", c.mu);
  c.tau_frac = t.get_num("fbi", "tau_frac", c.tau_frac);
  c.y_extent_frac = t.get_num("fbi", "y_extent_frac", c.y_extent_frac);
  c.y_samples = static_cast<int>(t.get_int("fbi", "y_samples", c.y_samples));

  c.ts_r1 = t.get_num("three_sphere", "r1", c.ts_r1);
  c.ts_r2 = t.get_num("three_sphere", "r2", c.ts_r2);
  c.ts_r3 = t.get_num("three_sphere", "r3", c.ts_r3);
  c.ts_delta = t.get_num("three_sphere", "delta", c.ts_delta);
  c.corpus_size = static_cast<int>(t.get_int("three_sphere", "corpus_size", c.corpus_size));
  c.corpus_degree = static_cast<int>(t.get_int("three_sphere", "degree", c.corpus_degree));
  c.corpus_grid = static_cast<int>(t.get_int("three_sphere", "grid", c.corpus_grid));

  c.rungs = static_cast<int>(t.get_int("stability", "rungs", c.rungs));
  c.amp_min_frac = t.get_num("stability", "amp_min_frac", c.amp_min_frac);
  c.amp_max_frac = t.get_num("stability", "amp_max_frac", c.amp_max_frac);
  c.t0 = t.get_num("stability", "t0", c.t0);

  c.C_F = t.get_num("calibration", "C_F", c.C_F);
  c.C_K = t.get_num("calibration", "C_K", c.C_K);
  c.C_carleman = t.get_num("calibration", "C_carleman", c.C_carleman);
  c.beta1 = t.get_num("calibration", "beta1", c.beta1);
  c.vartheta2 = t.get_num("calibration", "vartheta2", c.vartheta2);
  c.sigma_bar = t.get_num("calibration", "sigma_bar", c.sigma_bar);
  c.d0_frac = t.get_num("calibration", "d0_frac", c.d0_frac);
  c.c_n = t.get_num("calibration", "c_n", c.c_n);
  c.mu_cap = t.get_num("calibration", "mu_cap", c.mu_cap);
  for (const char* k : {"C_F", "C_K", "C_carleman", "beta1", "vartheta2",
                        "sigma_bar", "d0_frac", "c_n", "mu_cap"}) {
    track("calibration", k);
  }

  validate(c);
  return c;
}

RunConfig parse_config(const std::string& path) {
  return parse_config_string(read_text_file(path), path);
}

std::string RunConfig::echo() const {
  std::string s;
  s += "[run]\n";
  s += "command = " + command + "\n";
  s += "out = " + out_dir + "\n";
  s += "seed = " + std::to_string(seed) + "\n";
  s += "threads = " + std::to_string(threads) + "\n";
  s += "[domain]\n";
  s += "kind = " + domain_kind + "\n";
  if (!charts_csv.empty()) s += "charts = " + charts_csv + "\n";
  s += "length = " + fmt(length) + "\n";
  s += "height = " + fmt(height) + "\n";
  s += "rho0 = " + fmt(rho0) + "\n";
  s += "E = " + fmt(E) + "\n";
  s += "[anisotropy]\n";
  s += "kind = " + anisotropy_kind + "\n";
  s += "a11 = " + fmt(a11) + "\n";
  s += "a22 = " + fmt(a22) + "\n";
  s += "[boundary_data]\n";
  s += "ramp_power = " + std::to_string(ramp_power) + "\n";
  s += "t1 = " + fmt(t1) + "\n";
  s += "amplitude = " + fmt(data_amplitude) + "\n";
  s += "[grid]\n";
  s += "nx = " + std::to_string(nx) + "\n";
  s += "ny = " + std::to_string(ny) + "\n";
  s += "c_cfl = " + fmt(c_cfl) + "\n";
  s += "T = " + fmt(T) + "\n";
  s += "[fbi]\n";
  s += "mu = " + fmt(mu) + "\n";
  s += "tau_frac = " + fmt(tau_frac) + "\n";
  s += "y_extent_frac = " + fmt(y_extent_frac) + "\n";
  s += "y_samples = " + std::to_string(y_samples) + "\n";
  s += "[three_sphere]\n";
  s += "r1 = " + fmt(ts_r1) + "\n";
  s += "r2 = " + fmt(ts_r2) + "\n";
  s += "r3 = " + fmt(ts_r3) + "\n";
  s += "delta = " + fmt(ts_delta) + "\n";
  s += "corpus_size = " + std::to_string(corpus_size) + "\n";
  s += "degree = " + std::to_string(corpus_degree) + "\n";
  s += "grid = " + std::to_string(corpus_grid) + "\n";
  s += "[stability]\n";
  s += "rungs = " + std::to_string(rungs) + "\n";
  s += "amp_min_frac = " + fmt(amp_min_frac) + "\n";
  s += "amp_max_frac = " + fmt(amp_max_frac) + "\n";
  s += "t0 = " + fmt(t0) + "\n";
  s += "[calibration]\n";
  s += "C_F = " + fmt(C_F) + "\n";
  s += "C_K = " + fmt(C_K) + "\n";
  s += "C_carleman = " + fmt(C_carleman) + "\n";
  s += "beta1 = " + fmt(beta1) + "\n";
  s += "vartheta2 = " + fmt(vartheta2) + "\n";
  s += "sigma_bar = " + fmt(sigma_bar) + "\n";
  s += "d0_frac = " + fmt(d0_frac) + "\n";
  s += "c_n = " + fmt(c_n) + "\n";
  s += "mu_cap = " + fmt(mu_cap) + "\n";
  return s;
}

}  // namespace wavescope
