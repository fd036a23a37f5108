#pragma once

#include <map>
#include <string>
#include <vector>

#include "wavescope/errors.hpp"

namespace wavescope {

/// Parsed nested key-value text: `[section]` lines open a section, `key =
/// value` lines populate it. `#` starts a comment. Duplicate keys inside one
/// section are a parse error; the same key in different sections is allowed
/// but unit-bearing keys (rho0) must agree everywhere.
struct ConfigText {
  // section -> key -> (value, line number)
  std::map<std::string, std::map<std::string, std::pair<std::string, int>>> sections;

  bool has(const std::string& sec, const std::string& key) const;
  std::string get(const std::string& sec, const std::string& key,
                  const std::string& fallback) const;
  double get_num(const std::string& sec, const std::string& key,
                 double fallback) const;
  long long get_int(const std::string& sec, const std::string& key,
                    long long fallback) const;
};

ConfigText parse_config_text(const std::string& text, const std::string& origin);

/// Validated run configuration with the shared calibration block. Defaults
/// are filled here and echoed into the manifest.
struct RunConfig {
  std::string command;         // solve | fbi-check | three-sphere | chain | stability
  std::string out_dir = "out";
  unsigned long long seed = 1;
  int threads = 1;

  // domain
  std::string domain_kind = "channel";
  std::string charts_csv;  // when set, the bottom graph is ingested from CSV
  double length = 2.0, height = 1.0;
  double rho0 = 0.25, E = 2.0;

  // anisotropy
  std::string anisotropy_kind = "identity";
  double a11 = 1.0, a22 = 1.0;

  // boundary data
  int ramp_power = 7;
  double t1 = 0.25;
  double data_amplitude = 1.0;  // 0 gives the zero-data run

  // grid
  int nx = 97, ny = 49;
  double c_cfl = 0.5;
  double T = 2.5;

  // fbi
  double mu = 400.0;
  double tau_frac = 1.0;   // tau = tau_frac * T/2
  double y_extent_frac = 0.3;
  int y_samples = 5;

  // three-sphere corpus
  double ts_r1 = 0.25, ts_r2 = 0.5, ts_r3 = 1.0, ts_delta = 0.2;
  int corpus_size = 100;
  int corpus_degree = 6;
  int corpus_grid = 201;

  // stability
  int rungs = 8;
  double amp_min_frac = 1e-3, amp_max_frac = 1e-1;
  double t0 = 1.0;

  // calibration block
  double C_F = 2.0;
  double C_K = 1.0;
  double C_carleman = 1.0;
  double beta1 = 4.0;
  double vartheta2 = 0.5;
  double sigma_bar = 0.5;
  double d0_frac = 0.1;
  double c_n = 0.0;            // 0 = packing default
  double mu_cap = 1e6;

  /// Keys that fell back to defaults, echoed into the manifest.
  std::vector<std::string> defaulted;
  /// Canonical re-parsable text echo of the whole configuration.
  std::string echo() const;
};

/// Parses and validates; throws ParseError (with line/section) or
/// ValidationError (naming the violated invariant).
RunConfig parse_config(const std::string& path);
RunConfig parse_config_string(const std::string& text,
                              const std::string& origin = "<string>");

}  // namespace wavescope
