// wavescope: numerical laboratory for boundary-determination stability
// experiments with anisotropic waves. Subcommands: solve, fbi-check,
// three-sphere, chain, stability. Every run writes a manifest with the
// config echo, seed and output checksums.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wavescope/ball_chain.hpp"
#include "wavescope/io.hpp"
#include "wavescope/manifest.hpp"
#include "wavescope/propagation.hpp"
#include "wavescope/stability.hpp"

namespace ws = wavescope;
namespace fs = std::filesystem;

namespace {

struct Cli {
  std::string config_path;
  std::string corpus_path;
  std::string out_override;
  long long seed_override = -1;
  int threads_override = 0;
  int resolution_override = 0;
};

ws::Domain build_domain(const ws::RunConfig& c) {
  if (!c.charts_csv.empty()) {
    return ws::build_graph_domain(ws::read_chart_csv(c.charts_csv), c.rho0,
                                  c.E, 1e-9, c.height);
  }
  if (c.domain_kind == "channel") {
    return ws::make_channel(c.length, c.height, c.rho0, c.E,
                            [](double) { return 0.0; });
  }
  if (c.domain_kind == "disk") {
    return ws::make_disk({0.0, 0.0}, 0.5 * c.length, c.rho0, c.E);
  }
  ws::fail("ValidationError", "unknown domain kind '" + c.domain_kind + "'");
}

ws::AnisotropyField build_anisotropy(const ws::RunConfig& c) {
  if (c.anisotropy_kind == "identity") return ws::AnisotropyField::identity();
  if (c.anisotropy_kind == "diagonal") {
    return ws::AnisotropyField::diagonal(c.a11, c.a22);
  }
  ws::fail("ValidationError", "unknown anisotropy kind '" + c.anisotropy_kind + "'");
}

ws::BoundaryData build_data(const ws::RunConfig& c) {
  ws::TimeProfile ramp;
  ramp.kind = ws::TimeProfile::Kind::power;
  ramp.p = c.ramp_power;
  ramp.t_scale = c.T;
  ws::BoundaryData data = ws::channel_top_bump(
      0.5 * c.length, 0.3 * c.length, 0.5 * c.height, c.height, ramp, c.t1);
  const double amp = c.data_amplitude;
  auto spatial = data.spatial;
  data.spatial = [spatial, amp](ws::Vec2 p) { return amp * spatial(p); };
  return data;
}

int run_solve(const ws::RunConfig& c, ws::Manifest* man) {
  const ws::Domain dom = build_domain(c);
  const ws::AnisotropyField A = build_anisotropy(c);
  const ws::BoundaryData data = build_data(c);
  ws::GridSpec grid;
  grid.box = dom.hull;
  grid.nx = c.nx;
  grid.ny = c.ny;
  grid.c_cfl = c.c_cfl;
  const ws::WaveField u = ws::solve_ibvp(dom, A, data, c.T, grid, {}, c.threads);

  const fs::path out(c.out_dir);
  const std::string snap = (out / "wave_final.bin").string();
  ws::write_wave_snapshot(snap, u, u.steps);
  man->add_output(snap);

  const ws::FluxTrace flux = ws::boundary_flux(u, dom, A, data);
  const std::string fluxcsv = (out / "flux.csv").string();
  ws::write_text_file(fluxcsv, ws::flux_to_csv(flux));
  man->add_output(fluxcsv);

  std::string energy_csv = "t,K\n";
  char buf[64];
  for (int m = 0; m <= u.steps; m += std::max(1, u.steps / 128)) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", u.time_of(m),
                  ws::energy(u, A, m));
    energy_csv += buf;
  }
  const std::string ecsv = (out / "energy.csv").string();
  ws::write_text_file(ecsv, energy_csv);
  man->add_output(ecsv);

  const std::string domtxt = (out / "domain.txt").string();
  ws::write_text_file(domtxt, ws::domain_to_text(dom));
  man->add_output(domtxt);
  return 0;
}

int run_fbi_check(const ws::RunConfig& c, ws::Manifest* man) {
  const ws::Domain dom = build_domain(c);
  const ws::AnisotropyField A = build_anisotropy(c);
  const ws::BoundaryData data = build_data(c);
  ws::GridSpec grid;
  grid.box = dom.hull;
  grid.nx = c.nx;
  grid.ny = c.ny;
  grid.c_cfl = c.c_cfl;
  const ws::WaveField u = ws::solve_ibvp(dom, A, data, c.T, grid, {}, c.threads);

  const double tau = c.tau_frac * 0.5 * c.T;
  const double R = c.y_extent_frac * c.T;
  std::vector<double> ys(c.y_samples);
  for (int i = 0; i < c.y_samples; ++i) {
    ys[i] = c.y_samples == 1 ? 0.0 : -R + 2.0 * R * i / (c.y_samples - 1);
  }
  const ws::FbiField U = ws::fbi_transform(u, c.mu, tau, ys);
  const auto res = ws::elliptic_residual(U, A, u);
  const auto neg = ws::elliptic_residual(U, A, u, /*zero_source=*/true);
  const auto growth = ws::fbi_growth_check(U, u);

  const fs::path out(c.out_dir);
  const std::string field = (out / "fbi_field.bin").string();
  ws::write_fbi_field(field, U);
  man->add_output(field);

  std::string rep = "quantity,value\n";
  char buf[96];
  std::snprintf(buf, sizeof(buf), "residual,%.17g\n", res.total);
  rep += buf;
  std::snprintf(buf, sizeof(buf), "residual_zero_source,%.17g\n", neg.total);
  rep += buf;
  for (int j = 0; j < 3; ++j) {
    std::snprintf(buf, sizeof(buf), "growth_c_j%d,%.17g\n", j,
                  growth.c_observed[j]);
    rep += buf;
  }
  const std::string repcsv = (out / "fbi_report.csv").string();
  ws::write_text_file(repcsv, rep);
  man->add_output(repcsv);
  return 0;
}

int run_three_sphere(const ws::RunConfig& c, ws::Manifest* man) {
  ws::ThreeSphereParams p;
  p.r1 = c.ts_r1;
  p.r2 = c.ts_r2;
  p.r3 = c.ts_r3;
  p.delta = c.ts_delta;
  p.beta = c.beta1;
  p.C_carleman = c.C_carleman;

  // Deterministic corpus of harmonic polynomials from the seed.
  unsigned long long s = c.seed * 2862933555777941757ULL + 3037000493ULL;
  auto uni = [&]() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return static_cast<double>(s >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  };
  std::vector<ws::VerificationRecord> recs;
  for (int i = 0; i < c.corpus_size; ++i) {
    std::vector<double> a(c.corpus_degree + 1), b(c.corpus_degree + 1);
    for (auto& v : a) v = uni();
    for (auto& v : b) v = uni();
    const auto field = ws::harmonic_polynomial_field(a, b, c.corpus_grid, p.r3);
    recs.push_back(ws::verify_three_sphere(field, p));
  }
  const fs::path out(c.out_dir);
  const std::string csv = (out / "three_sphere_corpus.csv").string();
  ws::write_text_file(csv, ws::verification_csv(recs));
  man->add_output(csv);

  int failures = 0;
  for (const auto& r : recs) {
    if (!r.pass) ++failures;
  }
  if (failures > 0) {
    std::fprintf(stderr, "error: CorpusFailure: %d corpus members failed\n",
                 failures);
    return 5;
  }
  return 0;
}

int run_chain(const ws::RunConfig& c, ws::Manifest* man) {
  const double vs = 0.05;
  const ws::BallChain chain =
      ws::cone_ball_chain(0.2, ws::matched_cone_slope(vs), c.rho0, vs, 12);
  const auto sch = ws::cone_decay_schedule(chain, c.mu, c.T, c.rho0,
                                           c.vartheta2, c.beta1);
  std::string csv = "k,center_n,r_k,rho_k,R_k,A_k,A1_k,A2_k\n";
  char buf[256];
  for (int k = 0; k < chain.length(); ++k) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  k + 1, chain.centers[k].back(), chain.small_radii[k],
                  chain.mid_radii[k], chain.large_radii[k], sch.A[k], sch.A1[k],
                  sch.A2[k]);
    csv += buf;
  }
  std::snprintf(buf, sizeof(buf),
                "# theta_tilde0,%.17g\n# contraction,%.17g\n# T_min,%.17g\n",
                sch.theta_tilde0, sch.contraction, sch.T_min);
  csv += buf;
  const fs::path out(c.out_dir);
  const std::string path = (out / "cone_chain.csv").string();
  ws::write_text_file(path, csv);
  man->add_output(path);
  return 0;
}

int run_stability(const ws::RunConfig& c, ws::Manifest* man) {
  ws::StabilityConfig sc;
  sc.length = c.length;
  sc.height = c.height;
  sc.rho0 = c.rho0;
  sc.E = c.E;
  sc.grid_nx = c.nx;
  sc.grid_ny = c.ny;
  sc.c_cfl = c.c_cfl;
  sc.T = c.T;
  sc.t0 = c.t0;
  sc.t1 = c.t1;
  sc.rungs = c.rungs;
  sc.amp_min_frac = c.amp_min_frac;
  sc.amp_max_frac = c.amp_max_frac;
  sc.seed = c.seed;
  sc.threads = c.threads;
  sc.C_F = c.C_F;
  sc.C_K = c.C_K;
  sc.vartheta2 = c.vartheta2;
  sc.sigma_bar = c.sigma_bar;
  sc.mu_cap = c.mu_cap;

  const auto records = ws::run_stability_experiment(sc);
  const fs::path out(c.out_dir);
  const std::string csv_path = (out / "stability.csv").string();

  ws::ModulusFit fit;
  bool have_fit = true;
  std::string fit_error;
  try {
    fit = ws::fit_log_modulus(records, c.rho0);
  } catch (const ws::Error& e) {
    have_fit = false;
    fit_error = e.what();
  }
  ws::write_text_file(csv_path,
                      ws::stability_csv(records, have_fit ? &fit : nullptr));
  man->add_output(csv_path);
  if (!have_fit) {
    std::fprintf(stderr, "error: %s (partial CSV preserved)\n",
                 fit_error.c_str());
    return 4;
  }
  return 0;
}

int dispatch(const ws::RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(cfg.out_dir);
  ws::Manifest man;
  man.config = cfg;
  int rc = 0;
  if (cfg.command == "solve") {
    rc = run_solve(cfg, &man);
  } else if (cfg.command == "fbi-check") {
    rc = run_fbi_check(cfg, &man);
  } else if (cfg.command == "three-sphere") {
    rc = run_three_sphere(cfg, &man);
  } else if (cfg.command == "chain") {
    rc = run_chain(cfg, &man);
  } else if (cfg.command == "stability") {
    rc = run_stability(cfg, &man);
  } else {
    ws::fail("ValidationError", "unknown command '" + cfg.command + "'");
  }
  man.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  man.write((fs::path(cfg.out_dir) / "manifest.txt").string());
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavescope: boundary-determination stability laboratory"};
  app.require_subcommand(1);

  Cli cli;
  for (const char* name : {"solve", "fbi-check", "three-sphere", "chain",
                           "stability"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", cli.config_path, "run configuration file");
    sub->add_option("--out", cli.out_override, "output directory override");
    sub->add_option("--seed", cli.seed_override, "seed override");
    sub->add_option("--threads", cli.threads_override, "worker threads");
    sub->add_option("--resolution-override", cli.resolution_override,
                    "grid points per axis override");
    if (std::string(name) == "three-sphere") {
      sub->add_option("--corpus", cli.corpus_path,
                      "corpus specification file (config format)");
    }
  }

  CLI11_PARSE(app, argc, argv);

  try {
    std::string cfg_path = cli.config_path;
    if (cfg_path.empty() && !cli.corpus_path.empty()) cfg_path = cli.corpus_path;
    ws::RunConfig cfg = cfg_path.empty()
                            ? ws::parse_config_string("[run]\ncommand = solve\n")
                            : ws::parse_config(cfg_path);
    cfg.command = app.get_subcommands().front()->get_name();
    if (!cli.out_override.empty()) cfg.out_dir = cli.out_override;
    if (cli.seed_override >= 0) {
      cfg.seed = static_cast<unsigned long long>(cli.seed_override);
    }
    if (cli.threads_override > 0) cfg.threads = cli.threads_override;
    if (cli.resolution_override > 8) {
      cfg.nx = cli.resolution_override;
      cfg.ny = cli.resolution_override / 2 + 1;
    }
    return dispatch(cfg);
  } catch (const ws::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: Internal: %s\n", e.what());
    return 3;
  }
}
