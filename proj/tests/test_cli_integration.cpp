#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "wavescope/io.hpp"

// Binary path injected by the build so the suite can spawn real runs.
#ifndef WAVESCOPE_BIN
#define WAVESCOPE_BIN "wavescope"
#endif

using namespace wavescope;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(WAVESCOPE_BIN) + " " + args + " 2>/dev/null";
  return std::system(cmd.c_str());
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ws_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string small_solve_cfg(const std::string& extra = "") {
  return "[run]\ncommand = solve\n[grid]\nnx = 49\nny = 25\nT = 0.8\n" + extra;
}

}  // namespace

TEST_CASE("solve subcommand produces outputs and a manifest") {
  const fs::path dir = fresh_dir("solve");
  const fs::path cfg = dir / "cfg.txt";
  write_text_file(cfg.string(), small_solve_cfg());
  const int rc = run("solve --config " + cfg.string() + " --out " +
                     (dir / "out").string());
  CHECK(rc == 0);
  CHECK(fs::exists(dir / "out" / "wave_final.bin"));
  CHECK(fs::exists(dir / "out" / "flux.csv"));
  CHECK(fs::exists(dir / "out" / "energy.csv"));
  CHECK(fs::exists(dir / "out" / "domain.txt"));
  CHECK(fs::exists(dir / "out" / "manifest.txt"));
  const std::string man = read_text_file((dir / "out" / "manifest.txt").string());
  CHECK(man.find("fnv1a:") != std::string::npos);
}

TEST_CASE("zero-data solve records the zero-field checksum") {
  const fs::path dir = fresh_dir("zero");
  const fs::path cfg = dir / "cfg.txt";
  write_text_file(cfg.string(),
                  small_solve_cfg("[boundary_data]\namplitude = 0\n"));
  CHECK(run("solve --config " + cfg.string() + " --out " +
            (dir / "out").string()) == 0);
  // The flux of the zero run is identically zero; its CSV checksum is a pure
  // function of the grid, so a second zero run reproduces it.
  const fs::path dir2 = fresh_dir("zero2");
  write_text_file((dir2 / "cfg.txt").string(),
                  small_solve_cfg("[boundary_data]\namplitude = 0\n"));
  CHECK(run("solve --config " + (dir2 / "cfg.txt").string() + " --out " +
            (dir2 / "out").string()) == 0);
  CHECK(file_checksum((dir / "out" / "wave_final.bin").string()) ==
        file_checksum((dir2 / "out" / "wave_final.bin").string()));
}

TEST_CASE("re-running from the manifest echo reproduces identical checksums") {
  const fs::path dir = fresh_dir("rerun");
  const fs::path cfg = dir / "cfg.txt";
  write_text_file(cfg.string(),
                  "[run]\ncommand = stability\nseed = 7\n[grid]\nnx = 33\n"
                  "ny = 17\nT = 1.2\n[stability]\nrungs = 2\n");
  REQUIRE(run("stability --config " + cfg.string() + " --out " +
              (dir / "a").string()) != -1);
  // Relaunch from the manifest itself (it re-parses as a config).
  REQUIRE(run("stability --config " + (dir / "a" / "manifest.txt").string() +
              " --out " + (dir / "b").string()) != -1);
  CHECK(file_checksum((dir / "a" / "stability.csv").string()) ==
        file_checksum((dir / "b" / "stability.csv").string()));
}

TEST_CASE("stability with too few usable rungs fails but preserves the CSV") {
  const fs::path dir = fresh_dir("short");
  const fs::path cfg = dir / "cfg.txt";
  write_text_file(cfg.string(),
                  "[run]\ncommand = stability\n[grid]\nnx = 33\nny = 17\n"
                  "T = 1.2\n[stability]\nrungs = 1\n");
  const int rc = run("stability --config " + cfg.string() + " --out " +
                     (dir / "out").string());
  CHECK(rc != 0);
  CHECK(fs::exists(dir / "out" / "stability.csv"));
}

TEST_CASE("stability with zero perturbations reports insufficient data") {
  const fs::path dir = fresh_dir("empty");
  const fs::path cfg = dir / "cfg.txt";
  write_text_file(cfg.string(),
                  "[run]\ncommand = stability\n[grid]\nnx = 33\nny = 17\n"
                  "T = 1.2\n[stability]\nrungs = 0\n");
  const int rc = run("stability --config " + cfg.string() + " --out " +
                     (dir / "out").string());
  CHECK(rc != 0);
  const std::string csv =
      read_text_file((dir / "out" / "stability.csv").string());
  CHECK(csv.find("perturbation_id") != std::string::npos);  // header preserved
}

TEST_CASE("fbi-check subcommand reports residuals") {
  const fs::path dir = fresh_dir("fbi");
  const fs::path cfg = dir / "cfg.txt";
  write_text_file(cfg.string(),
                  "[run]\ncommand = fbi-check\n[grid]\nnx = 49\nny = 25\n"
                  "T = 1.2\n[fbi]\nmu = 100\ny_samples = 3\n");
  CHECK(run("fbi-check --config " + cfg.string() + " --out " +
            (dir / "out").string()) == 0);
  const std::string rep =
      read_text_file((dir / "out" / "fbi_report.csv").string());
  CHECK(rep.find("residual") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "fbi_field.bin"));
}

TEST_CASE("chain and three-sphere subcommands succeed") {
  const fs::path dir = fresh_dir("chain");
  CHECK(run("chain --out " + (dir / "c").string()) == 0);
  CHECK(fs::exists(dir / "c" / "cone_chain.csv"));

  const fs::path cfg = dir / "ts.txt";
  write_text_file(cfg.string(),
                  "[run]\ncommand = three-sphere\n[three_sphere]\n"
                  "corpus_size = 10\ngrid = 101\n");
  CHECK(run("three-sphere --config " + cfg.string() + " --out " +
            (dir / "t").string()) == 0);
  const std::string csv =
      read_text_file((dir / "t" / "three_sphere_corpus.csv").string());
  CHECK(csv.find("theta0") != std::string::npos);

  // The corpus file can also arrive through the dedicated flag.
  CHECK(run("three-sphere --corpus " + cfg.string() + " --out " +
            (dir / "t2").string()) == 0);
  CHECK(fs::exists(dir / "t2" / "three_sphere_corpus.csv"));
}

TEST_CASE("solve ingests the bottom chart from CSV") {
  const fs::path dir = fresh_dir("charts");
  const fs::path csv = dir / "charts.csv";
  std::string rows = "chart_id,u1,phi\n";
  for (int i = 0; i <= 32; ++i) {
    const double u = -1.0 + 2.0 * i / 32.0;
    rows += "bottom," + std::to_string(u) + ",0.0\n";
  }
  write_text_file(csv.string(), rows);
  const fs::path cfg = dir / "cfg.txt";
  write_text_file(cfg.string(),
                  "[run]\ncommand = solve\n[domain]\ncharts = " + csv.string() +
                      "\nrho0 = 0.25\nheight = 1.0\n[grid]\nnx = 49\nny = 25\n"
                      "T = 0.6\n");
  CHECK(run("solve --config " + cfg.string() + " --out " +
            (dir / "out").string()) == 0);
  const std::string dom = read_text_file((dir / "out" / "domain.txt").string());
  CHECK(dom.find("inaccessible") != std::string::npos);
}

TEST_CASE("invalid config yields a nonzero exit with a category") {
  const fs::path dir = fresh_dir("bad");
  const fs::path cfg = dir / "cfg.txt";
  write_text_file(cfg.string(), "[anisotropy]\nlambda = 1.5\n");
  CHECK(run("solve --config " + cfg.string() + " --out " +
            (dir / "out").string()) != 0);
}
