#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "wavescope/config.hpp"
#include "wavescope/io.hpp"
#include "wavescope/manifest.hpp"

using namespace wavescope;

TEST_CASE("minimal config fills every default and records them") {
  const RunConfig c = parse_config_string("[run]\ncommand = solve\n");
  CHECK(c.command == "solve");
  CHECK(c.rho0 == 0.25);
  CHECK(c.C_F == 2.0);
  CHECK(!c.defaulted.empty());
  bool has_cfl = false;
  for (const auto& k : c.defaulted) {
    if (k == "grid.c_cfl") has_cfl = true;
  }
  CHECK(has_cfl);
}

TEST_CASE("parse errors carry line and section") {
  CHECK_THROWS_WITH_AS(parse_config_string("[run\ncommand = x\n"),
                       doctest::Contains("ParseError"), Error);
  try {
    parse_config_string("[run]\ncommand = solve\nbroken line\n", "cfg");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("cfg:3") != std::string::npos);
    CHECK(std::string(e.what()).find("[run]") != std::string::npos);
  }
  CHECK_THROWS_WITH_AS(
      parse_config_string("[run]\ncommand = solve\ncommand = chain\n"),
      doctest::Contains("duplicate key"), Error);
}

TEST_CASE("validation: ellipticity out of range is rejected") {
  CHECK_THROWS_WITH_AS(
      parse_config_string("[run]\ncommand = solve\n[anisotropy]\nlambda = 1.5\n"),
      doctest::Contains("ValidationError"), Error);
}

TEST_CASE("validation: conflicting rho0 declarations are rejected") {
  const std::string text =
      "[run]\ncommand = solve\n[domain]\nrho0 = 0.25\n[grid]\nrho0 = 0.5\n";
  CHECK_THROWS_WITH_AS(parse_config_string(text),
                       doctest::Contains("rho0 declared twice"), Error);
  // Consistent duplicates are fine.
  const std::string ok =
      "[run]\ncommand = solve\n[domain]\nrho0 = 0.25\n[grid]\nrho0 = 0.25\n";
  CHECK(parse_config_string(ok).rho0 == 0.25);
}

TEST_CASE("config echo round-trips through the parser") {
  const RunConfig a = parse_config_string(
      "[run]\ncommand = stability\nseed = 17\n[domain]\nrho0 = 0.125\n"
      "[stability]\nrungs = 5\n");
  const RunConfig b = parse_config_string(a.echo());
  CHECK(b.command == a.command);
  CHECK(b.seed == a.seed);
  CHECK(b.rho0 == a.rho0);
  CHECK(b.rungs == a.rungs);
  CHECK(b.echo() == a.echo());
}

TEST_CASE("chart CSV ingestion") {
  const auto dir = std::filesystem::temp_directory_path() / "ws_test_csv";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "charts.csv").string();
  write_text_file(path,
                  "chart_id,u1,phi\n"
                  "bottom,-1.0,0.0\n"
                  "bottom,0.0,0.0\n"
                  "bottom,1.0,0.0\n");
  const auto profiles = read_chart_csv(path);
  REQUIRE(profiles.size() == 1);
  CHECK(profiles[0].id == "bottom");
  CHECK(profiles[0].u.size() == 3);
  CHECK_THROWS_WITH_AS(read_chart_csv((dir / "missing.csv").string()),
                       doctest::Contains("ParseError"), Error);
  write_text_file(path, "bottom,notanumber,0\n");
  CHECK_THROWS_WITH_AS(read_chart_csv(path), doctest::Contains("ParseError"),
                       Error);
}

TEST_CASE("domain text export is self-describing and deterministic") {
  Domain d = make_box({0.0, 1.0, 0.0, 1.0}, 0.25, 1.0);
  const std::string a = domain_to_text(d);
  CHECK(a.find("wavescope-domain") != std::string::npos);
  CHECK(a.find("rho0 0.25") != std::string::npos);
  CHECK(a == domain_to_text(d));
}

TEST_CASE("checksums are stable and sensitive") {
  CHECK(checksum_hex("abc") == checksum_hex("abc"));
  CHECK(checksum_hex("abc") != checksum_hex("abd"));
  CHECK(checksum_hex("").size() == 16);
}

TEST_CASE("manifest lists outputs with checksums and echoes the config") {
  const auto dir = std::filesystem::temp_directory_path() / "ws_test_manifest";
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "artifact.csv").string();
  write_text_file(out, "a,b\n1,2\n");

  Manifest m;
  m.config = parse_config_string("[run]\ncommand = chain\nseed = 3\n");
  m.add_output(out);
  m.wall_seconds = 0.125;
  const std::string text = m.to_text();
  CHECK(text.find("command = chain") != std::string::npos);
  CHECK(text.find("fnv1a:") != std::string::npos);
  CHECK(text.find(file_checksum(out)) != std::string::npos);

  // The manifest re-parses as a config equal to the original echo.
  const RunConfig back = parse_config_string(text, "manifest");
  CHECK(back.command == "chain");
  CHECK(back.seed == 3);
}
