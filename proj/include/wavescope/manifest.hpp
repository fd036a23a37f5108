#pragma once

#include <string>
#include <vector>

#include "wavescope/config.hpp"

namespace wavescope {

inline constexpr const char* kVersion = "0.1.0";

/// Run provenance: config echo, defaulted keys, seed, wall time and the
/// produced files with checksums. The manifest text itself is re-parsable as
/// a config (the echo block) so a run can be relaunched from its manifest.
struct Manifest {
  RunConfig config;
  double wall_seconds = 0.0;
  std::vector<std::pair<std::string, std::string>> outputs;  // path, checksum

  void add_output(const std::string& path);
  std::string to_text() const;
  void write(const std::string& path) const;
};

}  // namespace wavescope
