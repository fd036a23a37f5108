#include "wavescope/manifest.hpp"

#include <cstdio>

#include "wavescope/io.hpp"

namespace wavescope {

void Manifest::add_output(const std::string& path) {
  outputs.emplace_back(path, file_checksum(path));
}

std::string Manifest::to_text() const {
  std::string s;
  s += "# wavescope manifest (version " + std::string(kVersion) + ")\n";
  s += config.echo();
  s += "[manifest]\n";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", wall_seconds);
  s += "wall_seconds = " + std::string(buf) + "\n";
  s += "n_outputs = " + std::to_string(outputs.size()) + "\n";
  for (size_t i = 0; i < outputs.size(); ++i) {
    s += "output_" + std::to_string(i) + " = " + outputs[i].first + " fnv1a:" +
         outputs[i].second + "\n";
  }
  if (!config.defaulted.empty()) {
    s += "# defaulted keys\n";
    for (const auto& k : config.defaulted) s += "# default " + k + "\n";
  }
  return s;
}

void Manifest::write(const std::string& path) const {
  write_text_file(path, to_text());
}

}  // namespace wavescope
