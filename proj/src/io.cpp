#include "wavescope/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace wavescope {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<ChartProfile> read_chart_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("ParseError", "cannot open chart CSV: " + path);
  std::map<std::string, ChartProfile> by_id;
  std::vector<std::string> order;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string id, us, ps;
    if (!std::getline(ss, id, ',') || !std::getline(ss, us, ',') ||
        !std::getline(ss, ps, ',')) {
      fail("ParseError", path + ":" + std::to_string(lineno) +
                             ": expected chart_id,u1,phi");
    }
    if (lineno == 1 && (id == "chart_id" || us == "u1")) continue;  // header
    char* end = nullptr;
    const double u = std::strtod(us.c_str(), &end);
    if (end == us.c_str()) {
      fail("ParseError", path + ":" + std::to_string(lineno) + ": bad u value");
    }
    const double p = std::strtod(ps.c_str(), &end);
    if (end == ps.c_str()) {
      fail("ParseError", path + ":" + std::to_string(lineno) + ": bad phi value");
    }
    if (!by_id.count(id)) order.push_back(id);
    by_id[id].id = id;
    by_id[id].u.push_back(u);
    by_id[id].phi.push_back(p);
  }
  std::vector<ChartProfile> out;
  for (const auto& id : order) out.push_back(by_id[id]);
  return out;
}

std::string domain_to_text(const Domain& d) {
  std::string s;
  s += "wavescope-domain 1\n";
  s += "dim " + std::to_string(d.dim) + "\n";
  s += "rho0 " + fmt(d.rho0) + "\n";
  s += "E " + fmt(d.E) + "\n";
  s += "M " + fmt(d.M) + "\n";
  s += "hull " + fmt(d.hull.x0) + " " + fmt(d.hull.x1) + " " + fmt(d.hull.y0) +
       " " + fmt(d.hull.y1) + "\n";
  s += "sigma_chart " + std::to_string(d.sigma_chart) + "\n";
  s += "charts " + std::to_string(d.charts.size()) + "\n";
  for (const auto& c : d.charts) {
    s += "chart " + c.name + (c.accessible ? " accessible" : " inaccessible");
    s += " origin " + fmt(c.frame.origin.x) + " " + fmt(c.frame.origin.y);
    s += " tangent " + fmt(c.frame.t_hat.x) + " " + fmt(c.frame.t_hat.y);
    s += " half_width " + fmt(c.half_width);
    s += " samples " + std::to_string(c.phi.size()) + "\n";
    for (size_t i = 0; i < c.phi.size(); ++i) {
      s += fmt(-c.half_width + 2.0 * c.half_width * i / (c.phi.size() - 1));
      s += " " + fmt(c.phi[i]) + "\n";
    }
  }
  return s;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("IoError", "cannot write " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("IoError", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_wave_snapshot(const std::string& path, const WaveField& u, int m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("IoError", "cannot write " + path);
  std::string header;
  header += "wavescope-snapshot 1\n";
  header += "nx " + std::to_string(u.nx()) + "\n";
  header += "ny " + std::to_string(u.ny()) + "\n";
  header += "hx " + fmt(u.grid.hx()) + "\n";
  header += "hy " + fmt(u.grid.hy()) + "\n";
  header += "dt " + fmt(u.dt) + "\n";
  header += "t_index " + std::to_string(m) + "\n";
  header += "data float64 row-major\n";
  out << header;
  out.write(reinterpret_cast<const char*>(u.layer(m)),
            static_cast<std::streamsize>(u.layer_size() * sizeof(double)));
}

std::string flux_to_csv(const FluxTrace& f) {
  std::string s = "t,arclength,flux\n";
  for (size_t m = 0; m < f.times.size(); ++m) {
    for (size_t k = 0; k < f.arclength.size(); ++k) {
      s += fmt(f.times[m]) + "," + fmt(f.arclength[k]) + "," +
           fmt(f.values[m * f.arclength.size() + k]) + "\n";
    }
  }
  return s;
}

void write_fbi_field(const std::string& path, const FbiField& F) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("IoError", "cannot write " + path);
  std::string header;
  header += "wavescope-fbi 1\n";
  header += "mu " + fmt(F.mu) + "\n";
  header += "tau " + fmt(F.tau) + "\n";
  header += "T " + fmt(F.T_horizon) + "\n";
  header += "nx " + std::to_string(F.grid.nx) + "\n";
  header += "ny " + std::to_string(F.grid.ny) + "\n";
  header += "n_y_samples " + std::to_string(F.y.size()) + "\n";
  header += "data float64 pairs re,im per node, y-major\n";
  out << header;
  std::vector<double> plane(2 * F.values.size());
  for (size_t i = 0; i < F.values.size(); ++i) {
    plane[2 * i] = F.values[i].real();
    plane[2 * i + 1] = F.values[i].imag();
  }
  out.write(reinterpret_cast<const char*>(plane.data()),
            static_cast<std::streamsize>(plane.size() * sizeof(double)));
}

std::string verification_csv(const std::vector<VerificationRecord>& recs) {
  std::string s = "dim,r1,r2,r3,delta,beta,theta0,implied_C0,cap,pass\n";
  for (const auto& r : recs) {
    s += std::to_string(r.dim) + "," + fmt(r.r1) + "," + fmt(r.r2) + "," +
         fmt(r.r3) + "," + fmt(r.delta) + "," + fmt(r.beta) + "," +
         fmt(r.theta0) + "," + fmt(r.implied_C0) + "," + fmt(r.cap) + "," +
         (r.pass ? "1" : "0") + "\n";
  }
  return s;
}

std::string checksum_hex(const std::string& bytes) {
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", h);
  return buf;
}

std::string file_checksum(const std::string& path) {
  return checksum_hex(read_text_file(path));
}

}  // namespace wavescope
