#pragma once

#include <string>
#include <vector>

#include "wavescope/fbi.hpp"
#include "wavescope/geometry.hpp"
#include "wavescope/three_sphere.hpp"
#include "wavescope/wave.hpp"

namespace wavescope {

/// Chart samples from CSV with columns: chart_id, u1, phi (header optional).
std::vector<ChartProfile> read_chart_csv(const std::string& path);

/// Self-describing structured text dump of a domain with its a-priori
/// constants and chart tables.
std::string domain_to_text(const Domain& d);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Wave snapshot: text header (dims, spacings, time index) followed by the
/// flat binary layer.
void write_wave_snapshot(const std::string& path, const WaveField& u, int m);

/// Flux trace as CSV rows (t, arclength, flux).
std::string flux_to_csv(const FluxTrace& f);

/// Transform field: text header (mu, tau, T, grid) plus paired real/imag
/// binary arrays.
void write_fbi_field(const std::string& path, const FbiField& F);

/// Verification corpus CSV (radii, delta, beta, theta0, implied_C0, pass).
std::string verification_csv(const std::vector<VerificationRecord>& recs);

/// FNV-1a checksum of a byte string, printed as 16 hex digits.
std::string checksum_hex(const std::string& bytes);
std::string file_checksum(const std::string& path);

}  // namespace wavescope
