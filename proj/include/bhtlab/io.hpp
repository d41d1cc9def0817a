#pragma once

// File formats. Complex numbers are [re, im] arrays, matrices are row-major
// nested arrays of those. Doubles are written in shortest round-trip form so
// that equal inputs give byte-identical files.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bhtlab/flows.hpp"
#include "bhtlab/spectral.hpp"
#include "bhtlab/superalg.hpp"

namespace bhtlab::io {

using nlohmann::json;

inline constexpr const char* kTrajectoryFormat = "bhtlab-trajectory";
inline constexpr int kFormatVersion = 1;

json to_json(Complex z);
json to_json(const CMatrix& x);
json to_json(const BivariatePoly& p);
json to_json(const SpectralReport& r);

/// Throws ValidationError on anything but a rectangular array of [re, im].
Complex complex_from_json(const json& j);
CMatrix matrix_from_json(const json& j);

json state_to_json(const BHTState& s);
json state_to_json(const HoloState& h);
json state_to_json(const NahmTriple& t);
json state_to_json(const SuperMatrix& c);  // odd part as {"A", "B"}

/// A trajectory read back from disk, reduced to the pencil data
/// (A0, A1, B0, B1) used by the spectral tools.
struct PencilTrajectory {
  std::string system;
  Index n = 0;
  Index m = 0;
  std::vector<double> times;
  std::vector<HoloState> states;
};

/// Parses a trajectory document. States with "A", "B" are embedded by
/// reality_embed; states with "A0", "A1", "B0", "B1" are used as-is. Throws
/// ValidationError for anything else (including Nahm trajectories).
PencilTrajectory pencil_trajectory_from_json(const json& doc);

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string format_double(double x);

std::string read_file(const std::string& path);
/// Writes the whole string, throwing Error on I/O failure.
void write_file(const std::string& path, const std::string& contents);

}  // namespace bhtlab::io
