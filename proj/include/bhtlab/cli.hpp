#pragma once

// The bhtlab command line: `simulate`, `check`, `spectral`.
//
// Exit codes: 0 success, 1 failed checks, 2 configuration or input error,
// 3 blow-up during integration. stdout carries a one-line JSON summary,
// stderr the human-readable details.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bhtlab/checks.hpp"
#include "bhtlab/integrate.hpp"

namespace bhtlab::cli {

enum class System { bht, nahm, holo, alts_jccc, gauge_bht, nahm_schmid_check };

std::string_view to_string(System s);
/// Throws ValidationError for unknown names.
System parse_system(std::string_view name);

struct RunConfig {
  System system = System::bht;
  Index n = 2;
  Index m = 1;
  std::uint64_t seed = 0;
  double t_end = 1.0;
  double dt = 1e-3;
  Method method = Method::rk4;
  std::size_t stride = 1;
  double radius = 1.0;  // Frobenius norm of the random initial state
  /// Reporting thresholds for the summary ("monotone", "drift").
  std::map<std::string, double> tolerances{{"monotone", 1e-10}, {"drift", 1e-8}};
  std::string out_path = "bhtlab_run";  // stem: <stem>.json and <stem>.csv
};

/// Throws ValidationError on any violated invariant.
void validate(const RunConfig& cfg);

/// The default seed: BHTLAB_SEED if set (must parse as an unsigned 64-bit
/// integer, else ValidationError), otherwise 0.
std::uint64_t default_seed();

/// Output paths for a stem; a trailing ".json" or ".csv" is stripped first.
std::string json_path(const std::string& stem);
std::string csv_path(const std::string& stem);

int run_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run_check(const checks::CheckOptions& opts, std::ostream& out, std::ostream& err);

struct SpectralConfig {
  std::string input;
  std::string out_path = "bhtlab_spectral";  // <stem>.csv and <stem>.json
};

int run_spectral(const SpectralConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; never throws.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_main(int argc, const char* const* argv);

}  // namespace bhtlab::cli
