#pragma once

// Randomized identity suites behind `bhtlab check`.
//
// Every check reduces a trial to one nonnegative residual, normalized by the
// natural scale of its inputs, and keeps the maximum over trials. Identity
// thresholds scale with CheckOptions::tol (default 1e-12); finite-difference
// and integration checks have fixed thresholds.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bhtlab/matkit.hpp"

namespace bhtlab::checks {

enum class Suite { algebra, flows, spectral, all };

struct CheckOptions {
  Suite suite = Suite::all;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  bool corrupt = false;  // flip a sign in the triple product
};

struct CheckResult {
  std::string suite;
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  std::size_t samples = 0;

  bool passed() const { return max_residual <= threshold; }
};

inline constexpr std::array<std::pair<Index, Index>, 5> kCheckSizes{
    {{1, 1}, {2, 1}, {2, 2}, {3, 2}, {4, 3}}};

/// Runs the selected suites. Results are ordered by suite, then by first
/// appearance, and do not depend on anything but the options.
std::vector<CheckResult> run_checks(const CheckOptions& opts);

/// Independent per-trial seed derived from the run seed (SplitMix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace bhtlab::checks
