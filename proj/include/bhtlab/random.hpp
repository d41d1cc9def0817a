#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "bhtlab/matkit.hpp"

namespace bhtlab {

/// Name and version of the generator, printed in every output header so that
/// another implementation can reproduce the streams bit for bit.
inline constexpr std::string_view kRngName = "mt19937_64+box-muller";
inline constexpr int kRngVersion = 1;

/// Seeded generator with a fully specified output stream:
///  - engine: std::mt19937_64 seeded with the 64-bit seed;
///  - uniform: (next() >> 11) * 2^-53, in [0, 1);
///  - normal: Box-Muller on (u1, u2) with r = sqrt(-2 ln(1 - u1)),
///    emitting r cos(2 pi u2) then r sin(2 pi u2).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  double normal();

  /// Independent standard-normal real and imaginary parts, column-major fill.
  CMatrix complex_normal(Index rows, Index cols);
  /// (X - X^*)/2 of a complex_normal draw.
  CMatrix anti_hermitian(Index size);
  /// Q factor of a complex_normal draw, phases fixed by diag(R).
  CMatrix unitary(Index size);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bhtlab
