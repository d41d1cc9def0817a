#pragma once

#include <doctest.h>

#include "bhtlab/flows.hpp"
#include "bhtlab/random.hpp"
#include "bhtlab/superalg.hpp"

namespace bhtlab::testing {

inline SuperMatrix random_odd(Rng& rng, Index n, Index m) {
  CMatrix a = rng.complex_normal(n, m);
  CMatrix b = rng.complex_normal(m, n);
  return SuperMatrix::odd(std::move(a), std::move(b));
}

inline SuperMatrix random_even(Rng& rng, Index n, Index m) {
  CMatrix u = rng.complex_normal(n, n);
  CMatrix v = rng.complex_normal(m, m);
  return SuperMatrix::even(std::move(u), std::move(v));
}

inline BHTState random_state(Rng& rng, Index n, Index m) {
  CMatrix a = rng.complex_normal(n, m);
  CMatrix b = rng.complex_normal(m, n);
  return {std::move(a), std::move(b)};
}

inline BHTState unit_state(Rng& rng, Index n, Index m) {
  BHTState s = random_state(rng, n, m);
  return (1.0 / std::hypot(s.A.norm(), s.B.norm())) * s;
}

inline HoloState random_holo(Rng& rng, Index n, Index m) {
  CMatrix a0 = rng.complex_normal(n, m);
  CMatrix a1 = rng.complex_normal(n, m);
  CMatrix b0 = rng.complex_normal(m, n);
  CMatrix b1 = rng.complex_normal(m, n);
  return {std::move(a0), std::move(a1), std::move(b0), std::move(b1)};
}

/// Sizes used by the property tests.
inline constexpr std::pair<Index, Index> kSizes[] = {{1, 1}, {2, 1}, {2, 2}, {3, 2}, {4, 3}};

}  // namespace bhtlab::testing
