#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bhtlab/random.hpp"

using namespace bhtlab;

TEST_SUITE("random") {
  TEST_CASE("engine is the standard mt19937_64") {
    // 10000th output for the default seed, fixed by the C++ standard.
    Rng rng(5489);
    std::uint64_t x = 0;
    for (int i = 0; i < 10000; ++i) x = rng.next();
    CHECK(x == 9981545732273789042ULL);
  }

  TEST_CASE("uniform and normal follow the documented recipe") {
    Rng rng(42);
    std::mt19937_64 ref(42);
    for (int i = 0; i < 5; ++i) {
      const double u = static_cast<double>(ref() >> 11) * 0x1.0p-53;
      CHECK(rng.uniform() == u);
    }
    const double u1 = static_cast<double>(ref() >> 11) * 0x1.0p-53;
    const double u2 = static_cast<double>(ref() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    CHECK(rng.normal() == r * std::cos(2.0 * std::numbers::pi * u2));
    CHECK(rng.normal() == r * std::sin(2.0 * std::numbers::pi * u2));
  }

  TEST_CASE("complex_normal fills column-major, real then imaginary") {
    Rng a(7);
    Rng b(7);
    const CMatrix x = a.complex_normal(2, 2);
    for (Index j = 0; j < 2; ++j) {
      for (Index i = 0; i < 2; ++i) {
        const double re = b.normal();
        const double im = b.normal();
        CHECK(x(i, j) == Complex(re, im));
      }
    }
  }

  TEST_CASE("same seed same stream, different seed different stream") {
    Rng a(1);
    Rng b(1);
    Rng c(2);
    const CMatrix xa = a.complex_normal(3, 3);
    CHECK(xa == b.complex_normal(3, 3));
    CHECK(xa != c.complex_normal(3, 3));
  }

  TEST_CASE("sample moments are standard normal") {
    Rng rng(3);
    const int count = 200000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < count; ++i) {
      const double z = rng.normal();
      sum += z;
      sq += z * z;
    }
    CHECK(std::abs(sum / count) < 0.01);
    CHECK(std::abs(sq / count - 1.0) < 0.02);
  }

  TEST_CASE("structured draws") {
    Rng rng(4);
    CHECK(is_anti_hermitian(rng.anti_hermitian(5), 0.0));
    const CMatrix q = rng.unitary(5);
    CHECK((q.adjoint() * q - CMatrix::Identity(5, 5)).norm() < 1e-13);
  }
}
