#include "bhtlab/random.hpp"

#include <cmath>
#include <numbers>

namespace bhtlab {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

CMatrix Rng::complex_normal(Index rows, Index cols) {
  CMatrix x(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal();
      const double im = normal();
      x(i, j) = Complex(re, im);
    }
  }
  return x;
}

CMatrix Rng::anti_hermitian(Index size) {
  const CMatrix x = complex_normal(size, size);
  return 0.5 * (x - x.adjoint());
}

CMatrix Rng::unitary(Index size) {
  const CMatrix x = complex_normal(size, size);
  Eigen::HouseholderQR<CMatrix> qr(x);
  CMatrix q = qr.householderQ() * CMatrix::Identity(size, size);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < size; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

}  // namespace bhtlab
