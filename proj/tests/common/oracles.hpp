#pragma once

// Independent oracles shared by the unit and acceptance tests. They work on
// full (n+m) x (n+m) matrices and never call into the block algebra.

#include <vector>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "bhtlab/superalg.hpp"

namespace bhtlab::oracles {

inline CMatrix grading(Index n, Index m) {
  CMatrix g = CMatrix::Identity(n + m, n + m);
  g.bottomRightCorner(m, m) *= -1.0;
  return g;
}

// Full-matrix oracles, written without the SuperMatrix block algebra.
inline CMatrix bracket_oracle(const CMatrix& x, int px, const CMatrix& y, int py) {
  const double sign = (px * py) % 2 == 0 ? 1.0 : -1.0;
  return x * y - sign * y * x;
}

inline CMatrix j_oracle(const CMatrix& x, Index n, Index m) {
  CMatrix j = -x.adjoint();
  j.bottomLeftCorner(m, n) *= -1.0;
  return j;
}

inline double pairing_oracle(const CMatrix& x, const CMatrix& y, Index n, Index m) {
  const CMatrix g = grading(n, m);
  const CMatrix s = j_oracle(x, n, m) * y + j_oracle(y, n, m) * x;
  return -0.5 * (g * s).trace().real();
}

// Regularity oracle: kernel of ad C on gl(n) + gl(m) cut down by trace rows,
// then the rank of the real Gram matrix of the pairing on it.
inline bool regular_oracle(const SuperMatrix& c, Group group) {
  const Index n = c.n();
  const Index m = c.m();
  const Index dim = n * n + m * m;
  const Index extra = group == Group::s_gl ? 1 : 2;
  const CMatrix full_c = c.to_matrix();
  CMatrix op = CMatrix::Zero(2 * n * m + extra, dim);
  std::vector<CMatrix> basis;
  for (Index i = 0; i < n + m; ++i) {
    for (Index j = 0; j < n + m; ++j) {
      const bool upper = i < n && j < n;
      const bool lower = i >= n && j >= n;
      if (!upper && !lower) continue;
      CMatrix e = CMatrix::Zero(n + m, n + m);
      e(i, j) = 1.0;
      basis.push_back(e);
    }
  }
  for (Index k = 0; k < dim; ++k) {
    const CMatrix& e = basis[static_cast<std::size_t>(k)];
    const CMatrix b = full_c * e - e * full_c;
    Index row = 0;
    for (Index j = 0; j < m; ++j) {
      for (Index i = 0; i < n; ++i) op(row++, k) = b(i, n + j);
    }
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < m; ++i) op(row++, k) = b(n + i, j);
    }
    const Complex tu = e.topLeftCorner(n, n).trace();
    const Complex tv = e.bottomRightCorner(m, m).trace();
    if (group == Group::s_gl) {
      op(row, k) = tu + tv;
    } else {
      op(row, k) = tu;
      op(row + 1, k) = tv;
    }
  }
  Eigen::FullPivLU<CMatrix> lu(op);
  lu.setThreshold(1e-10);
  const CMatrix ker = lu.kernel();
  if (lu.dimensionOfKernel() == 0) return true;
  std::vector<CMatrix> real_basis;
  for (Index k = 0; k < ker.cols(); ++k) {
    CMatrix x = CMatrix::Zero(n + m, n + m);
    for (Index q = 0; q < dim; ++q) x += ker(q, k) * basis[static_cast<std::size_t>(q)];
    real_basis.push_back(x);
    real_basis.push_back(kI * x);
  }
  const Index r = static_cast<Index>(real_basis.size());
  Eigen::MatrixXd gram(r, r);
  for (Index a = 0; a < r; ++a) {
    for (Index b = 0; b < r; ++b) {
      gram(a, b) = pairing_oracle(real_basis[a], real_basis[b], n, m);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
  const auto sv = svd.singularValues();
  double scale = sv(0);
  for (const CMatrix& x : real_basis) scale = std::max(scale, x.squaredNorm());
  return sv(sv.size() - 1) > 1e-8 * scale;
}


}  // namespace bhtlab::oracles
