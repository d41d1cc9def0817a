#include "bhtlab/superalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "bhtlab/errors.hpp"

namespace bhtlab {

SuperMatrix::SuperMatrix(CMatrix u, CMatrix a, CMatrix b, CMatrix v)
    : u_(std::move(u)), a_(std::move(a)), b_(std::move(b)), v_(std::move(v)) {
  const Index n = u_.rows();
  const Index m = v_.rows();
  require_shape(u_, n, n, "SuperMatrix U block");
  require_shape(a_, n, m, "SuperMatrix A block");
  require_shape(b_, m, n, "SuperMatrix B block");
  require_shape(v_, m, m, "SuperMatrix V block");
}

SuperMatrix SuperMatrix::zero(Index n, Index m) {
  return {CMatrix::Zero(n, n), CMatrix::Zero(n, m), CMatrix::Zero(m, n), CMatrix::Zero(m, m)};
}

SuperMatrix SuperMatrix::identity(Index n, Index m) {
  return {CMatrix::Identity(n, n), CMatrix::Zero(n, m), CMatrix::Zero(m, n),
          CMatrix::Identity(m, m)};
}

SuperMatrix SuperMatrix::odd(CMatrix a, CMatrix b) {
  const Index n = a.rows();
  const Index m = a.cols();
  return {CMatrix::Zero(n, n), std::move(a), std::move(b), CMatrix::Zero(m, m)};
}

SuperMatrix SuperMatrix::even(CMatrix u, CMatrix v) {
  const Index n = u.rows();
  const Index m = v.rows();
  return {std::move(u), CMatrix::Zero(n, m), CMatrix::Zero(m, n), std::move(v)};
}

SuperMatrix SuperMatrix::from_matrix(const CMatrix& full, Index n, Index m) {
  require_shape(full, n + m, n + m, "SuperMatrix::from_matrix");
  return {full.topLeftCorner(n, n), full.topRightCorner(n, m), full.bottomLeftCorner(m, n),
          full.bottomRightCorner(m, m)};
}

CMatrix SuperMatrix::to_matrix() const {
  const Index n = this->n();
  const Index m = this->m();
  CMatrix full(n + m, n + m);
  full << u_, a_, b_, v_;
  return full;
}

SuperMatrix SuperMatrix::even_part() const { return even(u_, v_); }
SuperMatrix SuperMatrix::odd_part() const { return odd(a_, b_); }

std::optional<Parity> SuperMatrix::parity() const {
  const bool odd_zero = a_.isZero(0.0) && b_.isZero(0.0);
  const bool even_zero = u_.isZero(0.0) && v_.isZero(0.0);
  if (odd_zero) return Parity::even;
  if (even_zero) return Parity::odd;
  return std::nullopt;
}

bool SuperMatrix::is_even() const { return a_.isZero(0.0) && b_.isZero(0.0); }
bool SuperMatrix::is_odd() const { return u_.isZero(0.0) && v_.isZero(0.0); }

double SuperMatrix::norm() const {
  return std::sqrt(u_.squaredNorm() + a_.squaredNorm() + b_.squaredNorm() + v_.squaredNorm());
}

SuperMatrix SuperMatrix::operator-() const { return {-u_, -a_, -b_, -v_}; }

SuperMatrix& SuperMatrix::operator+=(const SuperMatrix& o) {
  require_same_blocks(*this, o, "SuperMatrix sum");
  u_ += o.u_;
  a_ += o.a_;
  b_ += o.b_;
  v_ += o.v_;
  return *this;
}

SuperMatrix& SuperMatrix::operator-=(const SuperMatrix& o) {
  require_same_blocks(*this, o, "SuperMatrix difference");
  u_ -= o.u_;
  a_ -= o.a_;
  b_ -= o.b_;
  v_ -= o.v_;
  return *this;
}

SuperMatrix operator*(Complex s, const SuperMatrix& x) {
  return {s * x.u_, s * x.a_, s * x.b_, s * x.v_};
}

SuperMatrix operator*(const SuperMatrix& x, const SuperMatrix& y) {
  require_same_blocks(x, y, "SuperMatrix product");
  return {x.u_ * y.u_ + x.a_ * y.b_, x.u_ * y.a_ + x.a_ * y.v_, x.b_ * y.u_ + x.v_ * y.b_,
          x.b_ * y.a_ + x.v_ * y.v_};
}

void require_same_blocks(const SuperMatrix& x, const SuperMatrix& y, const char* what) {
  if (x.n() != y.n() || x.m() != y.m()) {
    throw DimensionError(std::string(what) + ": block sizes differ");
  }
}

SuperMatrix superbracket(const SuperMatrix& x, const SuperMatrix& y) {
  require_same_blocks(x, y, "superbracket");
  // Only the odd-odd component picks up the sign: XY - YX + 2 Y1 X1.
  const SuperMatrix x1 = x.odd_part();
  const SuperMatrix y1 = y.odd_part();
  return x * y - y * x + Complex(2.0) * (y1 * x1);
}

Complex supertrace(const SuperMatrix& x) { return x.U().trace() - x.V().trace(); }

SuperMatrix j_map(const SuperMatrix& x) {
  return {-x.U().adjoint(), -x.B().adjoint(), x.A().adjoint(), -x.V().adjoint()};
}

double pairing(const SuperMatrix& x, const SuperMatrix& y) {
  require_same_blocks(x, y, "pairing");
  const Complex s = supertrace(j_map(x) * y + j_map(y) * x);
  return -0.5 * s.real();
}

double pairing_blockwise(const SuperMatrix& x, const SuperMatrix& y) {
  require_same_blocks(x, y, "pairing_blockwise");
  auto term = [](const CMatrix& p, const CMatrix& q) {
    return (p.adjoint() * q + q.adjoint() * p).trace().real();
  };
  return 0.5 * (term(x.U(), y.U()) + term(x.A(), y.A()) + term(x.B(), y.B()) -
                term(x.V(), y.V()));
}

Group default_group(Index n, Index m) { return n == m ? Group::sl_sl : Group::s_gl; }

std::vector<SuperMatrix> even_subalgebra_basis(Index n, Index m, Group group) {
  std::vector<SuperMatrix> basis;
  auto unit = [](Index size, Index i, Index j) {
    CMatrix e = CMatrix::Zero(size, size);
    e(i, j) = 1.0;
    return e;
  };
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i != j) basis.push_back(SuperMatrix::even(unit(n, i, j), CMatrix::Zero(m, m)));
    }
  }
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      if (i != j) basis.push_back(SuperMatrix::even(CMatrix::Zero(n, n), unit(m, i, j)));
    }
  }
  for (Index i = 0; i + 1 < n; ++i) {
    basis.push_back(
        SuperMatrix::even(unit(n, i, i) - unit(n, i + 1, i + 1), CMatrix::Zero(m, m)));
  }
  for (Index i = 0; i + 1 < m; ++i) {
    basis.push_back(
        SuperMatrix::even(CMatrix::Zero(n, n), unit(m, i, i) - unit(m, i + 1, i + 1)));
  }
  if (group == Group::s_gl) basis.push_back(SuperMatrix::even(unit(n, 0, 0), -unit(m, 0, 0)));
  return basis;
}

CVector odd_coordinates(const SuperMatrix& x) {
  const Index na = x.A().size();
  const Index nb = x.B().size();
  CVector out(na + nb);
  out.head(na) = Eigen::Map<const CVector>(x.A().data(), na);
  out.tail(nb) = Eigen::Map<const CVector>(x.B().data(), nb);
  return out;
}

SuperMatrix odd_from_coordinates(const CVector& coords, Index n, Index m) {
  if (coords.size() != 2 * n * m) throw DimensionError("odd_from_coordinates: length mismatch");
  CMatrix a = Eigen::Map<const CMatrix>(coords.data(), n, m);
  CMatrix b = Eigen::Map<const CMatrix>(coords.data() + n * m, m, n);
  return SuperMatrix::odd(std::move(a), std::move(b));
}

CMatrix ad_operator(const SuperMatrix& c, const std::vector<SuperMatrix>& basis) {
  CMatrix op(2 * c.n() * c.m(), static_cast<Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    op.col(static_cast<Index>(k)) = odd_coordinates(superbracket(c, basis[k]));
  }
  return op;
}

RegularityReport regularity(const SuperMatrix& c, Group group, double kernel_threshold,
                            double gram_threshold) {
  if (!c.is_odd()) throw ValidationError("regularity: C must be odd");
  if (c.n() == c.m() && group == Group::s_gl) {
    throw ValidationError("regularity: n == m requires the SL x SL subalgebra");
  }
  const auto basis = even_subalgebra_basis(c.n(), c.m(), group);
  RegularityReport report;
  if (basis.empty()) {
    report.gram = Eigen::MatrixXd(0, 0);
    return report;
  }
  const auto kernel = operator_kernel(ad_operator(c, basis), kernel_threshold);
  for (const auto& coeffs : kernel) {
    SuperMatrix k = SuperMatrix::zero(c.n(), c.m());
    for (std::size_t i = 0; i < basis.size(); ++i) k += coeffs(static_cast<Index>(i)) * basis[i];
    report.kernel_basis.push_back(std::move(k));
  }
  const std::size_t d = report.kernel_basis.size();
  if (d == 0) {
    report.gram = Eigen::MatrixXd(0, 0);
    return report;
  }
  std::vector<SuperMatrix> real_basis;
  real_basis.reserve(2 * d);
  for (const auto& k : report.kernel_basis) {
    real_basis.push_back(k);
    real_basis.push_back(kI * k);
  }
  const Index r = static_cast<Index>(real_basis.size());
  report.gram.resize(r, r);
  for (Index a = 0; a < r; ++a) {
    for (Index b = a; b < r; ++b) {
      report.gram(a, b) = report.gram(b, a) = pairing(real_basis[a], real_basis[b]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(report.gram, Eigen::EigenvaluesOnly);
  const auto ev = es.eigenvalues().cwiseAbs();
  report.condition = ev.minCoeff();
  // Scale by the basis norms, not the largest eigenvalue: when the pairing
  // vanishes on the kernel every eigenvalue is rounding noise.
  double scale = ev.maxCoeff();
  for (const auto& k : report.kernel_basis) scale = std::max(scale, k.norm() * k.norm());
  report.regular = report.condition > gram_threshold * scale;
  return report;
}

double orbit_gradient_check(const SuperMatrix& c) {
  const double scale = c.norm() * c.norm();
  if (scale == 0.0) return 0.0;
  const auto report = regularity(c, default_group(c.n(), c.m()));
  const SuperMatrix grad = superbracket(j_map(c), c);
  double worst = 0.0;
  for (const auto& k : report.kernel_basis) {
    const SuperMatrix unit = Complex(1.0 / k.norm()) * k;
    worst = std::max(worst, std::abs(pairing(grad, unit)));
    worst = std::max(worst, std::abs(pairing(grad, kI * unit)));
  }
  return worst / scale;
}

}  // namespace bhtlab
