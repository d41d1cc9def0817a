#include "bhtlab/alts.hpp"

#include <algorithm>

#include "bhtlab/errors.hpp"

namespace bhtlab {

CMatrix triple_product(const CMatrix& x, const CMatrix& y, const CMatrix& z,
                       TripleVariant variant) {
  const CMatrix xy = x * y;
  const CMatrix yx = y * x;
  const double first = variant == TripleVariant::corrupted ? -1.0 : 1.0;
  return first * (xy * z) + yx * z - z * xy - z * yx;
}

CMatrix MatrixAlts::triple(const CMatrix& x, const CMatrix& y, const CMatrix& z) const {
  if (x.rows() != x.cols() || x.rows() != y.rows() || y.rows() != z.rows() ||
      y.rows() != y.cols() || z.rows() != z.cols()) {
    throw DimensionError("MatrixAlts::triple: operands must be square of equal size");
  }
  return triple_product(x, y, z, variant);
}

SuperMatrix OffDiagonalAlts::triple(const SuperMatrix& x, const SuperMatrix& y,
                                    const SuperMatrix& z) const {
  require_same_blocks(x, y, "triple");
  require_same_blocks(y, z, "triple");
  if (!x.is_odd() || !y.is_odd() || !z.is_odd()) {
    throw ValidationError("triple: off-diagonal ALTS elements must be odd");
  }
  const CMatrix full = triple_product(x.to_matrix(), y.to_matrix(), z.to_matrix(), variant);
  // Closed on the off-diagonal blocks; drop the (exactly zero) diagonal blocks.
  return SuperMatrix::from_matrix(full, x.n(), x.m()).odd_part();
}

SuperMatrix triple(const SuperMatrix& x, const SuperMatrix& y, const SuperMatrix& z) {
  return OffDiagonalAlts{}.triple(x, y, z);
}

AxiomResiduals AxiomResiduals::relative() const {
  AxiomResiduals r = *this;
  if (scale3 > 0.0) {
    r.symmetry /= scale3;
    r.cyclic /= scale3;
  }
  if (scale5 > 0.0) r.derivation /= scale5;
  r.scale3 = r.scale5 = 1.0;
  return r;
}

double AxiomResiduals::max() const { return std::max({symmetry, cyclic, derivation}); }

SuperMatrix LeftMultOp::apply(const SuperMatrix& z) const {
  return odd_from_coordinates(matrix * odd_coordinates(z), z.n(), z.m());
}

LeftMultOp left_mult(const SuperMatrix& x, const SuperMatrix& y, const OffDiagonalAlts& sys) {
  const Index n = x.n();
  const Index m = x.m();
  const Index dim = 2 * n * m;
  CMatrix op(dim, dim);
  for (Index k = 0; k < dim; ++k) {
    const SuperMatrix e = odd_from_coordinates(CVector::Unit(dim, k), n, m);
    op.col(k) = odd_coordinates(sys.triple(x, y, e));
  }
  return {x, y, std::move(op)};
}

double left_mult_identity_residual(const SuperMatrix& u, const SuperMatrix& v,
                                   const SuperMatrix& x, const SuperMatrix& y,
                                   const OffDiagonalAlts& sys) {
  const CMatrix luv = left_mult(u, v, sys).matrix;
  const CMatrix lxy = left_mult(x, y, sys).matrix;
  const CMatrix lhs = luv * lxy - lxy * luv;
  const CMatrix rhs = left_mult(sys.triple(u, v, x), y, sys).matrix +
                      left_mult(x, sys.triple(u, v, y), sys).matrix;
  return (lhs - rhs).norm();
}

double superalgebra_consistency(const SuperMatrix& x, const SuperMatrix& y,
                                const SuperMatrix& z) {
  return (triple(x, y, z) - superbracket(superbracket(x, y), z)).norm();
}

KMSplit km_split(const SuperMatrix& even) {
  if (!even.is_even()) throw ValidationError("km_split: element must be even");
  const SuperMatrix j = j_map(even);
  return {Complex(0.5) * (even + j), Complex(0.5) * (even - j)};
}

SuperMatrix jccc_rhs(const SuperMatrix& c) {
  return Complex(0.5) * triple(j_map(c), c, c);
}

NahmTriple nahm_triple_from(const SuperMatrix& c) {
  if (!c.is_odd()) throw ValidationError("nahm_triple_from: C must be odd");
  const SuperMatrix cjc = superbracket(c, j_map(c));
  const SuperMatrix cc = superbracket(c, c);
  const KMSplit split = km_split(cc);
  NahmTriple t;
  t.T1 = (Complex(0.0, -0.5) * cjc).to_matrix();
  t.T2 = (Complex(0.5) * split.K_part).to_matrix();
  t.T3 = (Complex(0.0, -0.5) * split.M_part).to_matrix();
  t.alpha = (Complex(0.5) * cjc).to_matrix();
  t.beta = (Complex(0.5) * cc).to_matrix();
  return t;
}

std::array<double, 2> nahm_alpha_beta_residual(const SuperMatrix& c) {
  const NahmTriple t = nahm_triple_from(c);
  const SuperMatrix dc = jccc_rhs(c);
  const SuperMatrix jc = j_map(c);
  const SuperMatrix dalpha =
      Complex(0.5) * (superbracket(dc, jc) + superbracket(c, j_map(dc)));
  const SuperMatrix dbeta = Complex(0.5) * (superbracket(dc, c) + superbracket(c, dc));
  const CMatrix alpha_target = kI * commutator(t.T2, t.T3);
  const CMatrix beta_target = commutator(t.alpha, t.beta);
  return {(dalpha.to_matrix() - alpha_target).norm(), (dbeta.to_matrix() - beta_target).norm()};
}

SchmidTriple schmid_triple_from(const SuperMatrix& c) {
  if (!c.is_odd()) throw ValidationError("schmid_triple_from: C must be odd");
  const KMSplit split = km_split(superbracket(c, c));
  return {Complex(0.5) * superbracket(c, j_map(c)), Complex(0.5) * split.K_part,
          Complex(0.5) * split.M_part};
}

std::array<double, 3> nahm_schmid_residual(const SuperMatrix& c, SchmidConvention convention) {
  const SchmidTriple r = schmid_triple_from(c);
  const SuperMatrix dc = jccc_rhs(c);
  const SuperMatrix dr1 =
      Complex(0.5) * (superbracket(dc, j_map(c)) + superbracket(c, j_map(dc)));
  const KMSplit dsplit = km_split(superbracket(dc, c) + superbracket(c, dc));
  const SuperMatrix dr2 = Complex(0.5) * dsplit.K_part;
  const SuperMatrix dr3 = Complex(0.5) * dsplit.M_part;
  const Complex k = convention == SchmidConvention::half ? 0.5 : 1.0;
  return {(dr1 - k * superbracket(r.R2, r.R3)).norm(),
          (dr2 - k * superbracket(r.R1, r.R3)).norm(),
          (dr3 - k * superbracket(r.R1, r.R2)).norm()};
}

}  // namespace bhtlab
