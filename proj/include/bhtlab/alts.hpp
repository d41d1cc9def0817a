#pragma once

// Anti-Lie triple systems.
//
// Two concrete instances are provided: all k x k matrices and the
// off-diagonal blocks Mat(n,m) + Mat(m,n) of gl(n|m). Both use the triple
// product [x, y, z] = xyz + yxz - zxy - zyx, which is the double superbracket
// [[x, y], z] on odd elements. Generic code is written against the
// TripleSystem concept so further instances can be plugged in.

#include <array>
#include <concepts>

#include "bhtlab/flows.hpp"
#include "bhtlab/superalg.hpp"

namespace bhtlab {

/// corrupted flips the sign of the xyz term; used as a negative control.
enum class TripleVariant { standard, corrupted };

template <class S>
concept TripleSystem = requires(const S& sys, const typename S::Element& x) {
  { sys.triple(x, x, x) } -> std::same_as<typename S::Element>;
  { sys.norm(x) } -> std::convertible_to<double>;
  { x + x } -> std::convertible_to<typename S::Element>;
  { x - x } -> std::convertible_to<typename S::Element>;
};

/// Full-matrix product shared by both instances.
CMatrix triple_product(const CMatrix& x, const CMatrix& y, const CMatrix& z,
                       TripleVariant variant = TripleVariant::standard);

struct MatrixAlts {
  using Element = CMatrix;
  TripleVariant variant = TripleVariant::standard;

  CMatrix triple(const CMatrix& x, const CMatrix& y, const CMatrix& z) const;
  double norm(const CMatrix& x) const { return x.norm(); }
};

struct OffDiagonalAlts {
  using Element = SuperMatrix;
  TripleVariant variant = TripleVariant::standard;

  /// Throws ValidationError unless all arguments are odd.
  SuperMatrix triple(const SuperMatrix& x, const SuperMatrix& y, const SuperMatrix& z) const;
  SuperMatrix quaternionic(const SuperMatrix& x) const { return j_map(x); }
  double norm(const SuperMatrix& x) const { return x.norm(); }
};

/// Triple product on the off-diagonal ALTS.
SuperMatrix triple(const SuperMatrix& x, const SuperMatrix& y, const SuperMatrix& z);

struct AxiomResiduals {
  double symmetry = 0.0;    // |[x,y,z] - [y,x,z]|
  double cyclic = 0.0;      // |[x,y,z] + [z,x,y] + [y,z,x]|
  double derivation = 0.0;  // |[u,v,[x,y,z]] - [[u,v,x],y,z] - [x,[u,v,y],z] - [x,y,[u,v,z]]|
  double scale3 = 1.0;      // |x||y||z|
  double scale5 = 1.0;      // |u||v||x||y||z|

  /// Residuals divided by the magnitude of the terms they compare.
  AxiomResiduals relative() const;
  double max() const;
};

template <TripleSystem S>
AxiomResiduals axioms_residual(const S& sys, const typename S::Element& x,
                               const typename S::Element& y, const typename S::Element& z,
                               const typename S::Element& u, const typename S::Element& v) {
  const auto xyz = sys.triple(x, y, z);
  AxiomResiduals r;
  r.symmetry = sys.norm(xyz - sys.triple(y, x, z));
  r.cyclic = sys.norm(xyz + sys.triple(z, x, y) + sys.triple(y, z, x));
  const auto lhs = sys.triple(u, v, xyz);
  const typename S::Element rhs = sys.triple(sys.triple(u, v, x), y, z) +
                                   sys.triple(x, sys.triple(u, v, y), z) +
                                   sys.triple(x, y, sys.triple(u, v, z));
  r.derivation = sys.norm(lhs - rhs);
  r.scale3 = sys.norm(x) * sys.norm(y) * sys.norm(z);
  r.scale5 = r.scale3 * sys.norm(u) * sys.norm(v);
  return r;
}

/// z -> [x, y, z] on the odd coordinates of gl(n|m).
struct LeftMultOp {
  SuperMatrix x;
  SuperMatrix y;
  CMatrix matrix;

  SuperMatrix apply(const SuperMatrix& z) const;
};

LeftMultOp left_mult(const SuperMatrix& x, const SuperMatrix& y,
                     const OffDiagonalAlts& sys = {});

/// |[L(u,v), L(x,y)] - L(L(u,v)x, y) - L(x, L(u,v)y)| as operator matrices.
double left_mult_identity_residual(const SuperMatrix& u, const SuperMatrix& v,
                                   const SuperMatrix& x, const SuperMatrix& y,
                                   const OffDiagonalAlts& sys = {});

/// |[x, y, z] - [[x, y], z]| with the bracket taken in gl(n|m).
double superalgebra_consistency(const SuperMatrix& x, const SuperMatrix& y, const SuperMatrix& z);

/// Split of an even element into the +1 (K) and -1 (M) eigenspaces of J.
struct KMSplit {
  SuperMatrix K_part;
  SuperMatrix M_part;
};

KMSplit km_split(const SuperMatrix& even);

/// C' = 1/2 [J(C), C, C].
SuperMatrix jccc_rhs(const SuperMatrix& c);

/// T1 = -(i/2)[C, J(C)], T2 = 1/2 [C, C]_K, T3 = -(i/2)[C, C]_M as (n+m)-square
/// matrices; alpha = 1/2 [C, J(C)] and beta = 1/2 [C, C] are computed
/// directly from C rather than from the T's.
NahmTriple nahm_triple_from(const SuperMatrix& c);

/// |alpha' - i [T2, T3]| and |beta' - [alpha, beta]| along C' = jccc_rhs(C),
/// derivatives by the product rule.
std::array<double, 2> nahm_alpha_beta_residual(const SuperMatrix& c);

enum class SchmidConvention { half, unit };

/// The convention for which the Nahm-Schmid residuals vanish identically.
/// Pinned by the derivative oracle in the tests.
inline constexpr SchmidConvention kSchmidConvention = SchmidConvention::unit;

struct SchmidTriple {
  SuperMatrix R1;  // 1/2 [C, J(C)]  (in M)
  SuperMatrix R2;  // 1/2 [C, C]_K
  SuperMatrix R3;  // 1/2 [C, C]_M
};

SchmidTriple schmid_triple_from(const SuperMatrix& c);

/// |R1' - c[R2,R3]|, |R2' - c[R1,R3]|, |R3' - c[R1,R2]| with c = 1/2 or 1,
/// derivatives by the product rule along C' = jccc_rhs(C).
std::array<double, 3> nahm_schmid_residual(const SuperMatrix& c, SchmidConvention convention);

}  // namespace bhtlab
