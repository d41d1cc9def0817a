#pragma once

// The Lie superalgebra gl(n|m): (n|m)-block matrices
//
//     [ U  A ]      U: n x n, A: n x m      even part: (U, V)
//     [ B  V ]      B: m x n, V: m x m      odd part:  (A, B)
//
// with the graded bracket [X, Y] = XY - (-1)^{|X||Y|} YX, the supertrace,
// the antilinear map J and the indefinite real pairing built from both.

#include <limits>
#include <optional>
#include <vector>

#include "bhtlab/matkit.hpp"

namespace bhtlab {

enum class Parity { even = 0, odd = 1 };

class SuperMatrix {
 public:
  SuperMatrix(CMatrix u, CMatrix a, CMatrix b, CMatrix v);

  static SuperMatrix zero(Index n, Index m);
  static SuperMatrix identity(Index n, Index m);
  static SuperMatrix odd(CMatrix a, CMatrix b);
  static SuperMatrix even(CMatrix u, CMatrix v);
  static SuperMatrix from_matrix(const CMatrix& full, Index n, Index m);

  Index n() const { return u_.rows(); }
  Index m() const { return v_.rows(); }
  const CMatrix& U() const { return u_; }
  const CMatrix& A() const { return a_; }
  const CMatrix& B() const { return b_; }
  const CMatrix& V() const { return v_; }

  CMatrix to_matrix() const;
  SuperMatrix even_part() const;
  SuperMatrix odd_part() const;
  /// Parity when the element is homogeneous (the other blocks exactly zero).
  /// The zero element reports even.
  std::optional<Parity> parity() const;
  bool is_even() const;
  bool is_odd() const;
  /// Frobenius norm of the full matrix.
  double norm() const;

  SuperMatrix operator-() const;
  SuperMatrix& operator+=(const SuperMatrix& o);
  SuperMatrix& operator-=(const SuperMatrix& o);
  friend SuperMatrix operator+(SuperMatrix a, const SuperMatrix& b) { return a += b; }
  friend SuperMatrix operator-(SuperMatrix a, const SuperMatrix& b) { return a -= b; }
  friend SuperMatrix operator*(Complex s, const SuperMatrix& x);
  /// Ordinary (ungraded) matrix product, blockwise.
  friend SuperMatrix operator*(const SuperMatrix& x, const SuperMatrix& y);

 private:
  CMatrix u_, a_, b_, v_;
};

void require_same_blocks(const SuperMatrix& x, const SuperMatrix& y, const char* what);

/// Graded bracket, extended bilinearly to inhomogeneous arguments. For two
/// odd elements it is the anticommutator.
SuperMatrix superbracket(const SuperMatrix& x, const SuperMatrix& y);

/// tr U - tr V.
Complex supertrace(const SuperMatrix& x);

/// (U, A, B, V) -> (-U^*, -B^*, A^*, -V^*). Antilinear; J^2 = -1 on the odd
/// part and +1 on the even part; commutes with the superbracket.
SuperMatrix j_map(const SuperMatrix& x);

/// <X, Y> = -1/2 str(J(X) Y + J(Y) X), real and symmetric; positive definite
/// on the odd part, signature (+, -) on the diagonal blocks.
double pairing(const SuperMatrix& x, const SuperMatrix& y);

/// The same form from the block expression 1/2 sum (-1)^{ij} tr(X_ij^* Y_ij + Y_ij^* X_ij).
double pairing_blockwise(const SuperMatrix& x, const SuperMatrix& y);

/// Even subalgebra acting on the odd part. s_gl: tr U + tr V = 0 (used when
/// n != m). sl_sl: tr U = tr V = 0 (required when n == m, where s_gl
/// contains the pairing-null element (I, -I)).
enum class Group { s_gl, sl_sl };

Group default_group(Index n, Index m);

/// Basis of the even subalgebra built from elementary matrices.
std::vector<SuperMatrix> even_subalgebra_basis(Index n, Index m, Group group);

/// Matrix of rho -> [C, rho] from the given even basis to the odd part,
/// with odd coordinates vec(A) followed by vec(B) (column-major).
CMatrix ad_operator(const SuperMatrix& c, const std::vector<SuperMatrix>& basis);

/// Odd coordinates vec(A) ++ vec(B), and the inverse.
CVector odd_coordinates(const SuperMatrix& x);
SuperMatrix odd_from_coordinates(const CVector& coords, Index n, Index m);

struct RegularityReport {
  std::vector<SuperMatrix> kernel_basis;  // complex basis of Ker ad C in the subalgebra
  Eigen::MatrixXd gram;                   // pairing on the real span of {k, i k}
  bool regular = true;
  double condition = std::numeric_limits<double>::infinity();  // smallest |eigenvalue| of gram
};

inline constexpr double kGramThreshold = 1e-8;

/// Nondegeneracy of the pairing on Ker ad C inside the even subalgebra.
/// Throws ValidationError if C is not odd, or if n == m and group is s_gl.
RegularityReport regularity(const SuperMatrix& c, Group group,
                            double kernel_threshold = kRankThreshold,
                            double gram_threshold = kGramThreshold);

/// max |<[J(C), C], k>| over a real basis of unit-norm kernel elements,
/// divided by |C|^2. Vanishes when [J(C), C] is pairing-orthogonal to the
/// stabilizer, i.e. when the flow is the orbit gradient of <C, C>/4.
double orbit_gradient_check(const SuperMatrix& c);

}  // namespace bhtlab
