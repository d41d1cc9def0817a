#pragma once

// Dense complex linear algebra shared by every other part of the library.
//
// Matrices are Eigen::MatrixXcd. Polynomial coefficient sequences are stored
// in ascending powers throughout: c[0] + c[1] x + ... + c[d] x^d.

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace bhtlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

/// Default relative singular-value cutoff used for rank decisions.
inline constexpr double kRankThreshold = 1e-10;
/// Default relative cutoff below which polynomial coefficients are dropped.
inline constexpr double kChopThreshold = 1e-12;

bool all_finite(const CMatrix& x);
/// Throws ValidationError naming `what` if x has a NaN or Inf entry.
void require_finite(const CMatrix& x, const char* what);
/// Throws DimensionError unless x is rows x cols.
void require_shape(const CMatrix& x, Index rows, Index cols, const char* what);

bool is_anti_hermitian(const CMatrix& x, double tol);
bool is_unitary(const CMatrix& x, double tol);
/// Conjugate transpose, materialized.
inline CMatrix adjoint(const CMatrix& x) { return x.adjoint(); }

/// XY - YX for square X, Y of equal size.
CMatrix commutator(const CMatrix& x, const CMatrix& y);

/// Number of singular values above rel_threshold * (largest singular value).
std::size_t numerical_rank(const CMatrix& x, double rel_threshold = kRankThreshold);

/// Frobenius least-squares solution N of X N = U. X must have full column
/// rank; otherwise RankError carries the numerical rank.
CMatrix least_squares_solve(const CMatrix& x, const CMatrix& u,
                            double rel_threshold = kRankThreshold);

/// Orthonormal basis of the approximate null space of L (columns index the
/// domain). A right-singular vector belongs to the kernel when its singular
/// value is <= threshold * sigma_max; for L = 0 the whole domain is returned.
std::vector<CVector> operator_kernel(const CMatrix& l, double threshold);

/// Coefficients of det(lambda I - M), ascending in lambda, leading coefficient
/// exactly 1. Faddeev-LeVerrier recurrence.
std::vector<Complex> char_poly(const CMatrix& m);

/// Evaluate an ascending coefficient sequence at x (Horner).
Complex poly_eval(std::span<const Complex> coeffs, Complex x);

/// All roots (with multiplicity) of the ascending coefficient sequence, as
/// eigenvalues of the companion matrix. Leading coefficients below
/// kChopThreshold * max|c| are dropped first; an all-zero polynomial throws
/// DegenerateError.
std::vector<Complex> poly_roots(std::span<const Complex> coeffs);

/// Monic polynomial with the given roots, ascending coefficients.
std::vector<Complex> poly_from_roots(std::span<const Complex> roots);

/// The `count` complex roots of unity exp(2 pi i k / count) times `radius`.
std::vector<Complex> roots_of_unity(std::size_t count, double radius = 1.0);

/// X(zeta) = sum_i X_i zeta^i with all coefficients of one shape.
class PolyMatrix {
 public:
  explicit PolyMatrix(std::vector<CMatrix> coeffs);
  static PolyMatrix constant(CMatrix x);
  static PolyMatrix linear(CMatrix x0, CMatrix x1);

  std::size_t degree() const { return coeffs_.size() - 1; }
  Index rows() const { return coeffs_.front().rows(); }
  Index cols() const { return coeffs_.front().cols(); }
  const CMatrix& coeff(std::size_t i) const { return coeffs_.at(i); }
  const std::vector<CMatrix>& coeffs() const { return coeffs_; }
  const CMatrix& leading() const { return coeffs_.back(); }

  CMatrix operator()(Complex zeta) const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(Complex s, const PolyMatrix& a);

 private:
  std::vector<CMatrix> coeffs_;
};

/// Sum of a_{ij} zeta^i lambda^j with declared degree bounds. Only nonzero
/// coefficients are stored.
class BivariatePoly {
 public:
  using Key = std::pair<int, int>;  // (zeta power, lambda power)

  BivariatePoly() = default;
  BivariatePoly(int deg_zeta, int deg_lambda);

  int deg_zeta() const { return deg_zeta_; }
  int deg_lambda() const { return deg_lambda_; }
  const std::map<Key, Complex>& terms() const { return terms_; }

  /// Stores (or erases, when zero) the coefficient of zeta^i lambda^j.
  void set(int i, int j, Complex value);
  Complex coeff(int i, int j) const;
  double max_magnitude() const;

  Complex operator()(Complex zeta, Complex lambda) const;

  /// Copy without coefficients below rel * max_magnitude().
  BivariatePoly chopped(double rel = kChopThreshold) const;

  /// Coefficient sequence in zeta of the lambda^j term, ascending.
  std::vector<Complex> lambda_coeff(int j) const;

 private:
  int deg_zeta_ = 0;
  int deg_lambda_ = 0;
  std::map<Key, Complex> terms_;
};

struct ZetaSample {
  Complex zeta;
  std::vector<Complex> lambda_coeffs;  // ascending in lambda
};

/// Interpolates each lambda-coefficient in zeta through the sample nodes.
/// Exactly deg_zeta + 1 nodes use the Lagrange basis; more nodes use a least
/// squares fit of the same degree. Duplicate nodes throw NodeError.
BivariatePoly interpolate_bivariate(std::span<const ZetaSample> samples, int deg_zeta,
                                    double chop_rel = kChopThreshold);

}  // namespace bhtlab
