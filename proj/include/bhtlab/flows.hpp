#pragma once

// Moment maps on W = Mat(n,m) + Mat(m,n), the BHT gradient flow and its
// gauge-dependent and holomorphic variants, Nahm's equations, and the
// pointwise identities tying the BHT flow to Nahm's equations.

#include <array>
#include <utility>

#include "bhtlab/matkit.hpp"

namespace bhtlab {

/// A point (A, B) of W: A is n x m, B is m x n. Also used for tangents.
struct BHTState {
  CMatrix A;
  CMatrix B;

  Index n() const { return A.rows(); }
  Index m() const { return A.cols(); }
  /// Throws DimensionError unless B is m x n.
  void validate() const;

  BHTState& operator+=(const BHTState& o);
  friend BHTState operator+(BHTState a, const BHTState& b) { return a += b; }
  friend BHTState operator-(const BHTState& a, const BHTState& b) { return {a.A - b.A, a.B - b.B}; }
  friend BHTState operator*(double s, const BHTState& x) { return {s * x.A, s * x.B}; }
};

/// Three k x k matrices evolving under Nahm's equations, with the complex
/// combinations alpha = i T1 and beta = T2 + i T3.
struct NahmTriple {
  CMatrix T1;
  CMatrix T2;
  CMatrix T3;
  CMatrix alpha;
  CMatrix beta;

  static NahmTriple from_components(CMatrix t1, CMatrix t2, CMatrix t3);

  NahmTriple& operator+=(const NahmTriple& o);
  friend NahmTriple operator+(NahmTriple a, const NahmTriple& b) { return a += b; }
  friend NahmTriple operator*(double s, const NahmTriple& x);
};

/// Complexified configuration (A0, A1, B0, B1); X(zeta) = A0 + A1 zeta and
/// Y(zeta) = B0 + B1 zeta.
struct HoloState {
  CMatrix A0;
  CMatrix A1;
  CMatrix B0;
  CMatrix B1;

  Index n() const { return A0.rows(); }
  Index m() const { return A0.cols(); }
  void validate() const;

  HoloState& operator+=(const HoloState& o);
  friend HoloState operator+(HoloState a, const HoloState& b) { return a += b; }
  friend HoloState operator*(double s, const HoloState& x);
};

/// Moment maps for the U(n) and U(m) actions. mu1, nu1 (and the components
/// mu2, mu3, nu2, nu3) are the anti-Hermitian moment values; mu23 = mu2 + i mu3,
/// nu23 = nu2 + i nu3. Norms use |X|^2 = -tr X^2.
struct MomentData {
  CMatrix mu1, mu2, mu3, mu23;
  CMatrix nu1, nu2, nu3, nu23;
  double F = 0.0;  // 1/2 |mu1|^2 - 1/2 |nu1|^2
  std::array<double, 3> gaps{};  // |mu_i|^2 - |nu_i|^2
};

/// -tr X^2, real part. Nonnegative for anti-Hermitian X.
double lie_norm_sq(const CMatrix& x);

MomentData moments(const BHTState& s);

/// F = 1/2 |mu1|^2 - 1/2 |nu1|^2 = 1/4 tr(A*A B B* - B*B A A*).
double bht_potential(const BHTState& s);

/// A' = 1/2 (A B B* - B* B A), B' = 1/2 (A* A B - B A A*).
BHTState bht_rhs(const BHTState& s);

/// T1' = [T2, T3], T2' = [T3, T1], T3' = [T1, T2] (alpha, beta follow).
NahmTriple nahm_rhs(const NahmTriple& t);

/// Gauge-dependent flow with anti-Hermitian u (n x n) and v (m x m):
/// A' = -u A + A v + 1/2 (A B B* - B* B A), B' = -v B + B u + 1/2 (A* A B - B A A*).
BHTState gauge_bht_rhs(const BHTState& s, const CMatrix& u, const CMatrix& v);

struct GaugeTransformed {
  BHTState state;
  CMatrix u;
  CMatrix v;
};

/// A -> g A h^-1, B -> h B g^-1, u -> g u g^-1 - g' g^-1, v -> h v h^-1 - h' h^-1.
/// g and h must be unitary to 1e-10.
GaugeTransformed gauge_transform(const BHTState& s, const CMatrix& g, const CMatrix& h,
                                 const CMatrix& u, const CMatrix& v, const CMatrix& gdot,
                                 const CMatrix& hdot);

/// Holomorphic flow of the spectral-parameter quadruple.
HoloState holo_rhs(const HoloState& h);

/// (A, B) -> (A0, A1, B0, B1) = (A, -B*, B, A*).
HoloState reality_embed(const BHTState& s);

/// Nahm data T (from A B and A A* - B* B) and S (from B A and A* A - B B*).
NahmTriple nahm_t_from(const BHTState& s);
NahmTriple nahm_s_from(const BHTState& s);

/// |dT_i - Nahm_i(T)| for i = 1..3 followed by the same for S, where the
/// derivatives come from the product rule along bht_rhs.
std::array<double, 6> chain_rule_residuals(const BHTState& s);

struct GradientCheck {
  double cosine = 1.0;
  double ratio = 0.0;
};

/// Central differences of bht_potential over all real coordinates, compared
/// with the vectorized bht_rhs. When both vectors vanish the cosine is 1 and
/// the ratio NaN; when only one vanishes the cosine is 0.
GradientCheck gradient_check(const BHTState& s, double h);

/// Real coordinates (Re, Im interleaved, A then B, column-major).
Eigen::VectorXd real_coordinates(const BHTState& s);

}  // namespace bhtlab
