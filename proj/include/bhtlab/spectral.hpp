#pragma once

// Lax-pair data of the holomorphic flow and spectral curves of matrix
// pencils. Determinants of polynomial matrices are never expanded
// symbolically: characteristic polynomials are taken at roots-of-unity nodes
// and interpolated in zeta.

#include <array>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "bhtlab/flows.hpp"
#include "bhtlab/integrate.hpp"
#include "bhtlab/matkit.hpp"

namespace bhtlab {

/// X = A0 + A1 z, Y = B0 + B1 z, Z = XY, W = YX,
/// Z# = (A0 B1 + A1 B0)/2 + A1 B1 z, W# = (B0 A1 + B1 A0)/2 + B1 A1 z.
/// The Lax pair of the first-order system is M = Z#, N = -W#.
struct LaxData {
  PolyMatrix X, Y, Z, W, Zsharp, Wsharp, M, N;
};

LaxData build_lax(const HoloState& h);

/// The unique N with U = X N and V = N Y, for X (n x m) and Y (m x n) of
/// rank m. Throws RankError on rank deficiency and InconsistencyError when
/// U Y != X V or when the least-squares N fails V = N Y (relative tol).
CMatrix solve_N(const CMatrix& x, const CMatrix& y, const CMatrix& u, const CMatrix& v,
                double tol = 1e-10);

/// max over sample zeta of |Z' - [Z#, Z]| and |W' - [W#, W]| along holo_rhs.
std::array<double, 2> lax_residual(const HoloState& h);

/// The sample nodes used by lax_residual.
std::vector<Complex> lax_sample_nodes();

/// det(lambda - X(zeta)) for a polynomial matrix of degree d and size k,
/// from d k + 1 roots-of-unity nodes. chop_rel = 0 keeps raw coefficients.
BivariatePoly char_poly_polymatrix(const PolyMatrix& x, double chop_rel = kChopThreshold);

/// det(lambda - C0 - C1 zeta).
BivariatePoly char_poly_pencil(const CMatrix& c0, const CMatrix& c1,
                               double chop_rel = kChopThreshold);

/// C0 = [[0, A0], [B0, 0]], C1 = [[0, A1], [B1, 0]].
std::pair<CMatrix, CMatrix> pencil_from(const HoloState& h);

/// diag(I_n, -I_m).
CMatrix grading_matrix(Index n, Index m);

/// Coefficients of det(zeta) for a square linear pencil, ascending in zeta.
std::vector<Complex> det_pencil_coeffs(const CMatrix& x0, const CMatrix& x1);

struct SpectralReport {
  BivariatePoly Phat;              // det(lambda - C0 - C1 zeta), chopped
  std::optional<BivariatePoly> P;  // det(eta - A(zeta) B(zeta)) when n == m
  double tau_residual = 0.0;       // max |coefficient of lambda^j, j + n + m odd| / max(1, max |coefficient|)
  int lambda_power = 0;            // largest p with lambda^p | Phat
  std::optional<double> square_residual;  // n == m: |Phat(z, l) - P(z, l^2)|, relative
  std::optional<double> xy_yx_residual;   // n == m: |det(eta - XY) - det(eta - YX)|, relative
  std::optional<int> genus_S;             // (n-1)^2 when n == m
  std::optional<int> genus_Shat;          // (n-1)(2n-1) when n == m
  std::vector<Complex> ramification_A;    // zeros of det A(zeta), n == m
  std::vector<Complex> ramification_B;    // zeros of det B(zeta), n == m
  std::optional<bool> disjoint;           // n == m: zero sets farther apart than 1e-8
};

SpectralReport tau_and_square_check(const HoloState& h);

/// Raw coefficients of Phat on the full (k+1) x (k+1) grid, zeta-major.
std::vector<Complex> spectral_coefficients(const HoloState& h);

/// max over coefficients and time of |c(t) - c(0)| / (1 + |c(0)|) for the
/// pencils of reality_embed(state).
double spectral_drift(const Trajectory<BHTState>& traj);

/// Nahm Lax matrix L(zeta) = beta + 2 alpha zeta + (T2 - i T3) zeta^2, with
/// L' = [alpha + (T2 - i T3) zeta, L] along Nahm's equations.
PolyMatrix nahm_lax(const NahmTriple& t);

/// Raw coefficients of det(eta - L(zeta)) on the full grid, zeta-major.
std::vector<Complex> nahm_spectral_coefficients(const NahmTriple& t);

struct Infinity {};
/// A point of P^1: a finite zeta or the point at infinity, where a
/// polynomial matrix evaluates to its leading coefficient.
using ProjectivePoint = std::variant<Complex, Infinity>;

struct RegularityAt {
  bool regular = false;
  std::size_t centralizer_dim = 0;
};

/// Dimension of {Y : [Y, X(zeta)] = 0}; regular iff it equals the size.
RegularityAt regularity_at(const PolyMatrix& x, ProjectivePoint zeta);

}  // namespace bhtlab
