#include "bhtlab/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "bhtlab/errors.hpp"

namespace bhtlab {

LaxData build_lax(const HoloState& h) {
  h.validate();
  PolyMatrix x = PolyMatrix::linear(h.A0, h.A1);
  PolyMatrix y = PolyMatrix::linear(h.B0, h.B1);
  PolyMatrix z = x * y;
  PolyMatrix w = y * x;
  PolyMatrix zs = PolyMatrix::linear(0.5 * (h.A0 * h.B1 + h.A1 * h.B0), h.A1 * h.B1);
  PolyMatrix ws = PolyMatrix::linear(0.5 * (h.B0 * h.A1 + h.B1 * h.A0), h.B1 * h.A1);
  PolyMatrix mm = zs;
  PolyMatrix nn = Complex(-1.0) * ws;
  return {std::move(x), std::move(y), std::move(z), std::move(w),
          std::move(zs), std::move(ws), std::move(mm), std::move(nn)};
}

CMatrix solve_N(const CMatrix& x, const CMatrix& y, const CMatrix& u, const CMatrix& v,
                double tol) {
  const Index n = x.rows();
  const Index m = x.cols();
  require_shape(y, m, n, "solve_N: Y");
  require_shape(u, n, m, "solve_N: U");
  require_shape(v, m, n, "solve_N: V");
  const std::size_t rank_y = numerical_rank(y);
  if (rank_y < static_cast<std::size_t>(m)) {
    throw RankError("solve_N: Y lacks full row rank", rank_y, static_cast<std::size_t>(m));
  }
  const double scale = std::max(1.0, u.norm() * y.norm() + x.norm() * v.norm());
  const double compat = (u * y - x * v).norm();
  if (compat > tol * scale) {
    throw InconsistencyError("solve_N: U Y != X V", compat / scale);
  }
  CMatrix nsol = least_squares_solve(x, u);
  const double check = (nsol * y - v).norm() / std::max(1.0, nsol.norm() * y.norm() + v.norm());
  if (check > std::sqrt(tol)) throw InconsistencyError("solve_N: N Y != V", check);
  return nsol;
}

std::vector<Complex> lax_sample_nodes() {
  auto nodes = roots_of_unity(5);
  nodes.push_back(Complex(0.3, -0.7));
  return nodes;
}

std::array<double, 2> lax_residual(const HoloState& h) {
  const LaxData lax = build_lax(h);
  const HoloState d = holo_rhs(h);
  const PolyMatrix dx = PolyMatrix::linear(d.A0, d.A1);
  const PolyMatrix dy = PolyMatrix::linear(d.B0, d.B1);
  std::array<double, 2> worst{0.0, 0.0};
  for (const Complex zeta : lax_sample_nodes()) {
    const CMatrix x = lax.X(zeta);
    const CMatrix y = lax.Y(zeta);
    const CMatrix xd = dx(zeta);
    const CMatrix yd = dy(zeta);
    const CMatrix zdot = xd * y + x * yd;
    const CMatrix wdot = yd * x + y * xd;
    const CMatrix z = lax.Z(zeta);
    const CMatrix w = lax.W(zeta);
    const CMatrix zs = lax.Zsharp(zeta);
    const CMatrix ws = lax.Wsharp(zeta);
    worst[0] = std::max(worst[0], (zdot - (zs * z - z * zs)).norm());
    worst[1] = std::max(worst[1], (wdot - (ws * w - w * ws)).norm());
  }
  return worst;
}

BivariatePoly char_poly_polymatrix(const PolyMatrix& x, double chop_rel) {
  if (x.rows() != x.cols()) throw DimensionError("char_poly_polymatrix: matrix must be square");
  const int k = static_cast<int>(x.rows());
  const int deg_zeta = static_cast<int>(x.degree()) * k;
  std::vector<ZetaSample> samples;
  for (const Complex zeta : roots_of_unity(static_cast<std::size_t>(deg_zeta) + 1)) {
    samples.push_back({zeta, char_poly(x(zeta))});
  }
  return interpolate_bivariate(samples, deg_zeta, chop_rel);
}

BivariatePoly char_poly_pencil(const CMatrix& c0, const CMatrix& c1, double chop_rel) {
  return char_poly_polymatrix(PolyMatrix::linear(c0, c1), chop_rel);
}

std::pair<CMatrix, CMatrix> pencil_from(const HoloState& h) {
  h.validate();
  const Index n = h.n();
  const Index m = h.m();
  auto assemble = [&](const CMatrix& a, const CMatrix& b) {
    CMatrix c = CMatrix::Zero(n + m, n + m);
    c.topRightCorner(n, m) = a;
    c.bottomLeftCorner(m, n) = b;
    return c;
  };
  return {assemble(h.A0, h.B0), assemble(h.A1, h.B1)};
}

CMatrix grading_matrix(Index n, Index m) {
  CMatrix g = CMatrix::Identity(n + m, n + m);
  g.bottomRightCorner(m, m) *= -1.0;
  return g;
}

std::vector<Complex> det_pencil_coeffs(const CMatrix& x0, const CMatrix& x1) {
  require_shape(x0, x0.rows(), x0.rows(), "det_pencil_coeffs: X0");
  require_shape(x1, x0.rows(), x0.rows(), "det_pencil_coeffs: X1");
  const int deg = static_cast<int>(x0.rows());
  std::vector<ZetaSample> samples;
  for (const Complex zeta : roots_of_unity(static_cast<std::size_t>(deg) + 1)) {
    samples.push_back({zeta, {CMatrix(x0 + zeta * x1).determinant()}});
  }
  const BivariatePoly p = interpolate_bivariate(samples, deg);
  return p.lambda_coeff(0);
}

namespace {

std::vector<Complex> zeros_or_empty(const std::vector<Complex>& coeffs) {
  try {
    return poly_roots(coeffs);
  } catch (const DegenerateError&) {
    return {};
  }
}

bool identically_zero(const std::vector<Complex>& coeffs) {
  return std::all_of(coeffs.begin(), coeffs.end(), [](Complex c) { return c == Complex{}; });
}

}  // namespace

SpectralReport tau_and_square_check(const HoloState& h) {
  const auto [c0, c1] = pencil_from(h);
  const BivariatePoly raw = char_poly_pencil(c0, c1, 0.0);
  SpectralReport report;
  report.Phat = raw.chopped(kChopThreshold);

  const double scale = std::max(1.0, raw.max_magnitude());
  // Phat is lambda^(n-m) times a polynomial in lambda^2, so every surviving
  // lambda-power has the parity of n + m.
  const int parity = static_cast<int>((h.n() + h.m()) % 2);
  double odd = 0.0;
  for (const auto& [key, c] : raw.terms()) {
    if (key.second % 2 != parity) odd = std::max(odd, std::abs(c));
  }
  report.tau_residual = odd / scale;

  int power = report.Phat.deg_lambda();
  for (const auto& [key, c] : report.Phat.terms()) power = std::min(power, key.second);
  report.lambda_power = power;

  const Index n = h.n();
  const Index m = h.m();
  if (n == m) {
    const LaxData lax = build_lax(h);
    const BivariatePoly p = char_poly_polymatrix(lax.Z, 0.0);
    const BivariatePoly q = char_poly_polymatrix(lax.W, 0.0);
    const double pscale = std::max({1.0, p.max_magnitude(), raw.max_magnitude()});
    double square = 0.0;
    for (int i = 0; i <= raw.deg_zeta(); ++i) {
      for (int j = 0; j <= raw.deg_lambda(); ++j) {
        const Complex target = j % 2 == 0 ? p.coeff(i, j / 2) : Complex{};
        square = std::max(square, std::abs(raw.coeff(i, j) - target));
      }
    }
    double xy_yx = 0.0;
    for (int i = 0; i <= p.deg_zeta(); ++i) {
      for (int j = 0; j <= p.deg_lambda(); ++j) {
        xy_yx = std::max(xy_yx, std::abs(p.coeff(i, j) - q.coeff(i, j)));
      }
    }
    report.P = p.chopped(kChopThreshold);
    report.square_residual = square / pscale;
    report.xy_yx_residual = xy_yx / std::max({1.0, p.max_magnitude(), q.max_magnitude()});
    report.genus_S = static_cast<int>((n - 1) * (n - 1));
    report.genus_Shat = static_cast<int>((n - 1) * (2 * n - 1));

    const auto det_a = det_pencil_coeffs(h.A0, h.A1);
    const auto det_b = det_pencil_coeffs(h.B0, h.B1);
    report.ramification_A = zeros_or_empty(det_a);
    report.ramification_B = zeros_or_empty(det_b);
    bool disjoint = !identically_zero(det_a) && !identically_zero(det_b);
    for (const Complex a : report.ramification_A) {
      for (const Complex b : report.ramification_B) {
        if (std::abs(a - b) <= 1e-8) disjoint = false;
      }
    }
    report.disjoint = disjoint;
  }
  return report;
}

std::vector<Complex> spectral_coefficients(const HoloState& h) {
  const auto [c0, c1] = pencil_from(h);
  const BivariatePoly raw = char_poly_pencil(c0, c1, 0.0);
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>((raw.deg_zeta() + 1) * (raw.deg_lambda() + 1)));
  for (int i = 0; i <= raw.deg_zeta(); ++i) {
    for (int j = 0; j <= raw.deg_lambda(); ++j) out.push_back(raw.coeff(i, j));
  }
  return out;
}

double spectral_drift(const Trajectory<BHTState>& traj) {
  if (traj.empty()) return 0.0;
  const auto base = spectral_coefficients(reality_embed(traj.front().state));
  double worst = 0.0;
  for (const auto& point : traj) {
    const auto c = spectral_coefficients(reality_embed(point.state));
    for (std::size_t i = 0; i < c.size(); ++i) {
      worst = std::max(worst, std::abs(c[i] - base[i]) / (1.0 + std::abs(base[i])));
    }
  }
  return worst;
}

PolyMatrix nahm_lax(const NahmTriple& t) {
  const CMatrix beta = t.T2 + kI * t.T3;
  const CMatrix gamma = t.T2 - kI * t.T3;
  return PolyMatrix({beta, 2.0 * kI * t.T1, gamma});
}

std::vector<Complex> nahm_spectral_coefficients(const NahmTriple& t) {
  const BivariatePoly raw = char_poly_polymatrix(nahm_lax(t), 0.0);
  std::vector<Complex> out;
  for (int i = 0; i <= raw.deg_zeta(); ++i) {
    for (int j = 0; j <= raw.deg_lambda(); ++j) out.push_back(raw.coeff(i, j));
  }
  return out;
}

RegularityAt regularity_at(const PolyMatrix& x, ProjectivePoint zeta) {
  if (x.rows() != x.cols()) throw DimensionError("regularity_at: pencil must be square");
  const CMatrix value = std::holds_alternative<Infinity>(zeta)
                            ? x.leading()
                            : x(std::get<Complex>(zeta));
  const Index k = value.rows();
  CMatrix op(k * k, k * k);
  for (Index col = 0; col < k * k; ++col) {
    CMatrix e = CMatrix::Zero(k, k);
    e.data()[col] = 1.0;
    const CMatrix bracket = e * value - value * e;
    op.col(col) = Eigen::Map<const CVector>(bracket.data(), k * k);
  }
  RegularityAt out;
  out.centralizer_dim = operator_kernel(op, kRankThreshold).size();
  out.regular = out.centralizer_dim == static_cast<std::size_t>(k);
  return out;
}

}  // namespace bhtlab
