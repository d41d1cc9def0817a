#include "bhtlab/matkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bhtlab/errors.hpp"

namespace bhtlab {

bool all_finite(const CMatrix& x) {
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index i = 0; i < x.rows(); ++i) {
      if (!std::isfinite(x(i, j).real()) || !std::isfinite(x(i, j).imag())) return false;
    }
  }
  return true;
}

void require_finite(const CMatrix& x, const char* what) {
  if (!all_finite(x)) throw ValidationError(std::string(what) + " has non-finite entries");
}

void require_shape(const CMatrix& x, Index rows, Index cols, const char* what) {
  if (x.rows() != rows || x.cols() != cols) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(rows) + "x" +
                         std::to_string(cols) + ", got " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()));
  }
}

bool is_anti_hermitian(const CMatrix& x, double tol) {
  if (x.rows() != x.cols()) return false;
  return (x + x.adjoint()).norm() <= tol * std::max(1.0, x.norm());
}

bool is_unitary(const CMatrix& x, double tol) {
  if (x.rows() != x.cols()) return false;
  return (x.adjoint() * x - CMatrix::Identity(x.rows(), x.cols())).norm() <= tol;
}

CMatrix commutator(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
    throw DimensionError("commutator: operands must be square of equal size");
  }
  return x * y - y * x;
}

std::size_t numerical_rank(const CMatrix& x, double rel_threshold) {
  if (x.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(x);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_threshold * s(0)) ++rank;
  }
  return rank;
}

CMatrix least_squares_solve(const CMatrix& x, const CMatrix& u, double rel_threshold) {
  if (x.rows() != u.rows()) throw DimensionError("least_squares_solve: row count mismatch");
  Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  std::size_t rank = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    for (Index i = 0; i < s.size(); ++i) {
      if (s(i) > rel_threshold * s(0)) ++rank;
    }
  }
  if (rank < static_cast<std::size_t>(x.cols())) {
    throw RankError("least_squares_solve: matrix lacks full column rank", rank,
                    static_cast<std::size_t>(x.cols()));
  }
  return svd.solve(u);
}

std::vector<CVector> operator_kernel(const CMatrix& l, double threshold) {
  const Index domain = l.cols();
  std::vector<CVector> basis;
  if (domain == 0) return basis;
  if (l.rows() == 0) {
    for (Index k = 0; k < domain; ++k) basis.push_back(CVector::Unit(domain, k));
    return basis;
  }
  Eigen::JacobiSVD<CMatrix> svd(l, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = threshold * s(0);
  const CMatrix& v = svd.matrixV();
  for (Index k = 0; k < domain; ++k) {
    const double sk = k < s.size() ? s(k) : 0.0;
    if (sk <= cut) basis.push_back(v.col(k));
  }
  return basis;
}

std::vector<Complex> char_poly(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("char_poly: matrix must be square");
  const Index k = m.rows();
  std::vector<Complex> c(static_cast<std::size_t>(k) + 1, Complex{});
  c[k] = 1.0;
  const CMatrix id = CMatrix::Identity(k, k);
  CMatrix aux = CMatrix::Zero(k, k);
  for (Index j = 1; j <= k; ++j) {
    aux = m * aux + c[k - j + 1] * id;
    c[k - j] = -(m * aux).trace() / static_cast<double>(j);
  }
  return c;
}

Complex poly_eval(std::span<const Complex> coeffs, Complex x) {
  Complex acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<Complex> poly_roots(std::span<const Complex> coeffs) {
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw DegenerateError("poly_roots: zero polynomial");
  std::size_t deg = coeffs.size() - 1;
  while (deg > 0 && std::abs(coeffs[deg]) < kChopThreshold * scale) --deg;
  if (deg == 0) return {};
  const Index d = static_cast<Index>(deg);
  CMatrix companion = CMatrix::Zero(d, d);
  for (Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (Index i = 0; i < d; ++i) companion(i, d - 1) = -coeffs[i] / coeffs[deg];
  Eigen::ComplexEigenSolver<CMatrix> es(companion, false);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<Complex> poly_from_roots(std::span<const Complex> roots) {
  std::vector<Complex> p{1.0};
  for (const auto& r : roots) {
    std::vector<Complex> next(p.size() + 1, Complex{});
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i + 1] += p[i];
      next[i] -= r * p[i];
    }
    p = std::move(next);
  }
  return p;
}

std::vector<Complex> roots_of_unity(std::size_t count, double radius) {
  std::vector<Complex> nodes;
  nodes.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    nodes.push_back(std::polar(radius, angle));
  }
  return nodes;
}

// ---------------------------------------------------------------------------
// PolyMatrix

PolyMatrix::PolyMatrix(std::vector<CMatrix> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DimensionError("PolyMatrix: need at least one coefficient");
  for (const auto& c : coeffs_) {
    require_shape(c, coeffs_.front().rows(), coeffs_.front().cols(), "PolyMatrix coefficient");
  }
}

PolyMatrix PolyMatrix::constant(CMatrix x) { return PolyMatrix({std::move(x)}); }

PolyMatrix PolyMatrix::linear(CMatrix x0, CMatrix x1) {
  return PolyMatrix({std::move(x0), std::move(x1)});
}

CMatrix PolyMatrix::operator()(Complex zeta) const {
  CMatrix acc = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * zeta + coeffs_[i];
  return acc;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("PolyMatrix product: inner size mismatch");
  std::vector<CMatrix> out(a.degree() + b.degree() + 1, CMatrix::Zero(a.rows(), b.cols()));
  for (std::size_t i = 0; i <= a.degree(); ++i) {
    for (std::size_t j = 0; j <= b.degree(); ++j) out[i + j] += a.coeff(i) * b.coeff(j);
  }
  return PolyMatrix(std::move(out));
}

namespace {
PolyMatrix combine(const PolyMatrix& a, const PolyMatrix& b, double sign) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("PolyMatrix sum: shape mismatch");
  }
  const std::size_t deg = std::max(a.degree(), b.degree());
  std::vector<CMatrix> out(deg + 1, CMatrix::Zero(a.rows(), a.cols()));
  for (std::size_t i = 0; i <= a.degree(); ++i) out[i] += a.coeff(i);
  for (std::size_t i = 0; i <= b.degree(); ++i) out[i] += sign * b.coeff(i);
  return PolyMatrix(std::move(out));
}
}  // namespace

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) { return combine(a, b, 1.0); }
PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) { return combine(a, b, -1.0); }

PolyMatrix operator*(Complex s, const PolyMatrix& a) {
  std::vector<CMatrix> out = a.coeffs();
  for (auto& c : out) c *= s;
  return PolyMatrix(std::move(out));
}

// ---------------------------------------------------------------------------
// BivariatePoly

BivariatePoly::BivariatePoly(int deg_zeta, int deg_lambda)
    : deg_zeta_(deg_zeta), deg_lambda_(deg_lambda) {
  if (deg_zeta < 0 || deg_lambda < 0) throw DimensionError("BivariatePoly: negative degree");
}

void BivariatePoly::set(int i, int j, Complex value) {
  if (i < 0 || j < 0 || i > deg_zeta_ || j > deg_lambda_) {
    throw DimensionError("BivariatePoly: coefficient key exceeds declared degrees");
  }
  if (value == Complex{}) {
    terms_.erase({i, j});
  } else {
    terms_[{i, j}] = value;
  }
}

Complex BivariatePoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Complex{} : it->second;
}

double BivariatePoly::max_magnitude() const {
  double mx = 0.0;
  for (const auto& [key, c] : terms_) mx = std::max(mx, std::abs(c));
  return mx;
}

Complex BivariatePoly::operator()(Complex zeta, Complex lambda) const {
  Complex acc{};
  for (const auto& [key, c] : terms_) {
    acc += c * std::pow(zeta, key.first) * std::pow(lambda, key.second);
  }
  return acc;
}

BivariatePoly BivariatePoly::chopped(double rel) const {
  BivariatePoly out(deg_zeta_, deg_lambda_);
  const double cut = rel * max_magnitude();
  for (const auto& [key, c] : terms_) {
    if (std::abs(c) >= cut) out.terms_.emplace(key, c);
  }
  return out;
}

std::vector<Complex> BivariatePoly::lambda_coeff(int j) const {
  std::vector<Complex> out(static_cast<std::size_t>(deg_zeta_) + 1, Complex{});
  for (int i = 0; i <= deg_zeta_; ++i) out[i] = coeff(i, j);
  return out;
}

BivariatePoly interpolate_bivariate(std::span<const ZetaSample> samples, int deg_zeta,
                                    double chop_rel) {
  const std::size_t count = samples.size();
  if (deg_zeta < 0) throw DimensionError("interpolate_bivariate: negative degree");
  if (count < static_cast<std::size_t>(deg_zeta) + 1) {
    throw NodeError("interpolate_bivariate: need at least deg_zeta + 1 nodes");
  }
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      const double scale = std::max({1.0, std::abs(samples[a].zeta), std::abs(samples[b].zeta)});
      if (std::abs(samples[a].zeta - samples[b].zeta) <= 1e-14 * scale) {
        throw NodeError("interpolate_bivariate: duplicate interpolation node");
      }
    }
  }
  std::size_t width = 0;
  for (const auto& s : samples) width = std::max(width, s.lambda_coeffs.size());
  if (width == 0) throw DimensionError("interpolate_bivariate: empty coefficient sequences");

  const Index d1 = deg_zeta + 1;
  CMatrix values = CMatrix::Zero(static_cast<Index>(count), static_cast<Index>(width));
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t j = 0; j < samples[k].lambda_coeffs.size(); ++j) {
      values(static_cast<Index>(k), static_cast<Index>(j)) = samples[k].lambda_coeffs[j];
    }
  }

  CMatrix coeffs;  // d1 x width, rows are zeta powers
  if (static_cast<Index>(count) == d1) {
    coeffs = CMatrix::Zero(d1, static_cast<Index>(width));
    std::vector<Complex> others;
    for (std::size_t k = 0; k < count; ++k) {
      others.clear();
      Complex denom = 1.0;
      for (std::size_t j = 0; j < count; ++j) {
        if (j == k) continue;
        others.push_back(samples[j].zeta);
        denom *= samples[k].zeta - samples[j].zeta;
      }
      const auto basis = poly_from_roots(others);
      for (Index i = 0; i < d1; ++i) {
        coeffs.row(i) += (basis[i] / denom) * values.row(static_cast<Index>(k));
      }
    }
  } else {
    CMatrix vander(static_cast<Index>(count), d1);
    for (std::size_t k = 0; k < count; ++k) {
      Complex p = 1.0;
      for (Index i = 0; i < d1; ++i) {
        vander(static_cast<Index>(k), i) = p;
        p *= samples[k].zeta;
      }
    }
    coeffs = vander.colPivHouseholderQr().solve(values);
  }

  BivariatePoly out(deg_zeta, static_cast<int>(width) - 1);
  for (Index i = 0; i < d1; ++i) {
    for (Index j = 0; j < static_cast<Index>(width); ++j) {
      out.set(static_cast<int>(i), static_cast<int>(j), coeffs(i, j));
    }
  }
  return chop_rel > 0.0 ? out.chopped(chop_rel) : out;
}

}  // namespace bhtlab
