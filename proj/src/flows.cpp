#include "bhtlab/flows.hpp"

#include <cmath>
#include <limits>

#include "bhtlab/errors.hpp"

namespace bhtlab {

namespace {

// (H, P) -> (T1, T2, T3) with i T1 = H / 2 and T2 + i T3 = P. Real-linear, so
// the same map sends (dH, dP) to the derivatives.
NahmTriple components(const CMatrix& h, const CMatrix& p) {
  const CMatrix pa = p.adjoint();
  return NahmTriple::from_components(Complex(0.0, -0.5) * h, 0.5 * (p - pa),
                                     Complex(0.0, -0.5) * (p + pa));
}

std::array<double, 3> nahm_defect(const NahmTriple& t, const NahmTriple& dt) {
  return {(dt.T1 - commutator(t.T2, t.T3)).norm(), (dt.T2 - commutator(t.T3, t.T1)).norm(),
          (dt.T3 - commutator(t.T1, t.T2)).norm()};
}

void require_anti_hermitian(const CMatrix& x, const char* what) {
  if (!is_anti_hermitian(x, 1e-10)) {
    throw ValidationError(std::string(what) + " must be anti-Hermitian");
  }
}

}  // namespace

void BHTState::validate() const { require_shape(B, A.cols(), A.rows(), "BHTState B"); }

BHTState& BHTState::operator+=(const BHTState& o) {
  A += o.A;
  B += o.B;
  return *this;
}

NahmTriple NahmTriple::from_components(CMatrix t1, CMatrix t2, CMatrix t3) {
  NahmTriple t;
  t.alpha = kI * t1;
  t.beta = t2 + kI * t3;
  t.T1 = std::move(t1);
  t.T2 = std::move(t2);
  t.T3 = std::move(t3);
  return t;
}

NahmTriple& NahmTriple::operator+=(const NahmTriple& o) {
  T1 += o.T1;
  T2 += o.T2;
  T3 += o.T3;
  alpha += o.alpha;
  beta += o.beta;
  return *this;
}

NahmTriple operator*(double s, const NahmTriple& x) {
  NahmTriple t;
  t.T1 = s * x.T1;
  t.T2 = s * x.T2;
  t.T3 = s * x.T3;
  t.alpha = s * x.alpha;
  t.beta = s * x.beta;
  return t;
}

void HoloState::validate() const {
  const Index n = A0.rows();
  const Index m = A0.cols();
  require_shape(A1, n, m, "HoloState A1");
  require_shape(B0, m, n, "HoloState B0");
  require_shape(B1, m, n, "HoloState B1");
}

HoloState& HoloState::operator+=(const HoloState& o) {
  A0 += o.A0;
  A1 += o.A1;
  B0 += o.B0;
  B1 += o.B1;
  return *this;
}

HoloState operator*(double s, const HoloState& x) {
  return {s * x.A0, s * x.A1, s * x.B0, s * x.B1};
}

double lie_norm_sq(const CMatrix& x) { return -(x * x).trace().real(); }

NahmTriple nahm_t_from(const BHTState& s) {
  return components(s.A * s.A.adjoint() - s.B.adjoint() * s.B, s.A * s.B);
}

NahmTriple nahm_s_from(const BHTState& s) {
  return components(s.A.adjoint() * s.A - s.B * s.B.adjoint(), s.B * s.A);
}

MomentData moments(const BHTState& s) {
  s.validate();
  const NahmTriple t = nahm_t_from(s);
  const NahmTriple sn = nahm_s_from(s);
  MomentData d;
  d.mu1 = t.T1;
  d.mu2 = t.T2;
  d.mu3 = t.T3;
  d.mu23 = t.beta;
  d.nu1 = -sn.T1;
  d.nu2 = -sn.T2;
  d.nu3 = -sn.T3;
  d.nu23 = -sn.beta;
  d.gaps = {lie_norm_sq(d.mu1) - lie_norm_sq(d.nu1), lie_norm_sq(d.mu2) - lie_norm_sq(d.nu2),
            lie_norm_sq(d.mu3) - lie_norm_sq(d.nu3)};
  d.F = 0.5 * d.gaps[0];
  return d;
}

double bht_potential(const BHTState& s) {
  const CMatrix mu1 = Complex(0.0, -0.5) * (s.A * s.A.adjoint() - s.B.adjoint() * s.B);
  const CMatrix nu1 = Complex(0.0, 0.5) * (s.A.adjoint() * s.A - s.B * s.B.adjoint());
  return 0.5 * lie_norm_sq(mu1) - 0.5 * lie_norm_sq(nu1);
}

BHTState bht_rhs(const BHTState& s) {
  s.validate();
  const CMatrix& a = s.A;
  const CMatrix& b = s.B;
  const CMatrix ad = a.adjoint();
  const CMatrix bd = b.adjoint();
  // Grouped so that the scalar moment factors cancel exactly when n = m = 1.
  return {0.5 * (a * CMatrix(b * bd) - CMatrix(bd * b) * a),
          0.5 * (CMatrix(ad * a) * b - b * CMatrix(a * ad))};
}

NahmTriple nahm_rhs(const NahmTriple& t) {
  return NahmTriple::from_components(commutator(t.T2, t.T3), commutator(t.T3, t.T1),
                                     commutator(t.T1, t.T2));
}

BHTState gauge_bht_rhs(const BHTState& s, const CMatrix& u, const CMatrix& v) {
  require_shape(u, s.n(), s.n(), "gauge field u");
  require_shape(v, s.m(), s.m(), "gauge field v");
  require_anti_hermitian(u, "gauge field u");
  require_anti_hermitian(v, "gauge field v");
  BHTState d = bht_rhs(s);
  d.A += -u * s.A + s.A * v;
  d.B += -v * s.B + s.B * u;
  return d;
}

GaugeTransformed gauge_transform(const BHTState& s, const CMatrix& g, const CMatrix& h,
                                 const CMatrix& u, const CMatrix& v, const CMatrix& gdot,
                                 const CMatrix& hdot) {
  s.validate();
  require_shape(g, s.n(), s.n(), "gauge transform g");
  require_shape(h, s.m(), s.m(), "gauge transform h");
  require_shape(gdot, s.n(), s.n(), "gauge transform gdot");
  require_shape(hdot, s.m(), s.m(), "gauge transform hdot");
  if (!is_unitary(g, 1e-10) || !is_unitary(h, 1e-10)) {
    throw ValidationError("gauge_transform: g and h must be unitary");
  }
  const CMatrix ginv = g.adjoint();
  const CMatrix hinv = h.adjoint();
  return {{g * s.A * hinv, h * s.B * ginv},
          g * u * ginv - gdot * ginv,
          h * v * hinv - hdot * hinv};
}

HoloState holo_rhs(const HoloState& h) {
  h.validate();
  const CMatrix& a0 = h.A0;
  const CMatrix& a1 = h.A1;
  const CMatrix& b0 = h.B0;
  const CMatrix& b1 = h.B1;
  return {0.5 * (a1 * b0 * a0 - a0 * b0 * a1), 0.5 * (a1 * b1 * a0 - a0 * b1 * a1),
          0.5 * (b1 * a0 * b0 - b0 * a0 * b1), 0.5 * (b1 * a1 * b0 - b0 * a1 * b1)};
}

HoloState reality_embed(const BHTState& s) {
  s.validate();
  return {s.A, -s.B.adjoint(), s.B, s.A.adjoint()};
}

std::array<double, 6> chain_rule_residuals(const BHTState& s) {
  const BHTState d = bht_rhs(s);
  const CMatrix& a = s.A;
  const CMatrix& b = s.B;
  const CMatrix& da = d.A;
  const CMatrix& db = d.B;

  const NahmTriple t = nahm_t_from(s);
  const NahmTriple dt = components(
      da * a.adjoint() + a * da.adjoint() - db.adjoint() * b - b.adjoint() * db, da * b + a * db);
  const NahmTriple sn = nahm_s_from(s);
  const NahmTriple ds = components(
      da.adjoint() * a + a.adjoint() * da - db * b.adjoint() - b * db.adjoint(), db * a + b * da);

  const auto rt = nahm_defect(t, dt);
  const auto rs = nahm_defect(sn, ds);
  return {rt[0], rt[1], rt[2], rs[0], rs[1], rs[2]};
}

Eigen::VectorXd real_coordinates(const BHTState& s) {
  Eigen::VectorXd out(2 * (s.A.size() + s.B.size()));
  Index k = 0;
  for (const CMatrix* x : {&s.A, &s.B}) {
    for (Index i = 0; i < x->size(); ++i) {
      out(k++) = x->data()[i].real();
      out(k++) = x->data()[i].imag();
    }
  }
  return out;
}

GradientCheck gradient_check(const BHTState& s, double h) {
  if (!(h >= 1e-7 && h <= 1e-3)) throw ValidationError("gradient_check: step must lie in [1e-7, 1e-3]");
  const Eigen::VectorXd rhs = real_coordinates(bht_rhs(s));
  Eigen::VectorXd fd(rhs.size());
  BHTState probe = s;
  Index k = 0;
  for (CMatrix* x : {&probe.A, &probe.B}) {
    for (Index i = 0; i < x->size(); ++i) {
      for (const Complex dir : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        const Complex saved = x->data()[i];
        x->data()[i] = saved + h * dir;
        const double fp = bht_potential(probe);
        x->data()[i] = saved - h * dir;
        const double fm = bht_potential(probe);
        x->data()[i] = saved;
        fd(k++) = (fp - fm) / (2.0 * h);
      }
    }
  }
  const double nf = fd.norm();
  const double nr = rhs.norm();
  GradientCheck out;
  if (nf == 0.0 && nr == 0.0) {
    out.cosine = 1.0;
    out.ratio = std::numeric_limits<double>::quiet_NaN();
  } else if (nf == 0.0 || nr == 0.0) {
    out.cosine = 0.0;
    out.ratio = nr == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  } else {
    out.cosine = fd.dot(rhs) / (nf * nr);
    out.ratio = nf / nr;
  }
  return out;
}

}  // namespace bhtlab
