#include <doctest.h>

#include <cmath>

#include "bhtlab/errors.hpp"
#include "bhtlab/spectral.hpp"
#include "support.hpp"

using namespace bhtlab;
using namespace bhtlab::testing;

namespace {

CMatrix scalar(Complex c) { return CMatrix::Constant(1, 1, c); }

HoloState zero_holo(Index n, Index m) {
  return {CMatrix::Zero(n, m), CMatrix::Zero(n, m), CMatrix::Zero(m, n), CMatrix::Zero(m, n)};
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]) / (1.0 + std::abs(a[i])));
  }
  return worst;
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("scalar example A=[1], B=[i]") {
    const HoloState h = reality_embed(BHTState{scalar(1.0), scalar(kI)});
    const LaxData lax = build_lax(h);
    // Z = X Y = (1 + i z)(i + z) = i + i z^2.
    const Complex z0(0.4, -1.1);
    CHECK(std::abs(lax.Z(z0)(0, 0) - (kI + kI * z0 * z0)) < 1e-15);
    CHECK(lax.Z.degree() == 2);
    CHECK((lax.Z.coeff(1)).norm() == 0.0);

    const SpectralReport r = tau_and_square_check(h);
    CHECK(std::abs(r.Phat.coeff(0, 2) - 1.0) < 1e-14);
    CHECK(std::abs(r.Phat.coeff(0, 0) + kI) < 1e-14);
    CHECK(std::abs(r.Phat.coeff(2, 0) + kI) < 1e-14);
    CHECK(r.Phat.terms().size() == 3);
    REQUIRE(r.P.has_value());
    CHECK(std::abs(r.P->coeff(0, 1) - 1.0) < 1e-14);
    CHECK(std::abs(r.P->coeff(0, 0) + kI) < 1e-14);
    CHECK(std::abs(r.P->coeff(2, 0) + kI) < 1e-14);
    CHECK(r.P->terms().size() == 3);
    CHECK(r.lambda_power == 0);
    CHECK(*r.genus_S == 0);
    CHECK(*r.genus_Shat == 0);
    CHECK(r.tau_residual < 1e-14);
    CHECK(*r.square_residual < 1e-14);
    // det A(z) = 1 + i z, det B(z) = i + z: zeros i and -i.
    REQUIRE(r.ramification_A.size() == 1);
    REQUIRE(r.ramification_B.size() == 1);
    CHECK(std::abs(r.ramification_A[0] - kI) < 1e-12);
    CHECK(std::abs(r.ramification_B[0] + kI) < 1e-12);
    CHECK(*r.disjoint);
  }

  TEST_CASE("zero pencil: Phat = lambda^(n+m)") {
    const SpectralReport r = tau_and_square_check(zero_holo(2, 1));
    CHECK(r.lambda_power == 3);
    CHECK(r.Phat.terms().size() == 1);
    CHECK(std::abs(r.Phat.coeff(0, 3) - 1.0) < 1e-15);
    CHECK_FALSE(r.P.has_value());
    const SpectralReport z = tau_and_square_check(zero_holo(2, 2));
    CHECK_FALSE(*z.disjoint);
    CHECK(z.ramification_A.empty());
  }

  TEST_CASE("lambda power is n - m for generic data") {
    Rng rng(1);
    CHECK(tau_and_square_check(random_holo(rng, 3, 1)).lambda_power == 2);
    CHECK(tau_and_square_check(random_holo(rng, 4, 3)).lambda_power == 1);
    CHECK(tau_and_square_check(random_holo(rng, 2, 2)).lambda_power == 0);
  }

  TEST_CASE("tau symmetry, square relation, XY/YX and genus") {
    Rng rng(2);
    for (const auto& [n, m] : kSizes) {
      const SpectralReport r = tau_and_square_check(random_holo(rng, n, m));
      CHECK(r.tau_residual < 1e-10);
      CHECK(r.lambda_power == n - m);
      if (n == m) {
        CHECK(*r.square_residual < 1e-10);
        CHECK(*r.xy_yx_residual < 1e-10);
        CHECK(*r.genus_S == (n - 1) * (n - 1));
        CHECK(*r.genus_Shat == (n - 1) * (2 * n - 1));
        CHECK(r.ramification_A.size() == static_cast<std::size_t>(n));
        CHECK(*r.disjoint);
      } else {
        CHECK_FALSE(r.square_residual.has_value());
        CHECK_FALSE(r.genus_S.has_value());
      }
    }
  }

  TEST_CASE("char_poly_pencil agrees with determinants at fresh points") {
    Rng rng(3);
    const CMatrix c0 = rng.complex_normal(4, 4);
    const CMatrix c1 = rng.complex_normal(4, 4);
    const BivariatePoly p = char_poly_pencil(c0, c1, 0.0);
    CHECK(p.deg_zeta() == 4);
    CHECK(p.deg_lambda() == 4);
    const Complex pts[][2] = {{{0.3, 0.2}, {1.0, -0.5}}, {{-1.1, 0.0}, {0.2, 0.9}},
                              {{2.0, 1.0}, {-0.7, 0.3}}, {{0.0, -0.4}, {1.5, 1.5}},
                              {{0.9, 0.9}, {0.0, 0.0}}};
    for (const auto& pt : pts) {
      const Complex want =
          CMatrix(pt[1] * CMatrix::Identity(4, 4) - c0 - pt[0] * c1).determinant();
      CHECK(std::abs(p(pt[0], pt[1]) - want) < 1e-10 * std::max(1.0, std::abs(want)));
    }
    CHECK_THROWS_AS(char_poly_pencil(CMatrix::Zero(2, 3), CMatrix::Zero(2, 3)), DimensionError);
  }

  TEST_CASE("det_pencil_coeffs") {
    CMatrix x0 = CMatrix::Identity(2, 2);
    CMatrix x1 = CMatrix::Zero(2, 2);
    x1(0, 0) = 2.0;
    x1(1, 1) = 3.0;
    // (1 + 2z)(1 + 3z) = 1 + 5z + 6z^2
    const auto c = det_pencil_coeffs(x0, x1);
    REQUIRE(c.size() == 3);
    CHECK(std::abs(c[0] - 1.0) < 1e-13);
    CHECK(std::abs(c[1] - 5.0) < 1e-13);
    CHECK(std::abs(c[2] - 6.0) < 1e-13);
  }

  TEST_CASE("pencil and grading") {
    Rng rng(4);
    const HoloState h = random_holo(rng, 3, 2);
    const auto [c0, c1] = pencil_from(h);
    const CMatrix g = grading_matrix(3, 2);
    CHECK((g * c0 + c0 * g).norm() == 0.0);
    CHECK((g * c1 + c1 * g).norm() == 0.0);
    CHECK(c0.topRightCorner(3, 2) == h.A0);
    CHECK(c1.bottomLeftCorner(2, 3) == h.B1);
  }

  TEST_CASE("Lax equations hold along the holomorphic flow") {
    Rng rng(5);
    for (const auto& [n, m] : kSizes) {
      const HoloState h = random_holo(rng, n, m);
      const auto res = lax_residual(h);
      const double scale = std::pow(std::hypot(std::hypot(h.A0.norm(), h.A1.norm()),
                                               std::hypot(h.B0.norm(), h.B1.norm())),
                                    4);
      CHECK(res[0] < 1e-12 * scale);
      CHECK(res[1] < 1e-12 * scale);
    }
  }

  TEST_CASE("solve_N") {
    CMatrix x(2, 1);
    x << 1.0, 1.0;
    CMatrix y(1, 2);
    y << 1.0, 2.0;
    const CMatrix n = solve_N(x, y, 2.0 * x, 2.0 * y);
    CHECK(std::abs(n(0, 0) - 2.0) < 1e-14);
    CHECK(solve_N(x, y, CMatrix::Zero(2, 1), CMatrix::Zero(1, 2)).norm() == 0.0);

    CMatrix u(2, 1);
    u << 2.0, 3.0;
    CHECK_THROWS_AS(solve_N(x, y, u, 2.0 * y), InconsistencyError);
    CHECK_THROWS_AS(solve_N(x, CMatrix::Zero(1, 2), 2.0 * x, CMatrix::Zero(1, 2)), RankError);
    CHECK_THROWS_AS(solve_N(x, y, CMatrix::Zero(3, 1), 2.0 * y), DimensionError);

    Rng rng(6);
    for (const auto& [nn, mm] : kSizes) {
      const CMatrix xx = rng.complex_normal(nn, mm);
      const CMatrix yy = rng.complex_normal(mm, nn);
      const CMatrix n0 = rng.complex_normal(mm, mm);
      const CMatrix got = solve_N(xx, yy, xx * n0, n0 * yy);
      CHECK((got - n0).norm() < 1e-10 * (1.0 + n0.norm()));
    }
  }

  TEST_CASE("regularity_at") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    const RegularityAt rd = regularity_at(PolyMatrix::constant(d), Complex(0.0));
    CHECK(rd.regular);
    CHECK(rd.centralizer_dim == 2);

    const RegularityAt rz = regularity_at(PolyMatrix::constant(CMatrix::Zero(2, 2)), Complex(0.0));
    CHECK_FALSE(rz.regular);
    CHECK(rz.centralizer_dim == 4);

    CMatrix jordan = CMatrix::Zero(3, 3);
    jordan(0, 1) = 1.0;
    jordan(1, 2) = 1.0;
    const RegularityAt rj = regularity_at(PolyMatrix::constant(jordan), Complex(0.0));
    CHECK(rj.regular);
    CHECK(rj.centralizer_dim == 3);

    // X(z) = d + 0 z: regular at finite points, zero leading term at infinity.
    const PolyMatrix lin = PolyMatrix::linear(d, CMatrix::Zero(2, 2));
    CHECK(regularity_at(lin, Complex(5.0)).regular);
    CHECK(regularity_at(lin, Infinity{}).centralizer_dim == 4);
    CHECK_THROWS_AS(regularity_at(PolyMatrix::constant(CMatrix::Zero(2, 3)), Complex(0.0)),
                    DimensionError);
  }

  TEST_CASE("spectral coefficients are conserved along the flow") {
    Rng rng(7);
    IntegrationOptions opts;
    opts.t_end = 1.0;
    opts.dt = 1e-3;
    opts.stride = 50;
    for (const Index n : {2, 3}) {
      const auto traj = integrate_bht(unit_state(rng, n, n), opts);
      CHECK(spectral_drift(traj) < 1e-8);
    }
    const auto one = integrate_bht(unit_state(rng, 1, 1), opts);
    CHECK(spectral_drift(one) == 0.0);
    CHECK(spectral_drift({}) == 0.0);

    // F does change, so the conservation is not vacuous.
    const auto moving = integrate_bht(unit_state(rng, 3, 2), opts);
    CHECK(bht_potential(moving.back().state) > bht_potential(moving.front().state) + 1e-6);
  }

  TEST_CASE("Nahm Lax matrix: conserved spectrum") {
    Rng rng(8);
    // Small data: Nahm solutions have poles at finite time.
    const NahmTriple t = NahmTriple::from_components(
        0.3 * rng.anti_hermitian(3), 0.3 * rng.anti_hermitian(3), 0.3 * rng.anti_hermitian(3));
    const PolyMatrix l = nahm_lax(t);
    CHECK(l.degree() == 2);
    CHECK((l.coeff(1) - 2.0 * t.alpha).norm() < 1e-15);
    CHECK((l.coeff(0) - t.beta).norm() < 1e-15);
    IntegrationOptions opts;
    opts.t_end = 0.5;
    opts.dt = 1e-3;
    const auto traj = integrate_nahm(t, opts);
    CHECK(max_diff(nahm_spectral_coefficients(traj.front().state),
                   nahm_spectral_coefficients(traj.back().state)) < 1e-8);
  }
}
