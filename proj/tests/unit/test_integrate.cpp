#include <doctest.h>

#include <cmath>

#include "bhtlab/errors.hpp"
#include "bhtlab/integrate.hpp"
#include "support.hpp"

using namespace bhtlab;
using namespace bhtlab::testing;

namespace {

CMatrix scalar(Complex c) { return CMatrix::Constant(1, 1, c); }

// Error at t = 1 of the scalar gauge flow A' = (v - u) A against exp((v - u) t).
double scalar_gauge_error(double dt, Method method) {
  const Complex u(0.0, 0.8);
  const Complex v(0.0, -0.3);
  const BHTState s{scalar(Complex(1.0, 0.5)), scalar(Complex(-0.2, 1.0))};
  IntegrationOptions opts;
  opts.t_end = 1.0;
  opts.dt = dt;
  opts.method = method;
  const auto traj = integrate_gauge_bht(s, scalar(u), scalar(v), opts);
  const Complex a = s.A(0, 0) * std::exp(v - u);
  const Complex b = s.B(0, 0) * std::exp(u - v);
  return std::hypot(std::abs(traj.back().state.A(0, 0) - a), std::abs(traj.back().state.B(0, 0) - b));
}

}  // namespace

TEST_SUITE("integrate") {
  TEST_CASE("step_count") {
    CHECK(step_count(1.0, 1e-3) == 1000);
    CHECK(step_count(1.0, 0.3) == 4);
    CHECK(step_count(0.0, 0.1) == 0);
    CHECK(step_count(0.3, 0.1) == 3);
  }

  TEST_CASE("option validation") {
    IntegrationOptions opts;
    opts.dt = 0.0;
    CHECK_THROWS_AS(validate(opts), ValidationError);
    opts.dt = -1.0;
    CHECK_THROWS_AS(validate(opts), ValidationError);
    opts.dt = std::nan("");
    CHECK_THROWS_AS(validate(opts), ValidationError);
    opts = {};
    opts.t_end = -1.0;
    CHECK_THROWS_AS(validate(opts), ValidationError);
    opts = {};
    opts.stride = 0;
    CHECK_THROWS_AS(validate(opts), ValidationError);
    CHECK_NOTHROW(validate(IntegrationOptions{}));
  }

  TEST_CASE("stored times honour the stride and end exactly at t_end") {
    Rng rng(1);
    IntegrationOptions opts;
    opts.t_end = 0.35;
    opts.dt = 0.1;
    opts.stride = 2;
    const auto traj = integrate_bht(random_state(rng, 2, 1), opts);
    REQUIRE(traj.size() == 3);
    CHECK(traj[0].t == 0.0);
    CHECK(traj[1].t == doctest::Approx(0.2));
    CHECK(traj[2].t == 0.35);

    opts.t_end = 0.0;
    CHECK(integrate_bht(random_state(rng, 2, 1), opts).size() == 1);
  }

  TEST_CASE("scalar gauge flow: exact solution and convergence orders") {
    const double rk4_ratio = scalar_gauge_error(0.1, Method::rk4) / scalar_gauge_error(0.05, Method::rk4);
    CHECK(rk4_ratio > 14.0);
    CHECK(rk4_ratio < 18.0);
    CHECK(scalar_gauge_error(1e-3, Method::rk4) < 1e-12);
    const double euler_ratio =
        scalar_gauge_error(0.01, Method::euler) / scalar_gauge_error(0.005, Method::euler);
    CHECK(euler_ratio > 1.8);
    CHECK(euler_ratio < 2.2);
  }

  TEST_CASE("gl(1|1) states are fixed points") {
    Rng rng(2);
    const BHTState s = random_state(rng, 1, 1);
    const auto traj = integrate_bht(s, IntegrationOptions{});
    for (const auto& p : traj) {
      CHECK(p.state.A == s.A);
      CHECK(p.state.B == s.B);
    }
  }

  TEST_CASE("F is nondecreasing along the flow") {
    Rng rng(3);
    for (const auto& [n, m] : kSizes) {
      const auto traj = integrate_bht(unit_state(rng, n, m), IntegrationOptions{});
      double prev = bht_potential(traj.front().state);
      for (const auto& p : traj) {
        const double f = bht_potential(p.state);
        CHECK(f >= prev - 1e-14);
        prev = f;
      }
    }
  }

  TEST_CASE("RK4 order against a refined reference") {
    Rng rng(4);
    const BHTState s = unit_state(rng, 3, 2);
    auto final_state = [&](double dt) {
      IntegrationOptions opts;
      opts.dt = dt;
      return integrate_bht(s, opts).back().state;
    };
    const BHTState ref = final_state(0.1 / 16.0);
    auto err = [&](const BHTState& x) { return std::hypot((x.A - ref.A).norm(), (x.B - ref.B).norm()); };
    const double ratio = err(final_state(0.1)) / err(final_state(0.05));
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
  }

  TEST_CASE("holomorphic, jccc and real flows agree") {
    Rng rng(5);
    const BHTState s = unit_state(rng, 3, 2);
    IntegrationOptions opts;
    opts.t_end = 0.5;
    opts.dt = 1e-2;
    const BHTState a = integrate_bht(s, opts).back().state;
    const HoloState h = integrate_holo(reality_embed(s), opts).back().state;
    const SuperMatrix c = integrate_jccc(SuperMatrix::odd(s.A, s.B), opts).back().state;
    CHECK((h.A0 - a.A).norm() < 1e-13);
    CHECK((h.B0 - a.B).norm() < 1e-13);
    CHECK((h.A1 + a.B.adjoint()).norm() < 1e-13);
    CHECK((h.B1 - a.A.adjoint()).norm() < 1e-13);
    CHECK((c.A() - a.A).norm() < 1e-13);
    CHECK((c.B() - a.B).norm() < 1e-13);
    CHECK_THROWS_AS(integrate_jccc(random_even(rng, 2, 1), opts), ValidationError);
  }

  TEST_CASE("blow-up is reported with the last finite time") {
    Rng rng(6);
    const BHTState s = (1e3 / std::sqrt(2.0)) * unit_state(rng, 2, 1);
    IntegrationOptions opts;
    opts.t_end = 10.0;
    opts.dt = 0.1;
    try {
      integrate_bht(s, opts);
      FAIL("expected BlowUpError");
    } catch (const BlowUpError& e) {
      CHECK(e.last_finite_t() >= 0.0);
      CHECK(e.last_finite_t() < 10.0);
    }
    BHTState bad = unit_state(rng, 2, 1);
    bad.A(0, 0) = std::nan("");
    CHECK_THROWS_AS(integrate_bht(bad, opts), BlowUpError);
  }

  TEST_CASE("Nahm integration keeps the triple anti-Hermitian") {
    Rng rng(7);
    const NahmTriple t = NahmTriple::from_components(rng.anti_hermitian(3), rng.anti_hermitian(3),
                                                     rng.anti_hermitian(3));
    IntegrationOptions opts;
    opts.t_end = 0.2;
    opts.dt = 1e-3;
    const auto traj = integrate_nahm(t, opts);
    const NahmTriple& e = traj.back().state;
    CHECK(is_anti_hermitian(e.T1, 1e-12));
    CHECK(is_anti_hermitian(e.T2, 1e-12));
    CHECK(is_anti_hermitian(e.T3, 1e-12));
    CHECK((e.alpha - kI * e.T1).norm() < 1e-12);
  }
}
