#include "bhtlab/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "bhtlab/alts.hpp"
#include "bhtlab/flows.hpp"
#include "bhtlab/integrate.hpp"
#include "bhtlab/random.hpp"
#include "bhtlab/spectral.hpp"
#include "bhtlab/superalg.hpp"

namespace bhtlab::checks {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t z = seed ^ (stream * 0x9E3779B97F4A7C15ULL) ^ (index * 0xD1B54A32D192ED03ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// Collects max residuals per check, keeping first-seen order.
class Ledger {
 public:
  Ledger(std::string suite, double tol_scale) : suite_(std::move(suite)), tol_scale_(tol_scale) {}

  /// Identity-level check: threshold scales with --tol.
  void identity(const std::string& name, double base, double residual) {
    record(name, base * tol_scale_, residual);
  }
  /// Check with a fixed threshold (finite differences, integration, counts).
  void fixed(const std::string& name, double threshold, double residual) {
    record(name, threshold, residual);
  }

  void append_to(std::vector<CheckResult>& out) const {
    for (const auto& r : results_) out.push_back(r);
  }

 private:
  void record(const std::string& name, double threshold, double residual) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      it = index_.emplace(name, results_.size()).first;
      results_.push_back({suite_, name, 0.0, threshold, 0});
    }
    CheckResult& r = results_[it->second];
    // NaN residuals must fail, so they are stored rather than compared away.
    if (std::isnan(residual) || residual > r.max_residual) r.max_residual = residual;
    ++r.samples;
  }

  std::string suite_;
  double tol_scale_;
  std::vector<CheckResult> results_;
  std::map<std::string, std::size_t> index_;
};

double safe_div(double num, double den) { return den > 0.0 ? num / den : num; }

SuperMatrix random_odd(Rng& rng, Index n, Index m) {
  CMatrix a = rng.complex_normal(n, m);
  CMatrix b = rng.complex_normal(m, n);
  return SuperMatrix::odd(std::move(a), std::move(b));
}

SuperMatrix random_even(Rng& rng, Index n, Index m) {
  CMatrix u = rng.complex_normal(n, n);
  CMatrix v = rng.complex_normal(m, m);
  return SuperMatrix::even(std::move(u), std::move(v));
}

SuperMatrix random_homogeneous(Rng& rng, Index n, Index m, bool odd) {
  return odd ? random_odd(rng, n, m) : random_even(rng, n, m);
}

BHTState random_state(Rng& rng, Index n, Index m) {
  CMatrix a = rng.complex_normal(n, m);
  CMatrix b = rng.complex_normal(m, n);
  return {std::move(a), std::move(b)};
}

double state_norm(const BHTState& s) { return std::hypot(s.A.norm(), s.B.norm()); }

double holo_norm(const HoloState& h) {
  return std::sqrt(h.A0.squaredNorm() + h.A1.squaredNorm() + h.B0.squaredNorm() +
                   h.B1.squaredNorm());
}

double diff_norm(const BHTState& a, const BHTState& b) {
  return std::hypot((a.A - b.A).norm(), (a.B - b.B).norm());
}

double max_of(const auto& arr) { return *std::max_element(arr.begin(), arr.end()); }

void algebra_trial(Ledger& led, Rng& rng, Index n, Index m, TripleVariant variant) {
  const OffDiagonalAlts sys{variant};
  const SuperMatrix x = random_odd(rng, n, m);
  const SuperMatrix y = random_odd(rng, n, m);
  const SuperMatrix z = random_odd(rng, n, m);
  const SuperMatrix u = random_odd(rng, n, m);
  const SuperMatrix v = random_odd(rng, n, m);
  const double s3 = x.norm() * y.norm() * z.norm();

  led.identity("alts_axioms", 1e-12, axioms_residual(sys, x, y, z, u, v).relative().max());

  const Index k = n + m;
  const MatrixAlts msys{variant};
  const CMatrix mx = rng.complex_normal(k, k);
  const CMatrix my = rng.complex_normal(k, k);
  const CMatrix mz = rng.complex_normal(k, k);
  const CMatrix mu = rng.complex_normal(k, k);
  const CMatrix mv = rng.complex_normal(k, k);
  led.identity("matrix_alts_axioms", 1e-12,
               axioms_residual(msys, mx, my, mz, mu, mv).relative().max());

  led.identity("left_mult_identity", 1e-12,
               safe_div(left_mult_identity_residual(u, v, x, y, sys),
                        u.norm() * v.norm() * x.norm() * y.norm()));

  led.identity("triple_is_double_bracket", 1e-12,
               safe_div((sys.triple(x, y, z) - superbracket(superbracket(x, y), z)).norm(), s3));

  led.identity("triple_j_compatibility", 1e-12,
               safe_div((j_map(sys.triple(x, y, z)) - sys.triple(j_map(x), j_map(y), j_map(z))).norm(),
                        s3));

  // Homogeneous elements of random parity for the graded identities.
  const bool px = rng.uniform() < 0.5;
  const bool py = rng.uniform() < 0.5;
  const bool pz = rng.uniform() < 0.5;
  const SuperMatrix gx = random_homogeneous(rng, n, m, px);
  const SuperMatrix gy = random_homogeneous(rng, n, m, py);
  const SuperMatrix gz = random_homogeneous(rng, n, m, pz);
  const double g3 = gx.norm() * gy.norm() * gz.norm();
  const double sign_xy = (px && py) ? -1.0 : 1.0;

  const SuperMatrix jac = superbracket(gx, superbracket(gy, gz)) -
                          superbracket(superbracket(gx, gy), gz) -
                          Complex(sign_xy) * superbracket(gy, superbracket(gx, gz));
  led.identity("graded_jacobi", 1e-12, safe_div(jac.norm(), g3));

  const Complex lhs = supertrace(superbracket(gx, gy) * gz);
  const Complex rhs = supertrace(gx * superbracket(gy, gz));
  led.identity("supertrace_ad_invariance", 1e-12, safe_div(std::abs(lhs - rhs), g3));
  led.identity("supertrace_of_bracket", 1e-12,
               safe_div(std::abs(supertrace(superbracket(gx, gy))), gx.norm() * gy.norm()));

  led.identity("j_bracket_compatibility", 1e-12,
               safe_div((j_map(superbracket(gx, gy)) - superbracket(j_map(gx), j_map(gy))).norm(),
                        gx.norm() * gy.norm()));

  const SuperMatrix full_x = random_odd(rng, n, m) + random_even(rng, n, m);
  const SuperMatrix full_y = random_odd(rng, n, m) + random_even(rng, n, m);
  const double p = pairing(full_x, full_y);
  const double pn = full_x.norm() * full_y.norm();
  led.identity("pairing_symmetry", 1e-12, safe_div(std::abs(p - pairing(full_y, full_x)), pn));
  led.identity("pairing_blockwise", 1e-12,
               safe_div(std::abs(p - pairing_blockwise(full_x, full_y)), pn));
}

void flows_trial(Ledger& led, Rng& rng, Index n, Index m, TripleVariant variant) {
  const BHTState s = random_state(rng, n, m);
  const double r = state_norm(s);
  const double r3 = r * r * r;
  const double r4 = r3 * r;
  const SuperMatrix c = SuperMatrix::odd(s.A, s.B);

  const BHTState direct = bht_rhs(s);
  const SuperMatrix sjc = (Complex(0.5) * superbracket(superbracket(j_map(c), c), c)).odd_part();
  const SuperMatrix jccc =
      Complex(0.5) * OffDiagonalAlts{variant}.triple(j_map(c), c, c);
  led.identity("rhs_superbracket_form", 1e-13,
               safe_div(diff_norm(direct, {sjc.A(), sjc.B()}), r3));
  led.identity("rhs_triple_form", 1e-13, safe_div(diff_norm(direct, {jccc.A(), jccc.B()}), r3));

  led.identity("chain_rule", 1e-12, safe_div(max_of(chain_rule_residuals(s)), r4));

  const MomentData md = moments(s);
  const double gap_spread = std::max(std::abs(md.gaps[1] - md.gaps[0]), std::abs(md.gaps[2] - md.gaps[0]));
  led.identity("gaps_equal", 1e-12, safe_div(gap_spread, r4));
  const CMatrix ad = s.A.adjoint();
  const CMatrix bd = s.B.adjoint();
  const double half_trace =
      0.5 * ((ad * s.A * s.B * bd).trace() - (bd * s.B * s.A * ad).trace()).real();
  led.identity("gap_trace_formula", 1e-12, safe_div(std::abs(md.gaps[0] - half_trace), r4));

  const CMatrix u = rng.anti_hermitian(n);
  const CMatrix v = rng.anti_hermitian(m);
  const CMatrix g = rng.unitary(n);
  const CMatrix h = rng.unitary(m);
  const GaugeTransformed gt =
      gauge_transform(s, g, h, u, v, CMatrix::Zero(n, n), CMatrix::Zero(m, m));
  const BHTState moved = gauge_bht_rhs(gt.state, gt.u, gt.v);
  const BHTState base = gauge_bht_rhs(s, u, v);
  const BHTState pushed{g * base.A * h.adjoint(), h * base.B * g.adjoint()};
  led.identity("gauge_equivariance", 1e-12,
               safe_div(diff_norm(moved, pushed), r * (r * r + u.norm() + v.norm())));

  const HoloState hd = holo_rhs(reality_embed(s));
  const HoloState embedded = reality_embed(direct);
  const double reality = holo_norm(HoloState{hd.A0 - embedded.A0, hd.A1 - embedded.A1,
                                             hd.B0 - embedded.B0, hd.B1 - embedded.B1});
  led.identity("reality_condition", 1e-12, safe_div(reality, r3));

  led.identity("nahm_alpha_beta", 1e-12, safe_div(max_of(nahm_alpha_beta_residual(c)), r4));
  led.identity("nahm_schmid", 1e-10,
               safe_div(max_of(nahm_schmid_residual(c, kSchmidConvention)), r4));

  // Finite differences and integration run on unit-norm states.
  const BHTState unit = (1.0 / r) * s;
  const GradientCheck gc = gradient_check(unit, 1e-5);
  led.fixed("gradient_cosine", 1e-8, 1.0 - gc.cosine);
  if (!std::isnan(gc.ratio)) led.fixed("gradient_ratio", 1e-6, std::abs(gc.ratio - 1.0));

  IntegrationOptions opts;
  opts.t_end = 0.05;
  opts.dt = 1e-3;
  const auto traj = integrate_bht(unit, opts);
  double worst_descent = 0.0;
  double prev = bht_potential(traj.front().state);
  std::vector<Complex> tr0;
  CMatrix p = CMatrix::Identity(n, n);
  const CMatrix beta0 = unit.A * unit.B;
  for (Index k = 0; k < n; ++k) {
    p = p * beta0;
    tr0.push_back(p.trace());
  }
  double drift = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double f = bht_potential(traj[i].state);
    worst_descent = std::max(worst_descent, prev - f);
    prev = f;
    const CMatrix beta = traj[i].state.A * traj[i].state.B;
    CMatrix q = CMatrix::Identity(n, n);
    for (Index k = 0; k < n; ++k) {
      q = q * beta;
      const Complex t0 = tr0[static_cast<std::size_t>(k)];
      drift = std::max(drift, std::abs(q.trace() - t0) / std::max(1.0, std::abs(t0)));
    }
  }
  led.fixed("potential_ascent", 1e-10, worst_descent);
  led.fixed("beta_isospectrality", 1e-8, drift);
}

HoloState random_holo(Rng& rng, Index n, Index m) {
  CMatrix a0 = rng.complex_normal(n, m);
  CMatrix a1 = rng.complex_normal(n, m);
  CMatrix b0 = rng.complex_normal(m, n);
  CMatrix b1 = rng.complex_normal(m, n);
  return {std::move(a0), std::move(a1), std::move(b0), std::move(b1)};
}

void spectral_trial(Ledger& led, Rng& rng, Index n, Index m) {
  const HoloState h = random_holo(rng, n, m);
  const double r = holo_norm(h);
  led.identity("lax_residual", 1e-12, safe_div(max_of(lax_residual(h)), r * r * r));

  const SpectralReport rep = tau_and_square_check(h);
  led.identity("tau_invariance", 1e-10, rep.tau_residual);
  led.fixed("lambda_power", 0.5, std::abs(rep.lambda_power - static_cast<int>(n - m)));
  if (n == m) {
    led.identity("square_relation", 1e-9, rep.square_residual.value_or(1.0));
    led.identity("xy_yx_curves", 1e-9, rep.xy_yx_residual.value_or(1.0));
    const bool genus_ok = rep.genus_S == static_cast<int>((n - 1) * (n - 1)) &&
                          rep.genus_Shat == static_cast<int>((n - 1) * (2 * n - 1));
    led.fixed("genus_formulas", 0.5, genus_ok ? 0.0 : 1.0);
  }

  const auto [c0, c1] = pencil_from(h);
  const CMatrix g0 = grading_matrix(n, m);
  led.fixed("grading_anticommutes", 0.0,
            std::max((g0 * c0 * g0 + c0).norm(), (g0 * c1 * g0 + c1).norm()));

  const CMatrix x = rng.complex_normal(n, m);
  const CMatrix y = rng.complex_normal(m, n);
  const CMatrix n0 = rng.complex_normal(m, m);
  const CMatrix rec = solve_N(x, y, x * n0, n0 * y);
  led.identity("solve_N_roundtrip", 1e-10, (rec - n0).norm() / n0.norm());

  const LaxData lax = build_lax(h);
  const HoloState d = holo_rhs(h);
  const PolyMatrix dx = PolyMatrix::linear(d.A0, d.A1);
  const PolyMatrix dy = PolyMatrix::linear(d.B0, d.B1);
  double wsharp = 0.0;
  for (const Complex zeta : lax_sample_nodes()) {
    const CMatrix xz = lax.X(zeta);
    const CMatrix yz = lax.Y(zeta);
    const CMatrix zs = lax.Zsharp(zeta);
    const CMatrix nz = solve_N(xz, yz, dx(zeta) - zs * xz, -dy(zeta) - yz * zs);
    const CMatrix expected = lax.N(zeta);
    wsharp = std::max(wsharp, (nz - expected).norm() / std::max(1.0, expected.norm()));
  }
  led.identity("solve_N_matches_wsharp", 1e-9, wsharp);

  const SuperMatrix c = SuperMatrix::odd(h.A0, h.B0);
  led.identity("orbit_gradient", 1e-10, orbit_gradient_check(c));
}

struct SuiteSpec {
  Suite suite;
  const char* name;
  std::uint64_t stream;
};

constexpr std::array<SuiteSpec, 3> kSuites{{{Suite::algebra, "algebra", 1},
                                            {Suite::flows, "flows", 2},
                                            {Suite::spectral, "spectral", 3}}};

}  // namespace

std::vector<CheckResult> run_checks(const CheckOptions& opts) {
  const double tol_scale = opts.tol / 1e-12;
  const TripleVariant variant = opts.corrupt ? TripleVariant::corrupted : TripleVariant::standard;
  std::vector<CheckResult> out;
  for (const SuiteSpec& spec : kSuites) {
    if (opts.suite != Suite::all && opts.suite != spec.suite) continue;
    Ledger led(spec.name, tol_scale);
    for (std::size_t si = 0; si < kCheckSizes.size(); ++si) {
      const auto [n, m] = kCheckSizes[si];
      for (std::size_t trial = 0; trial < opts.trials; ++trial) {
        Rng rng(derive_seed(opts.seed, spec.stream * 16 + si, trial));
        switch (spec.suite) {
          case Suite::algebra: algebra_trial(led, rng, n, m, variant); break;
          case Suite::flows: flows_trial(led, rng, n, m, variant); break;
          case Suite::spectral: spectral_trial(led, rng, n, m); break;
          case Suite::all: break;
        }
      }
    }
    led.append_to(out);
  }
  return out;
}

}  // namespace bhtlab::checks
