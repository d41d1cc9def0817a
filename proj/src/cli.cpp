#include "bhtlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "bhtlab/alts.hpp"
#include "bhtlab/errors.hpp"
#include "bhtlab/io.hpp"
#include "bhtlab/random.hpp"
#include "bhtlab/spectral.hpp"

#ifndef BHTLAB_VERSION
#define BHTLAB_VERSION "0.0.0"
#endif

namespace bhtlab::cli {

using io::json;

namespace {

constexpr std::array<std::pair<System, std::string_view>, 6> kSystems{{
    {System::bht, "bht"},
    {System::nahm, "nahm"},
    {System::holo, "holo"},
    {System::alts_jccc, "alts_jccc"},
    {System::gauge_bht, "gauge_bht"},
    {System::nahm_schmid_check, "nahm_schmid_check"},
}};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json prng_json() { return {{"name", std::string(kRngName)}, {"version", kRngVersion}}; }

std::string_view method_name(Method m) { return m == Method::euler ? "euler" : "rk4"; }

std::string strip_extension(const std::string& stem) {
  for (const char* ext : {".json", ".csv"}) {
    const std::string e(ext);
    if (stem.size() > e.size() && stem.compare(stem.size() - e.size(), e.size(), e) == 0) {
      return stem.substr(0, stem.size() - e.size());
    }
  }
  return stem;
}

// Per-row invariants written to the simulate CSV.
struct Row {
  double t = 0.0;
  double F = kNaN;
  double gap = kNaN;
  double nahm = kNaN;
  double drift = 0.0;
};

double coefficient_drift(const std::vector<Complex>& c, const std::vector<Complex>& base) {
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    worst = std::max(worst, std::abs(c[i] - base[i]) / (1.0 + std::abs(base[i])));
  }
  return worst;
}

template <class Arr>
double max_of(const Arr& a) {
  return *std::max_element(a.begin(), a.end());
}

struct SimOutput {
  json states = json::array();
  std::vector<Row> rows;
  json extra = json::object();
  bool has_potential = false;
};

void scale_to(double radius, std::initializer_list<CMatrix*> parts) {
  double sq = 0.0;
  for (const CMatrix* p : parts) sq += p->squaredNorm();
  if (sq == 0.0) return;
  const double f = radius / std::sqrt(sq);
  for (CMatrix* p : parts) *p *= f;
}

// Rows for systems whose state decodes to a BHT pair (A, B).
template <class State, class Decode, class Nahm>
void bht_like_rows(const Trajectory<State>& traj, Decode decode, Nahm nahm_residual, SimOutput& out) {
  out.has_potential = true;
  std::vector<Complex> base;
  for (const auto& p : traj) {
    const BHTState s = decode(p.state);
    const MomentData md = moments(s);
    const auto coeffs = spectral_coefficients(reality_embed(s));
    if (base.empty()) base = coeffs;
    out.rows.push_back({p.t, md.F, md.gaps[0], nahm_residual(p.state), coefficient_drift(coeffs, base)});
    json entry = io::state_to_json(p.state);
    entry["t"] = p.t;
    out.states.push_back(std::move(entry));
  }
}

SimOutput simulate_system(const RunConfig& cfg) {
  Rng rng(cfg.seed);
  const IntegrationOptions opts{cfg.t_end, cfg.dt, cfg.method, cfg.stride};
  const Index n = cfg.n;
  const Index m = cfg.m;
  SimOutput out;

  auto draw_pair = [&]() {
    BHTState s{rng.complex_normal(n, m), rng.complex_normal(m, n)};
    scale_to(cfg.radius, {&s.A, &s.B});
    return s;
  };

  switch (cfg.system) {
    case System::bht: {
      const auto traj = integrate_bht(draw_pair(), opts);
      bht_like_rows(traj, [](const BHTState& s) { return s; },
                    [](const BHTState& s) { return max_of(chain_rule_residuals(s)); }, out);
      break;
    }
    case System::gauge_bht: {
      const BHTState s = draw_pair();
      const CMatrix u = rng.anti_hermitian(n);
      const CMatrix v = rng.anti_hermitian(m);
      const auto traj = integrate_gauge_bht(s, u, v, opts);
      bht_like_rows(traj, [](const BHTState& x) { return x; },
                    [](const BHTState&) { return kNaN; }, out);
      out.extra["gauge"] = {{"u", io::to_json(u)}, {"v", io::to_json(v)}};
      break;
    }
    case System::alts_jccc:
    case System::nahm_schmid_check: {
      const BHTState s = draw_pair();
      const auto traj = integrate_jccc(SuperMatrix::odd(s.A, s.B), opts);
      auto decode = [](const SuperMatrix& c) { return BHTState{c.A(), c.B()}; };
      if (cfg.system == System::alts_jccc) {
        bht_like_rows(traj, decode,
                      [](const SuperMatrix& c) { return max_of(nahm_alpha_beta_residual(c)); }, out);
      } else {
        bht_like_rows(traj, decode, [](const SuperMatrix& c) {
          return max_of(nahm_schmid_residual(c, kSchmidConvention));
        }, out);
        out.extra["schmid_convention"] = kSchmidConvention == SchmidConvention::unit ? "unit" : "half";
      }
      break;
    }
    case System::holo: {
      HoloState h{rng.complex_normal(n, m), rng.complex_normal(n, m), rng.complex_normal(m, n),
                  rng.complex_normal(m, n)};
      scale_to(cfg.radius, {&h.A0, &h.A1, &h.B0, &h.B1});
      const auto traj = integrate_holo(h, opts);
      std::vector<Complex> base;
      for (const auto& p : traj) {
        const auto coeffs = spectral_coefficients(p.state);
        if (base.empty()) base = coeffs;
        out.rows.push_back({p.t, kNaN, kNaN, max_of(lax_residual(p.state)),
                            coefficient_drift(coeffs, base)});
        json entry = io::state_to_json(p.state);
        entry["t"] = p.t;
        out.states.push_back(std::move(entry));
      }
      break;
    }
    case System::nahm: {
      CMatrix t1 = rng.anti_hermitian(n);
      CMatrix t2 = rng.anti_hermitian(n);
      CMatrix t3 = rng.anti_hermitian(n);
      scale_to(cfg.radius, {&t1, &t2, &t3});
      const auto traj = integrate_nahm(NahmTriple::from_components(t1, t2, t3), opts);
      std::vector<Complex> base;
      for (const auto& p : traj) {
        const auto coeffs = nahm_spectral_coefficients(p.state);
        if (base.empty()) base = coeffs;
        out.rows.push_back({p.t, kNaN, kNaN, kNaN, coefficient_drift(coeffs, base)});
        json entry = io::state_to_json(p.state);
        entry["t"] = p.t;
        out.states.push_back(std::move(entry));
      }
      break;
    }
  }
  return out;
}

std::string simulate_csv(const std::vector<Row>& rows) {
  std::string csv = "t,F,gap,nahm_residual_max,spectral_drift\n";
  for (const Row& r : rows) {
    csv += io::format_double(r.t) + ',' + io::format_double(r.F) + ',' + io::format_double(r.gap) +
           ',' + io::format_double(r.nahm) + ',' + io::format_double(r.drift) + '\n';
  }
  return csv;
}

}  // namespace

std::string_view to_string(System s) {
  for (const auto& [sys, name] : kSystems) {
    if (sys == s) return name;
  }
  return "unknown";
}

System parse_system(std::string_view name) {
  for (const auto& [sys, n] : kSystems) {
    if (n == name) return sys;
  }
  throw ValidationError("unknown system '" + std::string(name) + "'");
}

void validate(const RunConfig& cfg) {
  if (cfg.n < 1 || cfg.m < 1) throw ValidationError("n and m must be at least 1");
  if (cfg.system != System::nahm && cfg.n < cfg.m) {
    throw ValidationError("n >= m is required for system " + std::string(to_string(cfg.system)));
  }
  if (!(cfg.radius >= 0.0) || !std::isfinite(cfg.radius)) {
    throw ValidationError("radius must be finite and nonnegative");
  }
  if (cfg.out_path.empty()) throw ValidationError("output path must not be empty");
  for (const auto& [name, value] : cfg.tolerances) {
    if (!(value >= 0.0)) throw ValidationError("tolerance '" + name + "' must be nonnegative");
  }
  validate(IntegrationOptions{cfg.t_end, cfg.dt, cfg.method, cfg.stride});
}

std::uint64_t default_seed() {
  const char* env = std::getenv("BHTLAB_SEED");
  if (env == nullptr || *env == '\0') return 0;
  const std::string_view s(env);
  std::uint64_t value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ValidationError("BHTLAB_SEED must be an unsigned 64-bit integer, got '" + std::string(s) + "'");
  }
  return value;
}

std::string json_path(const std::string& stem) { return strip_extension(stem) + ".json"; }
std::string csv_path(const std::string& stem) { return strip_extension(stem) + ".csv"; }

int run_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    out << json{{"command", "simulate"}, {"status", "config_error"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }

  SimOutput sim;
  try {
    sim = simulate_system(cfg);
  } catch (const BlowUpError& e) {
    err << "blow-up: " << e.what() << '\n';
    out << json{{"command", "simulate"},
                {"status", "blowup"},
                {"last_finite_t", e.last_finite_t()}}
               .dump()
        << '\n';
    return 3;
  }

  double max_drift = 0.0;
  double min_df = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sim.rows.size(); ++i) {
    max_drift = std::max(max_drift, sim.rows[i].drift);
    if (i > 0 && sim.has_potential) min_df = std::min(min_df, sim.rows[i].F - sim.rows[i - 1].F);
  }

  json doc;
  doc["format"] = io::kTrajectoryFormat;
  doc["format_version"] = io::kFormatVersion;
  doc["generator"] = {{"name", "bhtlab"}, {"version", BHTLAB_VERSION}};
  doc["prng"] = prng_json();
  doc["system"] = std::string(to_string(cfg.system));
  doc["n"] = cfg.n;
  doc["m"] = cfg.m;
  doc["seed"] = cfg.seed;
  doc["method"] = std::string(method_name(cfg.method));
  doc["t_end"] = cfg.t_end;
  doc["dt"] = cfg.dt;
  doc["stride"] = cfg.stride;
  doc["radius"] = cfg.radius;
  for (const auto& [k, v] : sim.extra.items()) doc[k] = v;
  doc["states"] = std::move(sim.states);

  const std::string jpath = json_path(cfg.out_path);
  const std::string cpath = csv_path(cfg.out_path);
  try {
    io::write_file(jpath, doc.dump() + '\n');
    io::write_file(cpath, simulate_csv(sim.rows));
  } catch (const Error& e) {
    err << "output error: " << e.what() << '\n';
    out << json{{"command", "simulate"}, {"status", "io_error"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }

  json summary{{"command", "simulate"},
               {"status", "ok"},
               {"system", std::string(to_string(cfg.system))},
               {"n", cfg.n},
               {"m", cfg.m},
               {"seed", cfg.seed},
               {"prng", prng_json()},
               {"rows", sim.rows.size()},
               {"t_final", sim.rows.back().t},
               {"max_spectral_drift", max_drift},
               {"drift_ok", max_drift <= cfg.tolerances.at("drift")},
               {"trajectory", jpath},
               {"series", cpath}};
  if (sim.has_potential && sim.rows.size() > 1) {
    summary["min_F_step"] = min_df;
    summary["F_monotone"] = min_df >= -cfg.tolerances.at("monotone");
  }
  err << "simulate " << to_string(cfg.system) << " n=" << cfg.n << " m=" << cfg.m
      << " seed=" << cfg.seed << ": " << sim.rows.size() << " rows, max spectral drift "
      << max_drift << '\n';
  out << summary.dump() << '\n';
  return 0;
}

int run_check(const checks::CheckOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.trials < 1 || !(opts.tol > 0.0)) {
    err << "config error: trials must be >= 1 and tol > 0\n";
    out << json{{"command", "check"}, {"status", "config_error"}}.dump() << '\n';
    return 2;
  }
  std::vector<checks::CheckResult> results;
  try {
    results = checks::run_checks(opts);
  } catch (const Error& e) {
    // An exception inside a trial is itself a failed check.
    err << "check aborted: " << e.what() << '\n';
    out << json{{"command", "check"}, {"status", "fail"}, {"error", e.what()}}.dump() << '\n';
    return 1;
  }

  json table = json::object();
  json failures = json::array();
  for (const auto& r : results) {
    const std::string key = r.suite + "." + r.name;
    table[key] = {{"max_residual", r.max_residual}, {"threshold", r.threshold},
                  {"samples", r.samples}, {"passed", r.passed()}};
    err << (r.passed() ? "PASS " : "FAIL ") << key << " max=" << r.max_residual
        << " threshold=" << r.threshold << " samples=" << r.samples << '\n';
    if (!r.passed()) failures.push_back(key);
  }
  const bool ok = failures.empty();
  if (!ok) err << failures.size() << " check(s) failed\n";
  const char* suite = opts.suite == checks::Suite::algebra   ? "algebra"
                      : opts.suite == checks::Suite::flows    ? "flows"
                      : opts.suite == checks::Suite::spectral ? "spectral"
                                                              : "all";
  out << json{{"command", "check"},
              {"status", ok ? "pass" : "fail"},
              {"suite", suite},
              {"trials", opts.trials},
              {"seed", opts.seed},
              {"tol", opts.tol},
              {"corrupt", opts.corrupt},
              {"prng", prng_json()},
              {"checks", table},
              {"failures", failures}}
             .dump()
      << '\n';
  return ok ? 0 : 1;
}

int run_spectral(const SpectralConfig& cfg, std::ostream& out, std::ostream& err) {
  auto fail = [&](const std::string& msg) {
    err << "input error: " << msg << '\n';
    out << json{{"command", "spectral"}, {"status", "input_error"}, {"message", msg}}.dump() << '\n';
    return 2;
  };
  io::PencilTrajectory traj;
  try {
    const json doc = json::parse(io::read_file(cfg.input));
    traj = io::pencil_trajectory_from_json(doc);
  } catch (const json::exception& e) {
    return fail(e.what());
  } catch (const Error& e) {
    return fail(e.what());
  }

  std::vector<std::vector<Complex>> rows;
  SpectralReport report;
  try {
    for (const auto& h : traj.states) rows.push_back(spectral_coefficients(h));
    report = tau_and_square_check(traj.states.back());
  } catch (const Error& e) {
    return fail(e.what());
  }

  const int k = static_cast<int>(traj.n + traj.m);
  std::string csv = "t";
  for (int i = 0; i <= k; ++i) {
    for (int j = 0; j <= k; ++j) {
      const std::string tag = "z" + std::to_string(i) + "_l" + std::to_string(j);
      csv += ",re_" + tag + ",im_" + tag;
    }
  }
  csv += '\n';
  double variation = 0.0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    csv += io::format_double(traj.times[r]);
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      csv += ',' + io::format_double(rows[r][c].real()) + ',' + io::format_double(rows[r][c].imag());
      variation = std::max(variation, std::abs(rows[r][c] - rows.front()[c]));
    }
    csv += '\n';
  }

  json doc{{"format", "bhtlab-spectral-report"},
           {"format_version", io::kFormatVersion},
           {"generator", {{"name", "bhtlab"}, {"version", BHTLAB_VERSION}}},
           {"prng", prng_json()},
           {"system", traj.system},
           {"n", traj.n},
           {"m", traj.m},
           {"rows", rows.size()},
           {"t_final", traj.times.back()},
           {"max_column_variation", variation},
           {"report", io::to_json(report)}};

  const std::string jpath = json_path(cfg.out_path);
  const std::string cpath = csv_path(cfg.out_path);
  try {
    io::write_file(cpath, csv);
    io::write_file(jpath, doc.dump() + '\n');
  } catch (const Error& e) {
    return fail(e.what());
  }
  err << "spectral: " << rows.size() << " rows, max column variation " << variation
      << ", tau residual " << report.tau_residual << '\n';
  out << json{{"command", "spectral"},
              {"status", "ok"},
              {"rows", rows.size()},
              {"max_column_variation", variation},
              {"tau_residual", report.tau_residual},
              {"lambda_power", report.lambda_power},
              {"report", jpath},
              {"series", cpath}}
             .dump()
      << '\n';
  return 0;
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical lab for the BHT flow, Nahm's equations and spectral curves", "bhtlab"};
  app.set_version_flag("--version", std::string(BHTLAB_VERSION));
  app.require_subcommand(1);

  std::uint64_t seed_default = 0;
  std::string seed_error;
  try {
    seed_default = default_seed();
  } catch (const Error& e) {
    seed_error = e.what();
  }

  const std::map<std::string, Method> methods{{"euler", Method::euler}, {"rk4", Method::rk4}};
  std::map<std::string, System> systems;
  for (const auto& [sys, name] : kSystems) systems.emplace(std::string(name), sys);

  RunConfig run;
  run.seed = seed_default;
  auto* sim = app.add_subcommand("simulate", "Integrate a flow from a seeded random state");
  std::string system_name = "bht";
  std::string method_name_opt = "rk4";
  sim->add_option("--system", system_name, "bht, nahm, holo, alts_jccc, gauge_bht, nahm_schmid_check")
      ->check(CLI::IsMember(systems))
      ->capture_default_str();
  sim->add_option("--n", run.n, "Rows of A")->capture_default_str();
  sim->add_option("--m", run.m, "Columns of A")->capture_default_str();
  auto* sim_seed = sim->add_option("--seed", run.seed, "PRNG seed (default: BHTLAB_SEED or 0)");
  sim->add_option("--t-end", run.t_end, "Final time")->capture_default_str();
  sim->add_option("--dt", run.dt, "Step size")->capture_default_str();
  sim->add_option("--method", method_name_opt, "euler or rk4")
      ->check(CLI::IsMember(methods))
      ->capture_default_str();
  sim->add_option("--stride", run.stride, "Store every stride-th step")->capture_default_str();
  sim->add_option("--radius", run.radius, "Frobenius norm of the initial state")->capture_default_str();
  sim->add_option("--out", run.out_path, "Output stem for <stem>.json and <stem>.csv")
      ->capture_default_str();

  checks::CheckOptions chk;
  chk.seed = seed_default;
  const std::map<std::string, checks::Suite> suites{{"algebra", checks::Suite::algebra},
                                                    {"flows", checks::Suite::flows},
                                                    {"spectral", checks::Suite::spectral},
                                                    {"all", checks::Suite::all}};
  auto* check = app.add_subcommand("check", "Run the randomized identity suites");
  std::string suite_name = "all";
  check->add_option("--suite", suite_name, "algebra, flows, spectral or all")
      ->check(CLI::IsMember(suites))
      ->capture_default_str();
  check->add_option("--trials", chk.trials, "Random instances per size")->capture_default_str();
  auto* chk_seed = check->add_option("--seed", chk.seed, "PRNG seed (default: BHTLAB_SEED or 0)");
  check->add_option("--tol", chk.tol, "Identity tolerance; other thresholds scale with it")
      ->capture_default_str();
  check->add_flag("--corrupt", chk.corrupt, "Flip a sign in the triple product (negative control)");

  SpectralConfig spec;
  auto* spectral = app.add_subcommand("spectral", "Spectral coefficients along a trajectory");
  spectral->add_option("--input", spec.input, "Trajectory JSON written by simulate")->required();
  spectral->add_option("--out", spec.out_path, "Output stem for <stem>.csv and <stem>.json")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    out << json{{"status", "config_error"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }

  const bool seed_given = (sim->parsed() && sim_seed->count() > 0) ||
                          (check->parsed() && chk_seed->count() > 0);
  if (!seed_error.empty() && !seed_given && !spectral->parsed()) {
    err << "config error: " << seed_error << '\n';
    out << json{{"status", "config_error"}, {"message", seed_error}}.dump() << '\n';
    return 2;
  }

  run.system = systems.at(system_name);
  run.method = methods.at(method_name_opt);
  chk.suite = suites.at(suite_name);

  try {
    if (sim->parsed()) return run_simulate(run, out, err);
    if (check->parsed()) return run_check(chk, out, err);
    return run_spectral(spec, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    out << json{{"status", "error"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }
}

int run_main(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_main(args, std::cout, std::cerr);
}

}  // namespace bhtlab::cli
