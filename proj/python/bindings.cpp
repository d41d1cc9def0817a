#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bhtlab/alts.hpp"
#include "bhtlab/checks.hpp"
#include "bhtlab/cli.hpp"
#include "bhtlab/errors.hpp"
#include "bhtlab/flows.hpp"
#include "bhtlab/integrate.hpp"
#include "bhtlab/random.hpp"
#include "bhtlab/spectral.hpp"
#include "bhtlab/superalg.hpp"

namespace py = pybind11;
using namespace bhtlab;

namespace {

using Pair = std::pair<CMatrix, CMatrix>;
using Quad = std::tuple<CMatrix, CMatrix, CMatrix, CMatrix>;

BHTState to_state(const CMatrix& a, const CMatrix& b) {
  BHTState s{a, b};
  s.validate();
  return s;
}

HoloState to_holo(const CMatrix& a0, const CMatrix& a1, const CMatrix& b0, const CMatrix& b1) {
  HoloState h{a0, a1, b0, b1};
  h.validate();
  return h;
}

Quad from_holo(const HoloState& h) { return {h.A0, h.A1, h.B0, h.B1}; }

py::dict poly_dict(const BivariatePoly& p) {
  py::dict d;
  for (const auto& [key, c] : p.terms()) d[py::make_tuple(key.first, key.second)] = c;
  return d;
}

IntegrationOptions options(double t_end, double dt, const std::string& method, std::size_t stride) {
  if (method != "rk4" && method != "euler") throw ValidationError("method must be 'rk4' or 'euler'");
  return {t_end, dt, method == "rk4" ? Method::rk4 : Method::euler, stride};
}

}  // namespace

PYBIND11_MODULE(_bhtlab, m) {
  m.doc() = "BHT flow, Nahm's equations, gl(n|m) and spectral curves";
  m.attr("__version__") = BHTLAB_VERSION;
  m.attr("RNG_NAME") = std::string(kRngName);
  m.attr("RNG_VERSION") = kRngVersion;

  static py::exception<Error> base(m, "BhtlabError", PyExc_RuntimeError);
  static py::exception<DimensionError> dim(m, "DimensionError", base.ptr());
  static py::exception<RankError> rank(m, "RankError", base.ptr());
  static py::exception<NodeError> node(m, "NodeError", base.ptr());
  static py::exception<DegenerateError> degenerate(m, "DegenerateError", base.ptr());
  static py::exception<ValidationError> validation(m, "ValidationError", base.ptr());
  static py::exception<InconsistencyError> inconsistency(m, "InconsistencyError", base.ptr());
  static py::exception<BlowUpError> blowup(m, "BlowUpError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DimensionError& e) {
      py::set_error(dim, e.what());
    } catch (const RankError& e) {
      py::set_error(rank, e.what());
    } catch (const NodeError& e) {
      py::set_error(node, e.what());
    } catch (const DegenerateError& e) {
      py::set_error(degenerate, e.what());
    } catch (const ValidationError& e) {
      py::set_error(validation, e.what());
    } catch (const InconsistencyError& e) {
      py::set_error(inconsistency, e.what());
    } catch (const BlowUpError& e) {
      py::set_error(blowup, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  // matkit
  m.def("char_poly", &char_poly, py::arg("matrix"),
        "Coefficients of det(lambda - M), ascending in lambda.");
  m.def("poly_roots", [](const std::vector<Complex>& c) { return poly_roots(c); }, py::arg("coeffs"));
  m.def("numerical_rank", &numerical_rank, py::arg("matrix"), py::arg("rel_threshold") = kRankThreshold);

  // random
  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", &Rng::uniform)
      .def("normal", &Rng::normal)
      .def("complex_normal", &Rng::complex_normal, py::arg("rows"), py::arg("cols"))
      .def("anti_hermitian", &Rng::anti_hermitian, py::arg("size"))
      .def("unitary", &Rng::unitary, py::arg("size"));

  // superalg
  py::class_<SuperMatrix>(m, "SuperMatrix")
      .def(py::init<CMatrix, CMatrix, CMatrix, CMatrix>(), py::arg("U"), py::arg("A"), py::arg("B"),
           py::arg("V"))
      .def_static("odd", &SuperMatrix::odd, py::arg("A"), py::arg("B"))
      .def_static("even", &SuperMatrix::even, py::arg("U"), py::arg("V"))
      .def_static("zero", &SuperMatrix::zero, py::arg("n"), py::arg("m"))
      .def_static("from_matrix", &SuperMatrix::from_matrix, py::arg("full"), py::arg("n"), py::arg("m"))
      .def_property_readonly("n", &SuperMatrix::n)
      .def_property_readonly("m", &SuperMatrix::m)
      .def_property_readonly("U", &SuperMatrix::U)
      .def_property_readonly("A", &SuperMatrix::A)
      .def_property_readonly("B", &SuperMatrix::B)
      .def_property_readonly("V", &SuperMatrix::V)
      .def("to_matrix", &SuperMatrix::to_matrix)
      .def("is_even", &SuperMatrix::is_even)
      .def("is_odd", &SuperMatrix::is_odd)
      .def("norm", &SuperMatrix::norm)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(-py::self)
      .def("__rmul__", [](const SuperMatrix& x, Complex s) { return s * x; });
  m.def("superbracket", &superbracket, py::arg("x"), py::arg("y"));
  m.def("supertrace", &supertrace, py::arg("x"));
  m.def("j_map", &j_map, py::arg("x"));
  m.def("pairing", &pairing, py::arg("x"), py::arg("y"));
  m.def("orbit_gradient_check", &orbit_gradient_check, py::arg("c"));
  m.def(
      "is_regular",
      [](const SuperMatrix& c) { return regularity(c, default_group(c.n(), c.m())).regular; },
      py::arg("c"));

  // alts
  m.def("triple", py::overload_cast<const SuperMatrix&, const SuperMatrix&, const SuperMatrix&>(&triple),
        py::arg("x"), py::arg("y"), py::arg("z"));
  m.def(
      "alts_axioms_residual",
      [](const SuperMatrix& x, const SuperMatrix& y, const SuperMatrix& z, const SuperMatrix& u,
         const SuperMatrix& v) {
        const AxiomResiduals r = axioms_residual(OffDiagonalAlts{}, x, y, z, u, v).relative();
        return py::dict(py::arg("symmetry") = r.symmetry, py::arg("cyclic") = r.cyclic,
                        py::arg("derivation") = r.derivation);
      },
      py::arg("x"), py::arg("y"), py::arg("z"), py::arg("u"), py::arg("v"));
  m.def("jccc_rhs", &jccc_rhs, py::arg("c"));
  m.def(
      "nahm_schmid_residual",
      [](const SuperMatrix& c, const std::string& convention) {
        if (convention != "unit" && convention != "half") {
          throw ValidationError("convention must be 'unit' or 'half'");
        }
        return nahm_schmid_residual(c, convention == "unit" ? SchmidConvention::unit
                                                              : SchmidConvention::half);
      },
      py::arg("c"), py::arg("convention") = "unit");

  // flows
  m.def("bht_potential", [](const CMatrix& a, const CMatrix& b) { return bht_potential(to_state(a, b)); },
        py::arg("A"), py::arg("B"));
  m.def(
      "bht_rhs",
      [](const CMatrix& a, const CMatrix& b) {
        const BHTState d = bht_rhs(to_state(a, b));
        return Pair{d.A, d.B};
      },
      py::arg("A"), py::arg("B"));
  m.def(
      "moment_gaps",
      [](const CMatrix& a, const CMatrix& b) { return moments(to_state(a, b)).gaps; },
      py::arg("A"), py::arg("B"));
  m.def(
      "chain_rule_residuals",
      [](const CMatrix& a, const CMatrix& b) { return chain_rule_residuals(to_state(a, b)); },
      py::arg("A"), py::arg("B"));
  m.def(
      "gradient_check",
      [](const CMatrix& a, const CMatrix& b, double h) {
        const GradientCheck g = gradient_check(to_state(a, b), h);
        return py::make_tuple(g.cosine, g.ratio);
      },
      py::arg("A"), py::arg("B"), py::arg("h") = 1e-5);
  m.def(
      "reality_embed",
      [](const CMatrix& a, const CMatrix& b) { return from_holo(reality_embed(to_state(a, b))); },
      py::arg("A"), py::arg("B"));
  m.def(
      "integrate_bht",
      [](const CMatrix& a, const CMatrix& b, double t_end, double dt, const std::string& method,
         std::size_t stride) {
        const auto traj = integrate_bht(to_state(a, b), options(t_end, dt, method, stride));
        std::vector<double> times;
        std::vector<Pair> states;
        for (const auto& p : traj) {
          times.push_back(p.t);
          states.emplace_back(p.state.A, p.state.B);
        }
        return py::make_tuple(times, states);
      },
      py::arg("A"), py::arg("B"), py::arg("t_end") = 1.0, py::arg("dt") = 1e-3,
      py::arg("method") = "rk4", py::arg("stride") = 1);

  // spectral
  m.def(
      "lax_residual",
      [](const CMatrix& a0, const CMatrix& a1, const CMatrix& b0, const CMatrix& b1) {
        return lax_residual(to_holo(a0, a1, b0, b1));
      },
      py::arg("A0"), py::arg("A1"), py::arg("B0"), py::arg("B1"));
  m.def(
      "char_poly_pencil",
      [](const CMatrix& c0, const CMatrix& c1) { return poly_dict(char_poly_pencil(c0, c1)); },
      py::arg("C0"), py::arg("C1"),
      "det(lambda - C0 - C1 zeta) as {(zeta power, lambda power): coefficient}.");
  m.def("solve_N", &solve_N, py::arg("X"), py::arg("Y"), py::arg("U"), py::arg("V"),
        py::arg("tol") = 1e-10);
  m.def(
      "spectral_report",
      [](const CMatrix& a0, const CMatrix& a1, const CMatrix& b0, const CMatrix& b1) {
        const SpectralReport r = tau_and_square_check(to_holo(a0, a1, b0, b1));
        py::dict d;
        d["Phat"] = poly_dict(r.Phat);
        d["P"] = r.P ? py::object(poly_dict(*r.P)) : py::none();
        d["tau_residual"] = r.tau_residual;
        d["lambda_power"] = r.lambda_power;
        d["square_residual"] = r.square_residual;
        d["xy_yx_residual"] = r.xy_yx_residual;
        d["genus_S"] = r.genus_S;
        d["genus_Shat"] = r.genus_Shat;
        d["ramification_A"] = r.ramification_A;
        d["ramification_B"] = r.ramification_B;
        d["disjoint"] = r.disjoint;
        return d;
      },
      py::arg("A0"), py::arg("A1"), py::arg("B0"), py::arg("B1"));

  // verification suites and the command line
  m.def(
      "run_checks",
      [](const std::string& suite, std::size_t trials, std::uint64_t seed, double tol, bool corrupt) {
        checks::CheckOptions opts;
        if (suite == "algebra") opts.suite = checks::Suite::algebra;
        else if (suite == "flows") opts.suite = checks::Suite::flows;
        else if (suite == "spectral") opts.suite = checks::Suite::spectral;
        else if (suite == "all") opts.suite = checks::Suite::all;
        else throw ValidationError("unknown suite '" + suite + "'");
        opts.trials = trials;
        opts.seed = seed;
        opts.tol = tol;
        opts.corrupt = corrupt;
        py::list out;
        for (const auto& r : checks::run_checks(opts)) {
          out.append(py::dict(py::arg("suite") = r.suite, py::arg("name") = r.name,
                              py::arg("max_residual") = r.max_residual,
                              py::arg("threshold") = r.threshold, py::arg("passed") = r.passed()));
        }
        return out;
      },
      py::arg("suite") = "all", py::arg("trials") = 1, py::arg("seed") = 0, py::arg("tol") = 1e-12,
      py::arg("corrupt") = false);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run_main(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line in-process; returns (exit code, stdout, stderr).");
}
