#include "orliczmp/cli.hpp"
#include "orliczmp/config.hpp"
#include "orliczmp/conjugate.hpp"
#include "orliczmp/functional.hpp"
#include "orliczmp/gfunction.hpp"
#include "orliczmp/hypothesis.hpp"
#include "orliczmp/mountain_pass.hpp"
#include "orliczmp/orlicz_space.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

namespace py = pybind11;
using namespace orliczmp;

namespace {

// (m, N) arrays or 1-D arrays for N = 1.
GridFunction grid(double T, const Values& v) { return GridFunction(T, v); }

py::dict verdict_dict(const Verdict& v) {
  py::dict d;
  d["status"] = to_string(v.status);
  d["margin"] = v.margin;
  d["witness_t"] = v.witness_t;
  d["witness_x"] = v.witness_x;
  d["note"] = v.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Anisotropic Orlicz-Sobolev spaces and a mountain-pass solver for periodic problems";

  py::register_exception<NumericalError>(mod, "NumericalError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);

  py::class_<GFunction>(mod, "GFunction")
      .def(py::init([](const std::string& spec, int dim) { return parse_gfunction(spec, dim); }), py::arg("spec"),
           py::arg("dim") = 0)
      .def("__call__", [](const GFunction& g, const Vec& x) { return g(x); })
      .def("gradient", [](const GFunction& g, const Vec& x) { return g.gradient(x); })
      .def_property_readonly("dim", &GFunction::dim)
      .def_property_readonly("label", &GFunction::label)
      .def("__repr__", [](const GFunction& g) { return "GFunction('" + g.label() + "')"; });

  mod.def("builtin_gfunctions", &builtin_gfunction_names);

  mod.def(
      "simonenko_indices",
      [](const GFunction& g) {
        const auto ix = simonenko_indices(g);
        py::dict d;
        d["p_G"] = ix.p_G;
        d["q_G"] = ix.q_G;
        d["q_G_inf"] = ix.q_G_inf;
        d["stabilized"] = ix.stabilized;
        d["warning"] = ix.warning;
        return d;
      },
      py::arg("g"));
  mod.def("fenchel_conjugate", [](const GFunction& g, const Vec& y) { return fenchel_conjugate(g, y); }, py::arg("g"),
          py::arg("y"));

  mod.def("modular", [](const GFunction& g, double T, const Values& u) { return modular(g, grid(T, u)); },
          py::arg("g"), py::arg("T"), py::arg("u"));
  mod.def("luxemburg_norm", [](const GFunction& g, double T, const Values& u) { return luxemburg_norm(g, grid(T, u)); },
          py::arg("g"), py::arg("T"), py::arg("u"));
  mod.def("sobolev_norm", [](const GFunction& g, double T, const Values& u) { return sobolev_norm(g, grid(T, u)); },
          py::arg("g"), py::arg("T"), py::arg("u"));
  mod.def("joint_norm", [](const GFunction& g, double T, const Values& u) { return joint_norm(g, grid(T, u)); },
          py::arg("g"), py::arg("T"), py::arg("u"));
  mod.def("embedding_constant", [](const GFunction& g, double T) { return embedding_constant(g, T); }, py::arg("g"),
          py::arg("T"));

  py::class_<Problem>(mod, "Problem")
      .def_readonly("name", &Problem::name)
      .def_readwrite("T", &Problem::T)
      .def_readwrite("m", &Problem::m)
      .def_readonly("G", &Problem::G)
      .def_readwrite("b", &Problem::b)
      .def_readwrite("rho0", &Problem::rho0)
      .def_property_readonly("dim", &Problem::dim)
      .def("with_forcing_scale", &Problem::with_forcing_scale, py::arg("s"));

  mod.def("builtin_problem", &builtin_problem, py::arg("name"), py::arg("params") = ProblemParams{});
  mod.def("builtin_problems", &builtin_problem_names);

  mod.def("action", [](const Problem& p, const Values& u) { return action(p, grid(p.T, u)); }, py::arg("problem"),
          py::arg("u"));
  mod.def("action_gradient",
          [](const Problem& p, const Values& u) { return Values(action_gradient(p, grid(p.T, u)).values()); },
          py::arg("problem"), py::arg("u"));
  mod.def("el_residual", [](const Problem& p, const Values& u) { return el_residual(p, grid(p.T, u)); },
          py::arg("problem"), py::arg("u"));

  mod.def(
      "check_hypotheses",
      [](const Problem& p) {
        const auto rep = check_hypotheses(p);
        py::dict verdicts;
        for (const auto& v : rep.verdicts) verdicts[py::str(v.name)] = verdict_dict(v);
        py::dict d;
        d["verdicts"] = verdicts;
        d["rho"] = rep.rho;
        d["embedding_constant"] = rep.embedding_constant;
        d["R_Gstar_f"] = rep.R_Gstar_f;
        return d;
      },
      py::arg("problem"));

  mod.def(
      "solve",
      [](const Problem& p, std::uint64_t seed, int path_points) {
        MountainPassConfig cfg;
        cfg.seed = seed;
        cfg.path_points = path_points;
        std::optional<SolveReport> result;
        {
          py::gil_scoped_release release;
          result.emplace(solve(p, cfg));
        }
        const SolveReport& rep = *result;
        py::dict d;
        d["u_star"] = Values(rep.u_star.values());
        d["J_value"] = rep.J_value;
        d["grad_norm"] = rep.grad_norm;
        d["el_residual"] = rep.el_residual;
        d["alpha_rim"] = rep.alpha_rim;
        d["mp_level_c"] = rep.mp_level_c;
        d["iterations"] = rep.iterations;
        d["newton_iterations"] = rep.newton_iterations;
        d["converged"] = rep.converged;
        d["diagnostics"] = rep.diagnostics;
        return d;
      },
      py::arg("problem"), py::arg("seed") = 42, py::arg("path_points") = 32);

  mod.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
