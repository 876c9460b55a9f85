#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qecwit/balazs.hpp"
#include "qecwit/highdim.hpp"
#include "qecwit/overlap.hpp"
#include "qecwit/selftest.hpp"
#include "qecwit/special_fn.hpp"
#include "qecwit/wigner.hpp"

namespace py = pybind11;
using namespace qecwit;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Wigner-negativity test of microcanonical shell distributions";

  m.def("bessel_i0", &bessel_i0, py::arg("z"));
  m.def("bessel_i0_scaled", &bessel_i0_scaled, py::arg("z"));
  m.def(
      "bessel_i0_scaled_log",
      [](Complex z) {
        const LogModulusPhase r = bessel_i0_scaled_log(z);
        return py::make_tuple(r.log_magnitude, r.phase);
      },
      py::arg("z"), "(log|I0(z)|, arg I0(z))");

  py::class_<CatWitness>(m, "CatWitness")
      .def(py::init<double, double>(), py::arg("separation"), py::arg("hbar"))
      .def_static("from_scaling", &CatWitness::from_scaling, py::arg("K"), py::arg("gamma"),
                  py::arg("hbar"))
      .def_property_readonly("separation", &CatWitness::separation)
      .def_property_readonly("hbar", &CatWitness::hbar)
      .def_property_readonly("prefactor", &CatWitness::prefactor);

  py::class_<BalazsWitness>(m, "BalazsWitness")
      .def(py::init<double, double, double>(), py::arg("q1"), py::arg("q2"), py::arg("epsilon"))
      .def_property_readonly("q1", &BalazsWitness::q1)
      .def_property_readonly("q2", &BalazsWitness::q2)
      .def_property_readonly("epsilon", &BalazsWitness::epsilon);

  m.def("cat_wigner", py::overload_cast<const CatWitness&, double, double>(&cat_wigner),
        py::arg("witness"), py::arg("p"), py::arg("q"));
  m.def("balazs_wigner",
        py::overload_cast<const BalazsWitness&, double, double, double>(&balazs_wigner),
        py::arg("witness"), py::arg("hbar"), py::arg("p"), py::arg("q"));

  py::class_<CircularShell>(m, "CircularShell")
      .def(py::init<double, double, double, double>(), py::arg("radius"), py::arg("omega"),
           py::arg("center_p"), py::arg("center_q"))
      .def_static("through_origin", &CircularShell::through_origin, py::arg("radius"),
                  py::arg("omega"))
      .def_property_readonly("radius", &CircularShell::radius)
      .def_property_readonly("omega", &CircularShell::omega)
      .def_property_readonly("center_p", &CircularShell::center_p)
      .def_property_readonly("center_q", &CircularShell::center_q)
      .def_property_readonly("energy", &CircularShell::energy);

  py::enum_<Method>(m, "Method")
      .value("TANGENT", Method::kTangent)
      .value("EXACT_BESSEL", Method::kExactBessel)
      .value("QUADRATURE", Method::kQuadrature);

  py::class_<OverlapReport>(m, "OverlapReport")
      .def_readonly("positive_term", &OverlapReport::positive_term)
      .def_readonly("negative_term", &OverlapReport::negative_term)
      .def_readonly("total", &OverlapReport::total)
      .def_readonly("ratio", &OverlapReport::ratio)
      .def_readonly("method", &OverlapReport::method)
      .def_readonly("predicted_factor", &OverlapReport::predicted_factor)
      .def_readonly("normalization_constant", &OverlapReport::normalization_constant);

  m.def("overlap_exact", &overlap_exact, py::arg("shell"), py::arg("witness"));
  m.def("overlap_tangent", &overlap_tangent, py::arg("shell"), py::arg("witness"));
  m.def("overlap_quadrature",
        py::overload_cast<const CircularShell&, const CatWitness&, double>(&overlap_quadrature),
        py::arg("shell"), py::arg("witness"), py::arg("rel_tol") = 1e-10);
  m.def("log_positive_term_exact", &log_positive_term_exact, py::arg("R"), py::arg("omega"),
        py::arg("Q"), py::arg("hbar"));

  py::class_<Verdict>(m, "Verdict")
      .def_readonly("R", &Verdict::R)
      .def_readonly("omega", &Verdict::omega)
      .def_readonly("hbar", &Verdict::hbar)
      .def_readonly("Q", &Verdict::Q)
      .def_readonly("methods", &Verdict::methods)
      .def_readonly("quadrature_skipped", &Verdict::quadrature_skipped)
      .def_readonly("methods_agree", &Verdict::methods_agree)
      .def_property_readonly("primary", &Verdict::primary)
      .def_property_readonly("negativity",
                             [](const Verdict& v) { return std::string(to_string(v.negativity)); });

  m.def("evaluate_methods", &evaluate_methods, py::arg("R"), py::arg("omega"), py::arg("hbar"),
        py::arg("Q"));

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("hbar", &SweepRow::hbar)
      .def_readonly("Q", &SweepRow::Q)
      .def_readonly("positive", &SweepRow::positive)
      .def_readonly("negative", &SweepRow::negative)
      .def_readonly("total", &SweepRow::total)
      .def_readonly("ratio", &SweepRow::ratio)
      .def_readonly("predicted_factor", &SweepRow::predicted_factor);

  py::class_<SweepFit>(m, "SweepFit")
      .def_readonly("available", &SweepFit::available)
      .def_readonly("slope", &SweepFit::slope)
      .def_readonly("intercept", &SweepFit::intercept)
      .def_readonly("predicted_slope", &SweepFit::predicted_slope)
      .def_readonly("slope_ratio", &SweepFit::slope_ratio)
      .def_readonly("note", &SweepFit::note);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("rows", &SweepResult::rows)
      .def_readonly("fit", &SweepResult::fit)
      .def_property_readonly(
          "regime", [](const SweepResult& r) { return r.regime == SweepRegime::kFlat ? "flat" : "exponential"; });

  m.def(
      "hbar_sweep",
      [](const std::vector<double>& hbar_values, double K, double gamma, double R, double omega,
         unsigned workers) {
        SweepConfig c;
        c.hbar_values = hbar_values;
        c.K = K;
        c.gamma = gamma;
        c.R = R;
        c.omega = omega;
        return hbar_sweep(c, workers);
      },
      py::arg("hbar_values"), py::arg("K") = 1.0, py::arg("gamma") = 0.2, py::arg("R") = 1.0,
      py::arg("omega") = 1.0, py::arg("workers") = 0);
  m.def("descending_log_grid", &descending_log_grid, py::arg("hi"), py::arg("lo"),
        py::arg("per_decade"));

  py::class_<SeparableShellND>(m, "SeparableShellND")
      .def(py::init<double, double, std::vector<double>>(), py::arg("R"), py::arg("omega"),
           py::arg("transverse"))
      .def_property_readonly("dimension", &SeparableShellND::dimension)
      .def_property_readonly("energy", &SeparableShellND::energy);

  m.def(
      "verdict_nd",
      [](const SeparableShellND& shell, double K, double gamma, double hbar) {
        return verdict_nd(shell, K, gamma, hbar);
      },
      py::arg("shell"), py::arg("K"), py::arg("gamma"), py::arg("hbar"));

  py::class_<MonteCarloEstimate>(m, "MonteCarloEstimate")
      .def_readonly("estimate", &MonteCarloEstimate::estimate)
      .def_readonly("standard_error", &MonteCarloEstimate::standard_error)
      .def_readonly("positive", &MonteCarloEstimate::positive)
      .def_readonly("negative", &MonteCarloEstimate::negative)
      .def_readonly("samples", &MonteCarloEstimate::samples)
      .def_readonly("smearing", &MonteCarloEstimate::smearing);

  m.def(
      "overlap_nd_montecarlo",
      [](const SeparableShellND& shell, double K, double gamma, double hbar, std::size_t samples,
         std::uint64_t seed, double smearing, unsigned workers) {
        MonteCarloConfig c{samples, seed, smearing, workers};
        const CatWitnessND w{CatWitness::from_scaling(K, gamma, hbar), shell.transverse().size()};
        py::gil_scoped_release release;
        return overlap_nd_montecarlo(shell, w, c);
      },
      py::arg("shell"), py::arg("K"), py::arg("gamma"), py::arg("hbar"),
      py::arg("samples") = 1'000'000, py::arg("seed") = 1, py::arg("smearing") = 0.0,
      py::arg("workers") = 0);

  py::class_<BalazsLadderRow>(m, "BalazsLadderRow")
      .def_readonly("epsilon", &BalazsLadderRow::epsilon)
      .def_readonly("positive", &BalazsLadderRow::positive)
      .def_readonly("negative", &BalazsLadderRow::negative)
      .def_readonly("total", &BalazsLadderRow::total);

  py::class_<TangencyStudy>(m, "TangencyStudy")
      .def_readonly("rows", &TangencyStudy::rows)
      .def_readonly("negative_exponent", &TangencyStudy::negative_exponent)
      .def_readonly("positive_exponent", &TangencyStudy::positive_exponent)
      .def_readonly("crossover_rung", &TangencyStudy::crossover_rung);

  m.def("balazs_tangent_shell", &balazs_tangent_shell, py::arg("witness"), py::arg("R"),
        py::arg("omega"), py::arg("center_p") = 0.0);
  m.def("tangency_exponent", &tangency_exponent, py::arg("shell"), py::arg("witness"),
        py::arg("hbar"), py::arg("ladder"), py::arg("workers") = 0);

  m.def("selftest", []() {
    py::list out;
    for (const auto& c : run_selftest()) out.append(py::make_tuple(c.name, c.passed, c.detail));
    return out;
  });

  py::register_exception<MethodDisagreement>(m, "MethodDisagreement");
  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
}
