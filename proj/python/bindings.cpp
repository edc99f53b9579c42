#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "liephase/adiabatic_oracle.hpp"
#include "liephase/berry_phase.hpp"
#include "liephase/coset_geometry.hpp"
#include "liephase/job.hpp"
#include "liephase/lie_core.hpp"

namespace py = pybind11;
using namespace liephase;

namespace {

RealVector weight_from_label(const CartanWeylBasis& basis, const std::vector<int>& label) {
  return dominant_weight(IrrepLabel(label), basis);
}

ClosedCurve curve_from_table(
    int n_coords, const std::map<int, std::vector<std::pair<int, Complex>>>& table) {
  ClosedCurve curve(n_coords);
  for (const auto& [coord, series] : table)
    for (const auto& [m, c] : series) curve.set_coefficient(coord, m, c);
  return curve;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Berry connections, curvatures and geometric phases for su(n) "
            "adiabatic evolutions, driven by the fundamental Kahler potentials "
            "of the flag manifold G/H";

  py::register_exception<ValidationError>(m, "JobValidationError", PyExc_ValueError);
  py::register_exception<ChartError>(m, "ChartError", PyExc_RuntimeError);
  py::register_exception<SingularDecomposition>(m, "SingularDecompositionError",
                                                PyExc_RuntimeError);
  py::register_exception<NotUnitary>(m, "NotUnitaryError", PyExc_RuntimeError);
  py::register_exception<NonConvergence>(m, "NonConvergenceError", PyExc_RuntimeError);
  py::register_exception<AdiabaticityLost>(m, "AdiabaticityLostError", PyExc_RuntimeError);

  py::class_<CartanWeylBasis>(m, "CartanWeylBasis")
      .def_readonly("n", &CartanWeylBasis::n)
      .def_readonly("rank", &CartanWeylBasis::rank)
      .def_property_readonly("n_pos", &CartanWeylBasis::n_pos)
      .def_readonly("cartan", &CartanWeylBasis::cartan)
      .def_readonly("raising", &CartanWeylBasis::raising)
      .def_readonly("lowering", &CartanWeylBasis::lowering)
      .def_readonly("roots", &CartanWeylBasis::roots)
      .def_readonly("primitive_roots", &CartanWeylBasis::primitive_roots)
      .def_readonly("fundamental_weights", &CartanWeylBasis::fundamental_wts);

  m.def("su_basis", &su_basis, py::arg("n"));
  m.def("commutator", &commutator);
  m.def("trace_form", &trace_form);
  m.def("matrix_exp", &matrix_exp);
  m.def("roots_of", py::overload_cast<const CartanWeylBasis&, double>(&roots_of),
        py::arg("basis"), py::arg("tol") = 1e-10);
  m.def("fundamental_weights", &fundamental_weights, py::arg("primitive_roots"));
  m.def("dominant_weight", &weight_from_label, py::arg("basis"), py::arg("label"));
  m.def("fundamental_label",
        [](const CartanWeylBasis& b) { return fundamental_label(b).coeffs(); });
  m.def("projection_matrices", &projection_matrices);
  m.def("projected_det", &projected_det, py::arg("m"), py::arg("eta"));

  py::class_<KahlerPotentials>(m, "KahlerPotentials")
      .def_readonly("K", &KahlerPotentials::K)
      .def_readonly("kappa", &KahlerPotentials::kappa);

  py::class_<MackeyFactors>(m, "MackeyFactors")
      .def_readonly("u", &MackeyFactors::u)
      .def_readonly("v_dag", &MackeyFactors::v_dag)
      .def_readonly("k", &MackeyFactors::k)
      .def_readonly("kappa", &MackeyFactors::kappa);

  m.def("mackey_decompose", &mackey_decompose, py::arg("g1"), py::arg("basis"));
  m.def("nilpotent_rep", &nilpotent_rep, py::arg("z"), py::arg("basis"));

  py::class_<CosetChart>(m, "CosetChart")
      .def(py::init([](int n) { return CosetChart::su(n); }), py::arg("n"))
      .def_property_readonly("basis", &CosetChart::basis,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("projections", &CosetChart::projections)
      .def_property_readonly("kappa_coefficients", &CosetChart::kappa_coefficients)
      .def_property_readonly("n_pos", &CosetChart::n_pos)
      .def_property_readonly("rank", &CosetChart::rank)
      .def("nilpotent", &CosetChart::nilpotent, py::arg("z"))
      .def("potentials", &CosetChart::potentials, py::arg("z"))
      .def("kappa", &CosetChart::kappa, py::arg("z"))
      .def("representative", &CosetChart::representative, py::arg("z"))
      .def("act", &CosetChart::act, py::arg("g"), py::arg("z"))
      .def("potential_gradient", &CosetChart::potential_gradient, py::arg("z"))
      .def("potential_mixed", &CosetChart::potential_mixed, py::arg("z"));

  py::class_<ClosedCurve>(m, "ClosedCurve")
      .def(py::init<int>(), py::arg("n_coords"))
      .def(py::init(&curve_from_table), py::arg("n_coords"), py::arg("coefficients"))
      .def("set_coefficient", &ClosedCurve::set_coefficient, py::arg("coord"), py::arg("m"),
           py::arg("c"))
      .def("point", &ClosedCurve::point, py::arg("s"))
      .def("velocity", &ClosedCurve::velocity, py::arg("s"))
      .def_property_readonly("n_coords", &ClosedCurve::n_coords)
      .def("reversed", &ClosedCurve::reversed)
      .def_static("circle", &ClosedCurve::circle, py::arg("n_coords"), py::arg("coord"),
                  py::arg("radius"), py::arg("center") = Complex(0, 0));

  py::class_<QuadratureOptions>(m, "QuadratureOptions")
      .def(py::init<>())
      .def_readwrite("tol", &QuadratureOptions::tol)
      .def_readwrite("max_panels", &QuadratureOptions::max_panels)
      .def_readwrite("nodes_per_panel", &QuadratureOptions::nodes_per_panel);

  py::class_<ConnectionSample>(m, "ConnectionSample")
      .def_readonly("A_s", &ConnectionSample::A_s)
      .def_readonly("A_hol", &ConnectionSample::A_hol)
      .def_readonly("A_antihol", &ConnectionSample::A_antihol);

  py::class_<CurvatureSample>(m, "CurvatureSample")
      .def_readonly("F", &CurvatureSample::F)
      .def_readonly("K_l", &CurvatureSample::K_l);

  py::class_<GaugeCheckReport>(m, "GaugeCheckReport")
      .def_readonly("holomorphic_residual", &GaugeCheckReport::holomorphic_residual)
      .def_readonly("curvature_residual", &GaugeCheckReport::curvature_residual)
      .def_readonly("chart_exit", &GaugeCheckReport::chart_exit);

  m.def("k_l_potential", &k_l_potential, py::arg("z"), py::arg("chart"), py::arg("weight"));
  m.def("connection", &connection, py::arg("z"), py::arg("zdot"), py::arg("chart"),
        py::arg("weight"));
  m.def("curvature", &curvature, py::arg("z"), py::arg("chart"), py::arg("weight"));
  m.def("phase_line_integral", &phase_line_integral, py::arg("curve"), py::arg("chart"),
        py::arg("weight"), py::arg("quadrature") = QuadratureOptions{});
  m.def("curvature_plane_flux", &curvature_plane_flux, py::arg("chart"), py::arg("weight"),
        py::arg("coord"), py::arg("fixed"), py::arg("radial_nodes") = 64,
        py::arg("angular_nodes") = 32);
  m.def("gauge_check", &gauge_check, py::arg("g"), py::arg("z"), py::arg("chart"),
        py::arg("weight"));

  py::class_<EvolveOptions>(m, "EvolveOptions")
      .def(py::init<>())
      .def_readwrite("steps_per_tau", &EvolveOptions::steps_per_tau)
      .def_readwrite("min_steps", &EvolveOptions::min_steps)
      .def_readwrite("eps_adb", &EvolveOptions::eps_adb)
      .def_readwrite("min_gap", &EvolveOptions::min_gap);

  py::class_<EvolutionResult>(m, "EvolutionResult")
      .def_readonly("tau", &EvolutionResult::tau)
      .def_readonly("total_phase", &EvolutionResult::total_phase)
      .def_readonly("dynamical_phase", &EvolutionResult::dynamical_phase)
      .def_readonly("geometric_phase", &EvolutionResult::geometric_phase)
      .def_readonly("final_overlap_mag", &EvolutionResult::final_overlap_mag)
      .def_readonly("max_norm_drift", &EvolutionResult::max_norm_drift)
      .def_readonly("adiabatic_valid", &EvolutionResult::adiabatic_valid);

  py::class_<TauSweepRow>(m, "TauSweepRow")
      .def_readonly("tau", &TauSweepRow::tau)
      .def_readonly("geometric_phase", &TauSweepRow::geometric_phase)
      .def_readonly("overlap_mag", &TauSweepRow::overlap_mag)
      .def_readonly("valid", &TauSweepRow::valid)
      .def_readonly("error_vs_reference", &TauSweepRow::error_vs_reference)
      .def_readonly("note", &TauSweepRow::note);

  py::class_<TauSweepTable>(m, "TauSweepTable")
      .def_readonly("rows", &TauSweepTable::rows)
      .def("slope_last_decade", &TauSweepTable::slope_last_decade);

  py::class_<HamiltonianPath>(m, "HamiltonianPath")
      .def(py::init([](ClosedCurve curve, RealVector beta) {
             return HamiltonianPath{std::move(curve), std::move(beta)};
           }),
           py::arg("curve"), py::arg("beta"))
      .def_readonly("curve", &HamiltonianPath::curve)
      .def_readonly("beta", &HamiltonianPath::beta);

  m.def("default_beta", &default_beta, py::arg("basis"));
  m.def("cartan_element", &cartan_element, py::arg("beta"), py::arg("basis"));
  m.def("hamiltonian_at", &hamiltonian_at, py::arg("path"), py::arg("chart"), py::arg("s"));
  m.def("q_vector_direct", &q_vector_direct, py::arg("curve"), py::arg("chart"),
        py::arg("quadrature") = QuadratureOptions{}, py::arg("ds") = 1e-6);
  m.def("dominant_eigenvector_index", &dominant_eigenvector_index, py::arg("basis"));
  m.def("evolve", &evolve, py::arg("path"), py::arg("chart"), py::arg("tau"),
        py::arg("init_index"), py::arg("options") = EvolveOptions{});
  m.def("tau_sweep", &tau_sweep, py::arg("path"), py::arg("chart"), py::arg("taus"),
        py::arg("reference_omega"), py::arg("init_index"),
        py::arg("options") = EvolveOptions{});

  py::class_<WirtingerDerivatives>(m, "WirtingerDerivatives")
      .def_readonly("holomorphic", &WirtingerDerivatives::holomorphic)
      .def_readonly("antiholomorphic", &WirtingerDerivatives::antiholomorphic)
      .def_readonly("mixed", &WirtingerDerivatives::mixed);

  m.def("wirtinger_derivatives", &wirtinger_derivatives, py::arg("f"), py::arg("z"),
        py::arg("order"), py::arg("step") = 0.0);

  m.def("wrap_angle", &wrap_angle, py::arg("x"));
  m.def("angle_distance", &angle_distance, py::arg("a"), py::arg("b"));

  // job-file interface, JSON strings in and out
  m.def(
      "run_job_json",
      [](const std::string& text, bool with_ode) {
        JobSpec job = parse_job(text);
        PhaseReport report = run_job(job, with_ode);
        return report_to_json(report, job);
      },
      py::arg("job_text"), py::arg("with_ode") = true);
  m.def("serialize_job_json",
        [](const std::string& text) { return serialize_job(parse_job(text)); },
        py::arg("job_text"));
  m.def(
      "curvature_grid_csv",
      [](const std::string& text) { return emit_curvature_grid(parse_job(text)); },
      py::arg("job_text"));
  m.def(
      "decompose_json",
      [](const std::string& text, int samples) {
        return decompose_along_curve(parse_job(text), samples);
      },
      py::arg("job_text"), py::arg("samples") = 8);
}
