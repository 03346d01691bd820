#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ddopt/anneal.hpp"
#include "ddopt/commands.hpp"
#include "ddopt/config.hpp"
#include "ddopt/coupling.hpp"
#include "ddopt/ensemble.hpp"
#include "ddopt/errors.hpp"
#include "ddopt/fit.hpp"
#include "ddopt/metrics.hpp"
#include "ddopt/oracle.hpp"
#include "ddopt/sequences.hpp"
#include "ddopt/spherical.hpp"

namespace py = pybind11;
using namespace ddopt;

namespace {

SpinSequence sequence_from_signs(const std::vector<int>& signs, const Grid& grid) {
  SpinSequence seq;
  seq.grid = grid;
  seq.s.reserve(signs.size());
  for (int v : signs) seq.s.push_back(static_cast<std::int8_t>(v >= 0 ? 1 : -1));
  seq.validate();
  return seq;
}

std::vector<int> signs_of(const SpinSequence& seq) {
  return std::vector<int>(seq.s.begin(), seq.s.end());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Optimal dynamical-decoupling sequences for AC quantum sensing";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<NumericalError>(m, "NumericalError");
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError");

  py::class_<Grid>(m, "Grid")
      .def(py::init(&Grid::make), py::arg("T_us"), py::arg("dt_us"))
      .def_readonly("T", &Grid::T)
      .def_readonly("dt", &Grid::dt)
      .def_readonly("N", &Grid::N);

  py::class_<SignalComponent>(m, "SignalComponent")
      .def(py::init([](double a, double nu, double phi) {
             return SignalComponent{a, nu, phi};
           }),
           py::arg("amplitude"), py::arg("freq_mhz"), py::arg("phase_rad") = 0.0)
      .def_readwrite("amplitude", &SignalComponent::amplitude)
      .def_readwrite("freq_mhz", &SignalComponent::freq_mhz)
      .def_readwrite("phase_rad", &SignalComponent::phase_rad);

  py::class_<SignalSpec>(m, "SignalSpec")
      .def(py::init([](std::vector<SignalComponent> comps, bool normalized) {
             SignalSpec s{std::move(comps), normalized};
             s.validate();
             return s;
           }),
           py::arg("components"), py::arg("normalized") = false)
      .def_readonly("components", &SignalSpec::components)
      .def_readonly("normalized", &SignalSpec::normalized)
      .def("value", &SignalSpec::value, py::arg("t_us"));

  py::class_<NoiseSpec>(m, "NoiseSpec")
      .def_static("parametric", &NoiseSpec::parametric, py::arg("S0"), py::arg("A"),
                  py::arg("nu_L_mhz"), py::arg("sigma_nu_mhz"),
                  py::arg("omega_max_rad_us") = -1.0)
      .def_static("tabulated", &NoiseSpec::tabulated, py::arg("omega_rad_us"),
                  py::arg("S_mhz"))
      .def_static("none", &NoiseSpec::none)
      .def_readonly("omega_max", &NoiseSpec::omega_max)
      .def("value", &NoiseSpec::value, py::arg("omega_rad_us"))
      .def("folded_from_two_sided", &NoiseSpec::folded_from_two_sided);

  py::class_<CouplingMatrix>(m, "CouplingMatrix")
      .def_readonly("first_row", &CouplingMatrix::first_row)
      .def("size", &CouplingMatrix::size)
      .def("__call__", &CouplingMatrix::operator(), py::arg("i"), py::arg("j"));

  py::class_<SpinSequence>(m, "SpinSequence")
      .def(py::init(&sequence_from_signs), py::arg("signs"), py::arg("grid"))
      .def_property_readonly("signs", &signs_of)
      .def_readonly("grid", &SpinSequence::grid)
      .def("pulse_count", &SpinSequence::pulse_count);

  py::class_<PulseSequence>(m, "PulseSequence")
      .def_readonly("times_us", &PulseSequence::times_us)
      .def_readonly("T_us", &PulseSequence::T_us)
      .def_readonly("metadata", &PulseSequence::metadata);

  py::class_<Metrics>(m, "Metrics")
      .def_readonly("T", &Metrics::T)
      .def_readonly("dt", &Metrics::dt)
      .def_readonly("pulse_count", &Metrics::pulse_count)
      .def_readonly("overlap", &Metrics::overlap)
      .def_readonly("phase_per_field", &Metrics::phase_per_field)
      .def_readonly("chi", &Metrics::chi)
      .def_readonly("epsilon", &Metrics::epsilon)
      .def_readonly("eta", &Metrics::eta)
      .def_readonly("eta_sm_ratio", &Metrics::eta_sm_ratio);

  py::class_<SphericalSolution>(m, "SphericalSolution")
      .def_readonly("y", &SphericalSolution::y)
      .def_readonly("lambda_", &SphericalSolution::lambda)
      .def_readonly("D", &SphericalSolution::D)
      .def_readonly("epsilon_sm", &SphericalSolution::epsilon_sm)
      .def_readonly("eta_sm", &SphericalSolution::eta_sm)
      .def_readonly("constraint_residual", &SphericalSolution::constraint_residual)
      .def_readonly("stationarity_residual", &SphericalSolution::stationarity_residual);

  py::enum_<MoveKind>(m, "MoveKind")
      .value("unbiased", MoveKind::unbiased)
      .value("domain_wall", MoveKind::domain_wall);

  py::class_<AnnealSchedule>(m, "AnnealSchedule")
      .def(py::init<>())
      .def_readwrite("steps", &AnnealSchedule::steps)
      .def_readwrite("T0", &AnnealSchedule::T0)
      .def_readwrite("alpha", &AnnealSchedule::alpha)
      .def_readwrite("K", &AnnealSchedule::K)
      .def_readwrite("seed", &AnnealSchedule::seed)
      .def_readwrite("move_kind", &AnnealSchedule::move_kind);

  py::class_<AnnealResult>(m, "AnnealResult")
      .def_readonly("best", &AnnealResult::best)
      .def_readonly("best_epsilon", &AnnealResult::best_epsilon)
      .def_readonly("accepted", &AnnealResult::accepted)
      .def_readonly("no_moves", &AnnealResult::no_moves);

  py::class_<PopulationSample>(m, "PopulationSample")
      .def(py::init([](double b, double P, double sigma) {
             return PopulationSample{b, P, sigma};
           }),
           py::arg("b"), py::arg("P"), py::arg("sigma_P"))
      .def_readwrite("b", &PopulationSample::b)
      .def_readwrite("P", &PopulationSample::P)
      .def_readwrite("sigma_P", &PopulationSample::sigma_P);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("chi", &FitResult::chi)
      .def_readonly("phi_over_b", &FitResult::phi_over_b)
      .def_readonly("se_chi", &FitResult::se_chi)
      .def_readonly("se_phi_over_b", &FitResult::se_phi_over_b)
      .def_readonly("eta", &FitResult::eta)
      .def_readonly("se_eta", &FitResult::se_eta);

  m.def("evaluate_signal", &evaluate_signal, py::arg("spec"), py::arg("t_us"));
  m.def("build_field_vector", &build_field_vector, py::arg("spec"), py::arg("grid"));
  m.def("evaluate_nsd", &evaluate_nsd, py::arg("spec"), py::arg("omega_rad_us"));
  m.def("build_coupling_matrix", &build_coupling_matrix, py::arg("noise"),
        py::arg("grid"), py::arg("rel_tol") = 1e-8);

  m.def("cp_sequence", &cp_sequence, py::arg("n_pulses"), py::arg("tau_us"),
        py::arg("grid"));
  m.def("gcp_sequence", &gcp_sequence, py::arg("signal"), py::arg("grid"));
  m.def("extract_pulse_times",
        [](const SpinSequence& seq) { return extract_pulses(seq).times_us; },
        py::arg("sequence"));

  m.def("field_overlap", &field_overlap);
  m.def("phase", &phase, py::arg("sequence"), py::arg("h"), py::arg("gamma"),
        py::arg("b"));
  m.def("decoherence", &decoherence, py::arg("sequence"), py::arg("J"));
  m.def("chi_continuous", &chi_continuous, py::arg("sequence"), py::arg("noise"),
        py::arg("rel_tol") = 1e-6);
  m.def("filter_function", &filter_function, py::arg("sequence"), py::arg("omega"));
  m.def("log_sensitivity", &log_sensitivity);
  m.def("sensitivity", &sensitivity, py::arg("chi"), py::arg("phase_per_field"),
        py::arg("T_us"));
  m.def("population", &population, py::arg("chi"), py::arg("phi"));
  m.def("fisher_information", &fisher_information, py::arg("phi"), py::arg("chi"),
        py::arg("b"), py::arg("n_meas") = 1, py::arg("slope_detection") = true);
  m.def("compute_metrics", &compute_metrics, py::arg("sequence"), py::arg("h"),
        py::arg("J"), py::arg("gamma") = kDefaultGamma,
        py::arg("eta_sm") = std::numeric_limits<double>::quiet_NaN());

  py::enum_<DiagMode>(m, "DiagMode")
      .value("exact", DiagMode::exact)
      .value("circulant", DiagMode::circulant);

  py::class_<Eigenbasis>(m, "Eigenbasis")
      .def_property_readonly("eigenvalues", &Eigenbasis::eigenvalues)
      .def_property_readonly("mode", &Eigenbasis::mode)
      .def("min_eigenvalue", &Eigenbasis::min_eigenvalue)
      .def("size", &Eigenbasis::size);
  m.def("diagonalize", &diagonalize, py::arg("J"), py::arg("mode") = DiagMode::exact);
  m.def("epsilon_sm", &epsilon_sm, py::arg("lambda_"), py::arg("basis"), py::arg("h"));

  m.def("parseval_integral", &parseval_integral, py::arg("sequence"),
        py::arg("rel_tol") = 1e-9);

  m.def("solve_spherical",
        [](const std::vector<double>& h, const CouplingMatrix& J, const Grid& grid,
           double gamma, DiagMode mode) {
          return solve_spherical(h, J, grid, gamma, mode);
        },
        py::arg("h"), py::arg("J"), py::arg("grid"), py::arg("gamma") = kDefaultGamma,
        py::arg("mode") = DiagMode::exact);
  m.def("project_to_hypercube", &project_to_hypercube, py::arg("solution"),
        py::arg("grid"));

  m.def("anneal_unbiased", &anneal_unbiased, py::arg("h"), py::arg("J"),
        py::arg("grid"), py::arg("schedule"));
  m.def("anneal_domain_wall", &anneal_domain_wall, py::arg("seed_state"), py::arg("h"),
        py::arg("J"), py::arg("schedule"));

  m.def("naive_energy", &naive_energy, py::arg("sequence"), py::arg("h"), py::arg("J"),
        py::arg("K") = 0.0);
  m.def("brute_force_min",
        [](const std::vector<double>& h, const CouplingMatrix& J, const Grid& grid,
           double K) {
          const auto r = brute_force_min(h, J, grid, K);
          return py::make_tuple(signs_of(r.best), r.best_epsilon, r.evaluated_count);
        },
        py::arg("h"), py::arg("J"), py::arg("grid"), py::arg("K") = 0.0);

  m.def("fit_population_curve", &fit_population_curve, py::arg("samples"),
        py::arg("T_us"));

  m.attr("DEFAULT_GAMMA") = kDefaultGamma;
}
