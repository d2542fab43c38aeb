#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "sivnuc/config.hpp"
#include "sivnuc/dynamics.hpp"
#include "sivnuc/gates.hpp"
#include "sivnuc/hamiltonian.hpp"
#include "sivnuc/spectrum.hpp"
#include "sivnuc/sweep.hpp"
#include "sivnuc/synthesis.hpp"

namespace py = pybind11;
using namespace sivnuc;

namespace {

TransitionKind resolve_transition(const SystemConfig& config, const std::optional<std::string>& transition) {
  return transition ? parse_transition_kind(*transition) : default_transition(config);
}

SequenceModel model_for(const SystemConfig& config, const std::optional<std::string>& transition) {
  return build_sequence_model(config, resolve_transition(config, transition));
}

PulseOrder parse_order(const std::string& order) {
  if (order == "pulse-first") return PulseOrder::PulseFirst;
  if (order == "delay-first") return PulseOrder::DelayFirst;
  throw ConfigError("order must be 'pulse-first' or 'delay-first', got '" + order + "'");
}

GateTarget gate_from(const py::object& gate) {
  if (py::isinstance<py::str>(gate)) return standard_gate(gate.cast<std::string>());
  return custom_gate("custom", gate.cast<Mat2>());
}

py::dict doublet_dict(const Doublet& d) {
  py::dict out;
  out["low"] = d.low;
  out["high"] = d.high;
  out["center_MHz"] = d.center;
  out["splitting_MHz"] = d.splitting;
  out["electron_spin"] = d.electron_spin;
  out["orbital"] = d.orbital;
  return out;
}

py::dict report_dict(const VerificationReport& r) {
  py::dict out;
  out["labels"] = r.labels;
  out["model_fidelities"] = r.model_fidelities;
  out["oracle_fidelities"] = r.oracle_fidelities;
  out["max_gap"] = r.max_gap;
  out["oracle_min_pair"] = r.oracle_min_pair;
  out["gap_flag"] = r.gap_flag;
  out["below_floor"] = r.below_floor;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SiV nuclear-spin indirect control: spectra, dynamics and gate synthesis";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  py::register_exception<AmbiguityError>(m, "AmbiguityError", numerical.ptr());

  py::class_<PhysicalConstants>(m, "PhysicalConstants")
      .def(py::init<>())
      .def_readwrite("gamma_e", &PhysicalConstants::gamma_e)
      .def_readwrite("gamma_n", &PhysicalConstants::gamma_n)
      .def_readwrite("A_par", &PhysicalConstants::A_par)
      .def_readwrite("A_perp", &PhysicalConstants::A_perp)
      .def_readwrite("q", &PhysicalConstants::q)
      .def_readwrite("gamma_L", &PhysicalConstants::gamma_L)
      .def_readwrite("lambda_SO", &PhysicalConstants::lambda_SO);

  py::class_<StrainParams>(m, "StrainParams")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("alpha"), py::arg("beta"))
      .def_readwrite("alpha", &StrainParams::alpha)
      .def_readwrite("beta", &StrainParams::beta);

  py::class_<FieldSetPoint>(m, "FieldSetPoint")
      .def(py::init<>())
      .def(py::init<double, double, double>(), py::arg("magnitude_T"), py::arg("polar_deg"),
           py::arg("azimuth_deg") = 0.0)
      .def_readwrite("magnitude_T", &FieldSetPoint::magnitude_T)
      .def_readwrite("polar_deg", &FieldSetPoint::polar_deg)
      .def_readwrite("azimuth_deg", &FieldSetPoint::azimuth_deg)
      .def("cartesian", &FieldSetPoint::cartesian);

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def(py::init([](double magnitude_T, double polar_deg, double azimuth_deg, double alpha, double beta) {
             SystemConfig c;
             c.field = {magnitude_T, polar_deg, azimuth_deg};
             c.strain = {alpha, beta};
             c.validate();
             return c;
           }),
           py::arg("B_mag_T") = 0.0, py::arg("theta_deg") = 0.0, py::arg("phi_deg") = 0.0, py::arg("alpha") = 0.0,
           py::arg("beta") = 0.0)
      .def_readwrite("constants", &SystemConfig::constants)
      .def_readwrite("strain", &SystemConfig::strain)
      .def_readwrite("field", &SystemConfig::field)
      .def("with_field", &SystemConfig::with_field, py::arg("magnitude_T"), py::arg("polar_deg"),
           py::arg("azimuth_deg") = 0.0)
      .def("with_strain", &SystemConfig::with_strain, py::arg("alpha"), py::arg("beta"))
      .def("validate", &SystemConfig::validate)
      .def("__repr__", &format_config);

  m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
  m.def("load_config", [](const std::string& path) { return load_config(path); }, py::arg("path"));
  m.def("format_config", &format_config, py::arg("config"));
  m.def("setpoint", [](const std::string& name) {
    const auto sp = setpoint(name);
    return py::make_tuple(sp.config, to_string(sp.transition));
  }, py::arg("name"), "Named operating point: returns (config, transition).");

  m.def("hamiltonian", [](const SystemConfig& c) { return build_hamiltonian(c).matrix; }, py::arg("config"),
        "8x8 Hamiltonian in MHz, basis index 4*orbital + 2*electron + nucleus.");
  m.def("diagonalize", [](const Mat8& h) {
    const auto s = diagonalize(h);
    return py::make_tuple(s.energies, s.vectors);
  }, py::arg("matrix"), "Ascending eigenvalues and column eigenvectors with a fixed phase gauge.");

  m.def("analyze", [](const SystemConfig& c, const std::optional<std::string>& transition) {
    const auto op = analyze(c, resolve_transition(c, transition));
    const auto& g = op.geometry;
    py::dict out;
    out["energies_MHz"] = op.spectrum.energies;
    out["transition"] = op.transition.label;
    out["transition_MHz"] = op.transition.frequency_MHz;
    out["lower"] = doublet_dict(op.transition.lower_doublet);
    out["upper"] = doublet_dict(op.transition.upper_doublet);
    out["B_alpha_T"] = g.B_alpha;
    out["B_beta_T"] = g.B_beta;
    out["hyperfine_alpha_T"] = g.hyperfine_alpha;
    out["hyperfine_beta_T"] = g.hyperfine_beta;
    out["delta_theta_deg"] = g.delta_theta_deg;
    out["f_alpha_MHz"] = g.f_alpha;
    out["f_beta_MHz"] = g.f_beta;
    out["period_alpha_ns"] = g.period_alpha_ns;
    out["period_beta_ns"] = g.period_beta_ns;
    return out;
  }, py::arg("config"), py::arg("transition") = py::none(),
     "Spectrum, transition and nuclear quantization geometry. transition: 'omega1', 'omega2' or None.");
  m.def("delta_theta", &delta_theta, py::arg("a"), py::arg("b"));

  m.def("sweep_delta_theta", [](const SystemConfig& base, const std::vector<double>& magnitudes_T,
                                const std::vector<double>& polar_deg, double azimuth_deg, unsigned threads) {
    const FieldGrid grid{magnitudes_T, polar_deg, azimuth_deg};
    SweepOptions o;
    o.threads = threads;
    py::list rows;
    for (const auto& r : sweep_delta_theta(base, grid, o))
      rows.append(py::make_tuple(r.B_mag_T, r.theta_deg, r.delta_theta_deg, r.dev_orthogonal_deg, r.status));
    return rows;
  }, py::arg("config"), py::arg("magnitudes_T"), py::arg("polar_deg"), py::arg("azimuth_deg") = 0.0,
     py::arg("threads") = 0, "Rows (B_mag_T, theta_deg, delta_theta_deg, dev_orthogonal_deg, status).");
  m.def("sweep_precession", [](const SystemConfig& base, const std::vector<double>& magnitudes_T,
                               const std::vector<double>& polar_deg, double azimuth_deg, unsigned threads) {
    const FieldGrid grid{magnitudes_T, polar_deg, azimuth_deg};
    SweepOptions o;
    o.threads = threads;
    py::list rows;
    for (const auto& r : sweep_precession(base, grid, o))
      rows.append(py::make_tuple(r.B_mag_T, r.theta_deg, r.f_alpha_MHz, r.f_beta_MHz, r.period_alpha_ns,
                                 r.period_beta_ns, r.status));
    return rows;
  }, py::arg("config"), py::arg("magnitudes_T"), py::arg("polar_deg"), py::arg("azimuth_deg") = 0.0,
     py::arg("threads") = 0,
     "Rows (B_mag_T, theta_deg, f_alpha_MHz, f_beta_MHz, period_alpha_ns, period_beta_ns, status).");

  m.def("standard_gate", [](const std::string& name) { return standard_gate(name).matrix; }, py::arg("name"));
  m.def("standard_gate_names", &standard_gate_names);
  m.def("gate_fidelity", &gate_fidelity, py::arg("target"), py::arg("u"));
  m.def("pad_tau4", &pad_tau4, py::arg("gate_ns"), py::arg("f_rf_MHz"));
  m.def("propagator", [](const Mat8& h, double t_ns) { return propagator(h, t_ns); }, py::arg("matrix"),
        py::arg("t_ns"));
  m.def("two_level_propagator", [](const SystemConfig& c, const Delays& taus,
                                   const std::optional<std::string>& transition, const std::string& order) {
    return two_level_propagator(model_for(c, transition), taus, parse_order(order));
  }, py::arg("config"), py::arg("taus"), py::arg("transition") = py::none(), py::arg("order") = "pulse-first",
     "Lab-frame nuclear propagator of a four-pulse sequence, in nuclear-frame coordinates.");
  m.def("rotating_gate", [](const SystemConfig& c, const Delays& taus, const std::optional<std::string>& transition,
                            const std::string& order) {
    return rotating_gate(model_for(c, transition), taus, parse_order(order));
  }, py::arg("config"), py::arg("taus"), py::arg("transition") = py::none(), py::arg("order") = "pulse-first");

  m.def("synthesize", [](const py::object& gate, const SystemConfig& c, const std::optional<std::string>& transition,
                         std::uint64_t seed, std::size_t max_evaluations, double fidelity_floor,
                         std::optional<double> tau_max_ns, double time_weight, int restarts, const std::string& order) {
    const auto target = gate_from(gate);
    const auto model = model_for(c, transition);
    SynthesisOptions o;
    o.seed = seed;
    o.max_evaluations = max_evaluations;
    o.fidelity_floor = fidelity_floor;
    o.tau_max_ns = tau_max_ns;
    o.time_weight = time_weight;
    o.restarts = restarts;
    o.order = parse_order(order);
    SynthesisResult r;
    {
      py::gil_scoped_release release;
      r = synthesize(target, model, o);
    }
    py::dict out;
    out["gate"] = r.gate;
    out["taus_ns"] = r.taus;
    out["total_ns"] = r.total_ns;
    out["pair_fidelities"] = r.pair_fidelities;
    out["gate_fidelity"] = r.gate_fidelity;
    out["oracle_fidelity"] = r.oracle_fidelity;
    out["seed"] = r.seed;
    out["evaluations"] = r.evaluations;
    out["converged"] = r.converged;
    out["f_rf_MHz"] = model.f_rf();
    out["verification"] = report_dict(r.verification);
    return out;
  }, py::arg("gate"), py::arg("config"), py::arg("transition") = py::none(), py::arg("seed") = 0,
     py::arg("max_evaluations") = SynthesisOptions{}.max_evaluations,
     py::arg("fidelity_floor") = SynthesisOptions{}.fidelity_floor, py::arg("tau_max_ns") = py::none(),
     py::arg("time_weight") = SynthesisOptions{}.time_weight, py::arg("restarts") = SynthesisOptions{}.restarts,
     py::arg("order") = "pulse-first",
     "Searches four delays realising `gate` (a standard name or a 2x2 unitary).");
  m.def("verify", [](const Delays& taus, const py::object& gate, const SystemConfig& c,
                     const std::optional<std::string>& transition, double fidelity_floor, const std::string& order) {
    return report_dict(verify(taus, gate_from(gate), model_for(c, transition), fidelity_floor, parse_order(order)));
  }, py::arg("taus"), py::arg("gate"), py::arg("config"), py::arg("transition") = py::none(),
     py::arg("fidelity_floor") = 0.98, py::arg("order") = "pulse-first",
     "Replays the delays in the full 8-dimensional model and compares with the two-level prediction.");

  m.attr("__version__") = SIVNUC_VERSION;
}
