// sivnuc: command-line front end for spectra, sweeps and gate synthesis.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sivnuc/config.hpp"
#include "sivnuc/csv.hpp"
#include "sivnuc/dynamics.hpp"
#include "sivnuc/gates.hpp"
#include "sivnuc/hamiltonian.hpp"
#include "sivnuc/parallel.hpp"
#include "sivnuc/spectrum.hpp"
#include "sivnuc/sweep.hpp"
#include "sivnuc/synthesis.hpp"

namespace {

using namespace sivnuc;
using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kUsage = 2, kInfeasible = 3, kNumerical = 4 };

struct Common {
  std::string config_path;
  std::string strain;
  std::optional<double> bmag;
  std::optional<double> theta;
  std::optional<double> phi;
  std::uint64_t seed = 0;
  std::string out;
  std::string setpoint;
  std::string transition;
  unsigned threads = 0;
};

struct GridFlags {
  double bmin = 0.0;
  double bmax = 7.0;
  int bsteps = 141;
  double theta_min = 0.0;
  double theta_max = 90.0;
  int theta_steps = 91;
};

struct SynthFlags {
  std::string gate;
  std::string trajectory;
  std::size_t budget = SynthesisOptions{}.max_evaluations;
  double floor = SynthesisOptions{}.fidelity_floor;
  std::optional<double> tau_max;
  double time_weight = SynthesisOptions{}.time_weight;
  int restarts = SynthesisOptions{}.restarts;
  std::string order = "pulse-first";
};

// "150GHz", "150 GHz", "150000MHz" and plain "150000" (MHz) are accepted.
double parse_strain(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  double scale = 1.0;
  auto strip = [&](const std::string& suffix, double factor) {
    if (s.size() > suffix.size()) {
      std::string tail = s.substr(s.size() - suffix.size());
      std::transform(tail.begin(), tail.end(), tail.begin(), [](unsigned char c) { return std::tolower(c); });
      if (tail == suffix) {
        s.resize(s.size() - suffix.size());
        scale = factor;
        return true;
      }
    }
    return false;
  };
  if (!strip("ghz", 1000.0)) strip("mhz", 1.0);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("cannot parse strain '" + text + "' (expected e.g. 150GHz or 150000)");
  return value * scale;
}

PulseOrder parse_order(const std::string& text) {
  if (text == "pulse-first") return PulseOrder::PulseFirst;
  if (text == "delay-first") return PulseOrder::DelayFirst;
  throw ConfigError("unknown pulse order '" + text + "' (expected pulse-first or delay-first)");
}

std::string to_string(PulseOrder order) {
  return order == PulseOrder::PulseFirst ? "pulse-first" : "delay-first";
}

struct Resolved {
  SystemConfig config;
  TransitionKind transition = TransitionKind::SpinOrbitSeparated;
  std::string setpoint;  // empty when none was used
};

// Precedence: set-point alias (or config file), then individual flags.
Resolved resolve(const Common& c, const std::string& default_setpoint = "") {
  Resolved r;
  SystemConfig base;
  if (!c.config_path.empty()) base = load_config(c.config_path);

  std::string name = c.setpoint;
  if (name.empty() && c.config_path.empty() && !c.bmag && c.strain.empty()) name = default_setpoint;
  std::optional<TransitionKind> kind;
  if (!name.empty()) {
    const SetPoint sp = setpoint(name, base.constants);
    base = sp.config;
    kind = sp.transition;
    r.setpoint = sp.name;
  }
  if (!c.strain.empty()) {
    const double s = parse_strain(c.strain);
    base = base.with_strain(s, s);
  }
  if (c.bmag) base.field.magnitude_T = *c.bmag;
  if (c.theta) base.field.polar_deg = *c.theta;
  if (c.phi) base.field.azimuth_deg = *c.phi;
  base.validate();

  // An explicit strain or field override can change which transition fits.
  if (!c.transition.empty()) {
    kind = parse_transition_kind(c.transition);
  } else if (!kind || !c.strain.empty()) {
    kind = default_transition(base);
  }
  r.config = base;
  r.transition = *kind;
  return r;
}

json config_json(const SystemConfig& cfg) {
  json j;
  const auto& k = cfg.constants;
  j["gamma_e"] = k.gamma_e;
  j["gamma_n"] = k.gamma_n;
  j["A_par"] = k.A_par;
  j["A_perp"] = k.A_perp;
  j["q"] = k.q;
  j["gamma_L"] = k.gamma_L;
  j["lambda_SO"] = k.lambda_SO;
  j["strain_alpha"] = cfg.strain.alpha;
  j["strain_beta"] = cfg.strain.beta;
  j["B_mag_T"] = cfg.field.magnitude_T;
  j["theta_deg"] = cfg.field.polar_deg;
  j["phi_deg"] = cfg.field.azimuth_deg;
  return j;
}

// Manifest next to the primary output. Wall-clock time goes into a separate
// file so the manifest itself stays byte-identical across reruns.
void write_manifest(const std::string& out, const std::string& command, const std::vector<std::string>& args,
                    const Resolved* resolved, const json& options, const std::vector<std::string>& outputs,
                    std::uint64_t seed, double seconds) {
  json m;
  m["tool"] = "sivnuc";
  m["version"] = SIVNUC_VERSION;
  m["command"] = command;
  m["argv"] = args;
  if (resolved) {
    m["setpoint"] = resolved->setpoint;
    m["transition"] = sivnuc::to_string(resolved->transition);
    m["config"] = config_json(resolved->config);
  }
  m["options"] = options;
  m["outputs"] = outputs;
  m["seed"] = seed;
  std::ofstream f(out + ".manifest.json", std::ios::binary);
  if (!f) throw ConfigError("cannot write " + out + ".manifest.json");
  f << m.dump(2) << '\n';

  json t;
  t["wall_clock_s"] = seconds;
  std::ofstream ft(out + ".timing.json", std::ios::binary);
  ft << t.dump(2) << '\n';
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + path + "'");
  return f;
}

std::string strain_case(const SystemConfig& cfg) { return cfg.strain.is_zero() ? "unstrained" : "strained"; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- info

int cmd_info(const Common& c, const std::vector<std::string>& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const Resolved r = resolve(c);
  const auto h = build_hamiltonian(r.config);
  const auto spectrum = diagonalize(h.matrix);
  const auto& k = r.config.constants;

  std::ostringstream o;
  o << "constants: gamma_e=" << k.gamma_e << " MHz/T  gamma_n=" << k.gamma_n << " MHz/T  A_par=" << k.A_par
    << " MHz  A_perp=" << k.A_perp << " MHz  q=" << k.q << "  gamma_L=" << k.gamma_L
    << " MHz/T  lambda_SO=" << k.lambda_SO << " MHz\n";
  o << "strain: alpha=" << r.config.strain.alpha << " MHz  beta=" << r.config.strain.beta << " MHz\n";
  o << "field: |B|=" << format_number(r.config.field.magnitude_T) << " T  theta=" << r.config.field.polar_deg
    << " deg  phi=" << r.config.field.azimuth_deg << " deg";
  if (!r.setpoint.empty()) o << "  (set-point " << r.setpoint << ")";
  o << "\n\neigenvalues (MHz):\n";
  for (int i = 0; i < kDim; ++i) {
    char line[160];
    std::snprintf(line, sizeof line, "  %d  %16.6f   <Lz>=%+.3f  <Sz>=%+.3f  <Iz>=%+.3f\n", i, spectrum.energies[i],
                  spectrum.orbital[i], spectrum.electron_spin[i].z(), spectrum.nuclear_spin[i].z());
    o << line;
  }
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < 4; ++i) lo += spectrum.energies[i] / 4.0;
  for (int i = 4; i < 8; ++i) hi += spectrum.energies[i] / 4.0;
  o << "manifold splitting (upper four - lower four): " << format_number(hi - lo) << " MHz\n";

  json summary;
  summary["eigenvalues_MHz"] = spectrum.energies;
  summary["manifold_splitting_MHz"] = hi - lo;

  for (auto kind : {TransitionKind::SpinOrbitSeparated, TransitionKind::MixedOrbitalSpin}) {
    const std::string name = sivnuc::to_string(kind);
    try {
      const auto pair = select_transition(spectrum, kind);
      o << name << ": doublets " << pair.lower << " -> " << pair.upper << "  " << format_number(pair.frequency_MHz)
        << " MHz\n";
      summary[name + "_MHz"] = pair.frequency_MHz;
    } catch (const Error& e) {
      o << name << ": n/a (" << e.what() << ")\n";
    }
  }

  o << "\ntransition in use: " << sivnuc::to_string(r.transition) << '\n';
  try {
    const auto point = analyze(r.config, r.transition);
    const auto& g = point.geometry;
    o << "delta_theta: " << format_number(g.delta_theta_deg) << " deg\n";
    o << "f_alpha: " << format_number(g.f_alpha) << " MHz (period " << format_number(g.period_alpha_ns) << " ns)\n";
    o << "f_beta:  " << format_number(g.f_beta) << " MHz (period " << format_number(g.period_beta_ns) << " ns)\n";
    o << "|B_hf| alpha: " << format_number(g.hyperfine_alpha.norm()) << " T  beta: "
      << format_number(g.hyperfine_beta.norm()) << " T\n";
    summary["delta_theta_deg"] = g.delta_theta_deg;
    summary["f_alpha_MHz"] = g.f_alpha;
    summary["f_beta_MHz"] = g.f_beta;
    summary["B_hf_alpha_T"] = g.hyperfine_alpha.norm();
    summary["B_hf_beta_T"] = g.hyperfine_beta.norm();
  } catch (const Error& e) {
    o << "nuclear geometry: n/a (" << e.what() << ")\n";
  }
  std::cout << o.str();

  if (!c.out.empty()) {
    auto f = open_output(c.out);
    f << summary.dump(2) << '\n';
    f.close();
    write_manifest(c.out, "info", args, &r, json::object(), {c.out}, c.seed, seconds_since(t0));
  }
  return kOk;
}

// ---------------------------------------------------------------- sweep

FieldGrid make_grid(const Common& c, const GridFlags& g) {
  FieldGrid grid;
  grid.magnitudes_T = c.bmag ? std::vector<double>{*c.bmag} : linspace(g.bmin, g.bmax, g.bsteps);
  grid.polar_deg = c.theta ? std::vector<double>{*c.theta} : linspace(g.theta_min, g.theta_max, g.theta_steps);
  grid.azimuth_deg = c.phi.value_or(0.0);
  if (grid.size() == 0) throw ConfigError("empty field grid (check --bsteps / --theta-steps)");
  return grid;
}

json grid_json(const FieldGrid& grid) {
  json j;
  j["B_first_T"] = grid.magnitudes_T.front();
  j["B_last_T"] = grid.magnitudes_T.back();
  j["B_count"] = grid.magnitudes_T.size();
  j["theta_first_deg"] = grid.polar_deg.front();
  j["theta_last_deg"] = grid.polar_deg.back();
  j["theta_count"] = grid.polar_deg.size();
  j["phi_deg"] = grid.azimuth_deg;
  return j;
}

int cmd_sweep(const std::string& kind, const Common& c, const GridFlags& g, const std::vector<std::string>& args) {
  const auto t0 = std::chrono::steady_clock::now();
  // Field flags select the grid here; only constants and strain come from the base.
  Common base_flags = c;
  base_flags.bmag.reset();
  base_flags.theta.reset();
  base_flags.phi.reset();
  base_flags.setpoint.clear();
  if (base_flags.config_path.empty() && base_flags.strain.empty()) base_flags.strain = "0";
  Resolved r = resolve(base_flags);
  SweepOptions opts;
  if (!c.transition.empty()) opts.transition = parse_transition_kind(c.transition);
  opts.threads = c.threads;

  json options;
  options["kind"] = kind;
  options["transition"] = c.transition.empty() ? "auto" : c.transition;

  // Rows are computed before the output is opened so a failed sweep leaves no file behind.
  std::ostringstream rows;
  if (kind == "orientations") {
    if (c.bmag) throw ConfigError("orientations sweeps the magnitude; use --bmin/--bmax/--bsteps");
    const auto mags = linspace(g.bmin, g.bmax, g.bsteps);
    if (mags.empty()) throw ConfigError("empty field grid (check --bsteps)");
    const double theta = c.theta.value_or(54.7);
    const double phi = c.phi.value_or(0.0);
    write_csv(rows, eigenstate_orientations(r.config, mags, theta, phi));
    options["B_first_T"] = mags.front();
    options["B_last_T"] = mags.back();
    options["B_count"] = mags.size();
    options["theta_deg"] = theta;
    options["phi_deg"] = phi;
  } else {
    const FieldGrid grid = make_grid(c, g);
    options["grid"] = grid_json(grid);
    if (kind == "dtheta")
      write_csv(rows, sweep_delta_theta(r.config, grid, opts));
    else
      write_csv(rows, sweep_precession(r.config, grid, opts));
  }
  auto f = open_output(c.out);
  f << rows.str();
  f.close();
  write_manifest(c.out, "sweep " + kind, args, &r, options, {c.out}, c.seed, seconds_since(t0));
  return kOk;
}

// ---------------------------------------------------------------- synth

SynthesisOptions synthesis_options(const Common& c, const SynthFlags& s) {
  SynthesisOptions o;
  o.seed = c.seed;
  o.max_evaluations = s.budget;
  o.fidelity_floor = s.floor;
  o.tau_max_ns = s.tau_max;
  o.time_weight = s.time_weight;
  o.restarts = s.restarts;
  o.order = parse_order(s.order);
  o.validate();
  return o;
}

json synthesis_options_json(const SynthesisOptions& o) {
  json j;
  j["fidelity_floor"] = o.fidelity_floor;
  j["max_evaluations"] = o.max_evaluations;
  j["tau_max_ns"] = o.tau_max_ns ? json(*o.tau_max_ns) : json("auto");
  j["time_weight"] = o.time_weight;
  j["restarts"] = o.restarts;
  j["order"] = to_string(o.order);
  return j;
}

int cmd_synth(const Common& c, const SynthFlags& s, const std::vector<std::string>& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const GateTarget target = standard_gate(s.gate);
  const Resolved r = resolve(c, "A");
  const SynthesisOptions opts = synthesis_options(c, s);
  const auto model = build_sequence_model(r.config, r.transition);
  const auto result = synthesize(target, model, opts);
  const std::string doc = to_json(result, strain_case(r.config), r.config);

  std::vector<std::string> outputs;
  if (c.out.empty()) {
    std::cout << doc << '\n';
  } else {
    auto f = open_output(c.out);
    f << doc << '\n';
    outputs.push_back(c.out);
  }

  if (!s.trajectory.empty()) {
    const Vec8 initial = prepare_state(model, target.pairs[0].initial);
    const auto lab = evolve_full(model, result.taus, initial, 100, opts.order);
    const auto rot = rotating_frame(lab, model.f_rf(), model.alpha_axis);
    auto f = open_output(s.trajectory);
    write_trajectory_csv(f, {lab, rot});
    outputs.push_back(s.trajectory);
  }

  if (!c.out.empty()) {
    json options = synthesis_options_json(opts);
    options["gate"] = target.name;
    options["f_rf_MHz"] = model.f_rf();
    options["delta_theta_deg"] = model.delta_theta_deg;
    write_manifest(c.out, "synth", args, &r, options, outputs, c.seed, seconds_since(t0));
  }
  if (!result.converged) {
    std::cerr << "synthesis of " << target.name << " did not reach the fidelity floor\n";
    return kInfeasible;
  }
  return kOk;
}

// ---------------------------------------------------------------- table2

int cmd_table2(const Common& c, const SynthFlags& s, const std::vector<std::string>& args) {
  const auto t0 = std::chrono::steady_clock::now();
  PhysicalConstants constants;
  if (!c.config_path.empty()) constants = load_config(c.config_path).constants;
  const SynthesisOptions opts = synthesis_options(c, s);

  const std::array<SetPoint, 2> points{setpoint_A(constants), setpoint_B(constants)};
  std::array<std::optional<SequenceModel>, 2> models;
  std::array<std::string, 2> model_errors;
  for (std::size_t p = 0; p < 2; ++p) {
    try {
      models[p] = build_sequence_model(points[p].config, points[p].transition);
    } catch (const Error& e) {
      model_errors[p] = e.what();
    }
  }

  const auto gates = standard_gate_names();
  struct Row {
    std::optional<SynthesisResult> result;
    std::string error;
  };
  std::vector<Row> rows(2 * gates.size());
  parallel_for(rows.size(), c.threads, [&](std::size_t i) {
    const std::size_t p = i / gates.size();
    if (!models[p]) {
      rows[i].error = model_errors[p];
      return;
    }
    try {
      rows[i].result = synthesize(standard_gate(gates[i % gates.size()]), *models[p], opts);
    } catch (const Error& e) {
      rows[i].error = e.what();
    }
  });

  auto f = open_output(c.out);
  f << "strain_case,gate,tau1_ns,tau2_ns,tau3_ns,tau4_ns,total_ns,fidelity,status\n";
  bool all_converged = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t p = i / gates.size();
    f << strain_case(points[p].config) << ',' << gates[i % gates.size()] << ',';
    const auto& row = rows[i];
    if (!row.result) {
      std::string msg = row.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      f << "nan,nan,nan,nan,nan,nan,error: " << msg << '\n';
      all_converged = false;
      continue;
    }
    const auto& r = *row.result;
    for (double t : r.taus) f << format_number(t) << ',';
    f << format_number(r.total_ns) << ','
      << format_number(std::min(r.pair_fidelities[0], r.pair_fidelities[1])) << ','
      << (r.converged ? "ok" : "not converged") << '\n';
    all_converged = all_converged && r.converged;
  }
  f.close();

  json options = synthesis_options_json(opts);
  json sp = json::array();
  for (std::size_t p = 0; p < 2; ++p) {
    json e;
    e["name"] = points[p].name;
    e["transition"] = sivnuc::to_string(points[p].transition);
    e["config"] = config_json(points[p].config);
    if (models[p]) {
      e["f_rf_MHz"] = models[p]->f_rf();
      e["delta_theta_deg"] = models[p]->delta_theta_deg;
    }
    sp.push_back(e);
  }
  options["setpoints"] = sp;
  write_manifest(c.out, "table2", args, nullptr, options, {c.out}, c.seed, seconds_since(t0));
  return all_converged ? kOk : kInfeasible;
}

// ---------------------------------------------------------------- driver

int run(const std::vector<std::string>& args);

int cmd_replay(const std::string& manifest_path) {
  std::ifstream f(manifest_path);
  if (!f) throw ConfigError("cannot read manifest '" + manifest_path + "'");
  json m;
  try {
    m = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("malformed manifest '" + manifest_path + "': " + e.what());
  }
  if (!m.contains("argv") || !m["argv"].is_array()) throw ConfigError("manifest has no argv array");
  return run(m["argv"].get<std::vector<std::string>>());
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  sub->add_option("--strain", c.strain, "alpha = beta strain; MHz, or with a GHz/MHz suffix");
  sub->add_option("--bmag", c.bmag, "field magnitude (T)");
  sub->add_option("--theta", c.theta, "field polar angle from the symmetry axis (deg)");
  sub->add_option("--phi", c.phi, "field azimuth (deg)");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  sub->add_option("--transition", c.transition, "omega1 or omega2 (default by strain case)");
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"SiV nuclear-spin indirect control toolkit", "sivnuc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(SIVNUC_VERSION));

  Common c;
  GridFlags g;
  SynthFlags s;
  std::string sweep_kind;
  std::string manifest;

  auto* info = app.add_subcommand("info", "Print the spectrum and nuclear geometry at one field");
  add_common(info, c);
  info->add_option("--setpoint", c.setpoint, "A or B");
  info->add_option("--out", c.out, "also write a JSON summary here");

  auto* sweep = app.add_subcommand("sweep", "Field sweeps written as CSV");
  add_common(sweep, c);
  sweep->add_option("kind", sweep_kind, "dtheta, precession or orientations")
      ->required()
      ->check(CLI::IsMember({"dtheta", "precession", "orientations"}));
  sweep->add_option("--out", c.out, "output CSV")->required();
  sweep->add_option("--bmin", g.bmin, "first field magnitude (T)");
  sweep->add_option("--bmax", g.bmax, "last field magnitude (T)");
  sweep->add_option("--bsteps", g.bsteps, "number of magnitudes");
  sweep->add_option("--theta-min", g.theta_min, "first polar angle (deg)");
  sweep->add_option("--theta-max", g.theta_max, "last polar angle (deg)");
  sweep->add_option("--theta-steps", g.theta_steps, "number of polar angles");

  auto add_synth = [&](CLI::App* sub) {
    sub->add_option("--budget", s.budget, "objective evaluations per gate");
    sub->add_option("--floor", s.floor, "pair-fidelity floor");
    sub->add_option("--tau-max", s.tau_max, "upper bound for each free delay (ns)");
    sub->add_option("--time-weight", s.time_weight, "cost per ns of gate time");
    sub->add_option("--restarts", s.restarts, "independent global searches");
    sub->add_option("--order", s.order, "pulse-first or delay-first");
  };

  auto* synth = app.add_subcommand("synth", "Synthesize one gate");
  add_common(synth, c);
  synth->add_option("gate", s.gate, "X, Y, Z, H, S, S^-1, T, T^-1")->required();
  synth->add_option("--setpoint", c.setpoint, "A or B (default A unless a field or config is given)");
  synth->add_option("--out", c.out, "result JSON (stdout if omitted)");
  synth->add_option("--trajectory", s.trajectory, "lab and rotating-frame Bloch samples (CSV)");
  add_synth(synth);

  auto* table2 = app.add_subcommand("table2", "Synthesize all eight gates at set-points A and B");
  table2->add_option("--config", c.config_path, "key = value configuration file (constants only)")
      ->check(CLI::ExistingFile);
  table2->add_option("--seed", c.seed, "random seed");
  table2->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  table2->add_option("--out", c.out, "output CSV")->required();
  add_synth(table2);

  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("manifest", manifest, "path to a .manifest.json")->required();

  std::vector<const char*> argv{"sivnuc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*info) return cmd_info(c, args);
  if (*sweep) return cmd_sweep(sweep_kind, c, g, args);
  if (*synth) return cmd_synth(c, s, args);
  if (*table2) return cmd_table2(c, s, args);
  return cmd_replay(manifest);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run(args);
  } catch (const sivnuc::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const sivnuc::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}
