#include "sivnuc/synthesis.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "sivnuc/optimizer.hpp"

namespace sivnuc {

namespace {

constexpr double kPenaltyScale = 1e3;
constexpr double kGapLimit = 1e-2;

double min_pair(const std::array<double, 2>& f) { return std::min(f[0], f[1]); }

long period_count(double total_ns, double f_rf) { return std::lround(total_ns * f_rf * 1e-3); }

}  // namespace

void SynthesisOptions::validate() const {
  if (!(fidelity_floor > 0.0 && fidelity_floor <= 1.0)) throw ConfigError("fidelity_floor must lie in (0, 1]");
  if (tau_max_ns && !(*tau_max_ns > 0.0)) throw ConfigError("tau_max must be positive");
  if (max_evaluations < 100) throw ConfigError("evaluation budget must be at least 100");
  if (!(time_weight >= 0.0)) throw ConfigError("time_weight must be non-negative");
  if (restarts < 1) throw ConfigError("restarts must be at least 1");
}

double pad_tau4(double gate_ns, double f_rf) {
  if (!(gate_ns >= 0.0)) throw ConfigError("gate time must be non-negative");
  if (!(f_rf > 0.0)) throw ConfigError("rotating-frame frequency must be positive");
  const double f_per_ns = f_rf * 1e-3;
  const double cycles = gate_ns * f_per_ns;
  double whole = std::ceil(cycles);
  if (const double nearest = std::round(cycles); std::abs(cycles - nearest) <= 1e-9) whole = nearest;
  return std::max(0.0, whole / f_per_ns - gate_ns);
}

Mat2 rotating_gate(const SequenceModel& model, const Delays& taus, PulseOrder order) {
  const double total = taus[0] + taus[1] + taus[2] + taus[3];
  return rotating_frame(two_level_propagator(model, taus, order), total, model.f_rf(), model.alpha_axis);
}

ObjectiveTerms evaluate_objective(const std::array<double, 3>& taus, const GateTarget& target,
                                  const SequenceModel& model, const SynthesisOptions& options) {
  const double tau_max = options.tau_max_ns.value_or(std::numeric_limits<double>::infinity());
  for (double t : taus) {
    if (!(t >= 0.0 && t <= tau_max)) throw ConfigError("delays must lie in [0, tau_max]");
  }
  ObjectiveTerms out;
  const double gate = taus[0] + taus[1] + taus[2];
  out.taus = {taus[0], taus[1], taus[2], pad_tau4(gate, model.f_rf())};
  out.total_ns = gate + out.taus[3];
  out.propagator = rotating_gate(model, out.taus, options.order);
  for (int k = 0; k < 2; ++k) {
    const auto& pair = target.pairs[k];
    out.pair_fidelities[k] = state_fidelity(pair.target, out.propagator * pair.initial);
  }
  out.cost = kPenaltyScale * std::max(0.0, options.fidelity_floor - min_pair(out.pair_fidelities)) +
             options.time_weight * out.total_ns;
  return out;
}

double objective(const std::array<double, 3>& taus, const GateTarget& target, const SequenceModel& model,
                 const SynthesisOptions& options) {
  return evaluate_objective(taus, target, model, options).cost;
}

SynthesisResult synthesize(const GateTarget& target, const SequenceModel& model, const SynthesisOptions& opts) {
  opts.validate();
  SynthesisOptions options = opts;
  if (!options.tau_max_ns) options.tau_max_ns = 2.0 * 1000.0 / std::min(model.f_alpha, model.f_beta);
  const double tau_max = *options.tau_max_ns;
  const Box box{{0.0, 0.0, 0.0}, {tau_max, tau_max, tau_max}};

  std::size_t evaluations = 0;
  const auto cost = [&](std::span<const double> x) {
    return objective({x[0], x[1], x[2]}, target, model, options);
  };

  // Budget split: 40% global search, 25% period descent, 5% local, the rest
  // for the fidelity polish.
  const std::size_t global_budget = options.max_evaluations * 2 / 5;
  const std::size_t per_start = std::max<std::size_t>(50, global_budget / options.restarts);
  OptimizeResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < options.restarts; ++r) {
    DEOptions de;
    de.max_evaluations = per_start;
    de.seed = mix_seed(options.seed, static_cast<std::uint64_t>(r));
    const auto run = differential_evolution(cost, box, de);
    evaluations += run.evaluations;
    if (run.value < best.value) best = run;
  }

  const auto feasible_periods = [&](const std::vector<double>& x) -> long {
    const auto t = evaluate_objective({x[0], x[1], x[2]}, target, model, options);
    if (min_pair(t.pair_fidelities) < options.fidelity_floor) return -1;
    return period_count(t.total_ns, model.f_rf());
  };

  // Period descent: the time term is flat within a period, so search the
  // next shorter period count directly until it stops being feasible.
  const double period_ns = 1000.0 / model.f_rf();
  const std::size_t descent_budget = options.max_evaluations / 4;
  for (long n = feasible_periods(best.x) - 1; n >= 1; --n) {
    const double limit = n * period_ns;
    const double edge = std::min(tau_max, limit);
    const Box shorter{{0.0, 0.0, 0.0}, {edge, edge, edge}};
    const auto limited = [&](std::span<const double> x) {
      const double gate = x[0] + x[1] + x[2];
      if (gate > limit) return kPenaltyScale * (1.0 + (gate - limit) / limit);
      return cost(x);
    };
    DEOptions de;
    de.max_evaluations = std::max<std::size_t>(50, descent_budget / options.restarts);
    de.seed = mix_seed(options.seed, 1000 + static_cast<std::uint64_t>(n));
    const auto run = differential_evolution(limited, shorter, de);
    evaluations += run.evaluations;
    if (feasible_periods(run.x) != n) break;
    best.x = run.x;
    best.value = cost(run.x);
  }

  // Local phase on the same cost.
  const std::size_t local_budget = options.max_evaluations / 20;
  if (local_budget > 10) {
    const auto local = nelder_mead(cost, best.x, box, local_budget, 0.02);
    evaluations += local.evaluations;
    if (local.value <= best.value) best = local;
  }

  // Fidelity polish: a second global search, this time maximising the worst
  // pair fidelity inside the period count already reached.
  auto terms = evaluate_objective({best.x[0], best.x[1], best.x[2]}, target, model, options);
  const long periods = period_count(terms.total_ns, model.f_rf());
  const double budget_ns = periods * period_ns;
  const auto polish_cost = [&](std::span<const double> x) {
    const double gate = x[0] + x[1] + x[2];
    if (gate > budget_ns) return 1.0 + (gate - budget_ns) / budget_ns;
    const auto t = evaluate_objective({x[0], x[1], x[2]}, target, model, options);
    return 1.0 - min_pair(t.pair_fidelities);
  };
  const std::size_t polish_budget = options.max_evaluations - std::min(options.max_evaluations, evaluations);
  if (polish_budget > 100 && periods > 0) {
    const double edge = std::min(tau_max, budget_ns);
    const Box inside{{0.0, 0.0, 0.0}, {edge, edge, edge}};
    OptimizeResult polished;
    polished.x = best.x;
    polished.value = polish_cost(best.x);
    const std::size_t share = polish_budget * 3 / 4 / options.restarts;
    for (int r = 0; r < options.restarts && polished.value > 1e-12; ++r) {
      DEOptions de;
      de.max_evaluations = share;
      de.seed = mix_seed(options.seed, 2000 + static_cast<std::uint64_t>(r));
      de.target = 1e-12;
      const auto run = differential_evolution(polish_cost, inside, de);
      evaluations += run.evaluations;
      if (run.value < polished.value) polished = run;
    }
    const auto refined = nelder_mead(polish_cost, polished.x, inside, polish_budget / 4, 0.01, 1e-16);
    evaluations += refined.evaluations;
    if (refined.value < polished.value) polished = refined;

    const auto candidate = evaluate_objective({polished.x[0], polished.x[1], polished.x[2]}, target, model, options);
    if (period_count(candidate.total_ns, model.f_rf()) <= periods &&
        min_pair(candidate.pair_fidelities) > min_pair(terms.pair_fidelities)) {
      terms = candidate;
    }
  }

  SynthesisResult result;
  result.gate = target.name;
  result.taus = terms.taus;
  result.total_ns = terms.taus[0] + terms.taus[1] + terms.taus[2] + terms.taus[3];
  result.pair_fidelities = terms.pair_fidelities;
  result.gate_fidelity = gate_fidelity(target.matrix, terms.propagator);
  result.seed = options.seed;
  result.evaluations = evaluations;
  result.converged = min_pair(terms.pair_fidelities) >= options.fidelity_floor;
  result.verification = verify(result.taus, target, model, options.fidelity_floor, options.order);
  result.oracle_fidelity = result.verification.oracle_min_pair;
  return result;
}

VerificationReport verify(const Delays& taus, const GateTarget& target, const SequenceModel& model,
                          double fidelity_floor, PulseOrder order) {
  VerificationReport report;
  const double total = taus[0] + taus[1] + taus[2] + taus[3];
  const Mat2 model_gate = rotating_gate(model, taus, order);
  const Mat2 to_lab = model.frame.spinor_to_lab();
  const Mat2 unwind = su2_rotation(model.alpha_axis, -2.0 * kPi * model.f_rf() * total * 1e-3);

  const std::array<Vec2, 3> inputs{target.pairs[0].initial, target.pairs[1].initial, ket_plus_y()};
  for (int k = 0; k < 3; ++k) {
    const Vec2 wanted = target.matrix * inputs[k];
    report.model_fidelities[k] = state_fidelity(wanted, model_gate * inputs[k]);

    const auto traj = evolve_full(model, taus, prepare_state(model, inputs[k]), 1, order);
    const Mat2 rho_frame = to_lab.adjoint() * nuclear_density(traj.final_state) * to_lab;
    const Mat2 rho_rot = unwind * rho_frame * unwind.adjoint();
    report.oracle_fidelities[k] = wanted.dot(rho_rot * wanted).real();

    report.max_gap = std::max(report.max_gap, std::abs(report.model_fidelities[k] - report.oracle_fidelities[k]));
  }
  report.oracle_min_pair = std::min(report.oracle_fidelities[0], report.oracle_fidelities[1]);
  report.gap_flag = report.max_gap > kGapLimit;
  report.below_floor = report.oracle_min_pair < fidelity_floor;
  return report;
}

std::string to_json(const SynthesisResult& r, const std::string& strain_case, const SystemConfig& config) {
  nlohmann::ordered_json j;
  j["gate"] = r.gate;
  j["strain_case"] = strain_case;
  j["B_mag_T"] = config.field.magnitude_T;
  j["theta_deg"] = config.field.polar_deg;
  j["tau_ns"] = r.taus;
  j["total_ns"] = r.total_ns;
  j["pair_fidelities"] = r.pair_fidelities;
  j["gate_fidelity"] = r.gate_fidelity;
  j["oracle_fidelity"] = r.oracle_fidelity;
  j["seed"] = r.seed;
  j["evaluations"] = r.evaluations;
  j["converged"] = r.converged;
  j["verification"] = {
      {"labels", r.verification.labels},
      {"model_fidelities", r.verification.model_fidelities},
      {"oracle_fidelities", r.verification.oracle_fidelities},
      {"max_gap", r.verification.max_gap},
      {"gap_flag", r.verification.gap_flag},
      {"below_floor", r.verification.below_floor},
  };
  return j.dump(2);
}

}  // namespace sivnuc
