#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "sivnuc/dynamics.hpp"
#include "sivnuc/gates.hpp"

namespace sivnuc {

struct SynthesisOptions {
  double fidelity_floor = 0.98;
  std::optional<double> tau_max_ns;  // default: two periods of the slower axis
  std::size_t max_evaluations = 200000;
  std::uint64_t seed = 0;
  double time_weight = 1e-3;  // cost per ns
  int restarts = 6;
  PulseOrder order = PulseOrder::PulseFirst;

  void validate() const;
};

/// Padding delay that closes a gate on a whole number of rotating-frame
/// periods: ceil(T f) / f - T with T in ns and f in MHz. A product T f within
/// 1e-9 of an integer counts as aligned.
double pad_tau4(double gate_ns, double f_rf_MHz);

struct ObjectiveTerms {
  double cost = 0.0;
  std::array<double, 2> pair_fidelities{};
  Delays taus{};
  double total_ns = 0.0;
  Mat2 propagator;  // rotating frame, at the end of the gate
};

/// Scores three free delays. tau4 comes from pad_tau4, both state pairs are
/// compared in the rotating frame, and
///   cost = 1e3 * max(0, floor - min pair fidelity) + time_weight * total.
ObjectiveTerms evaluate_objective(const std::array<double, 3>& taus, const GateTarget& target,
                                  const SequenceModel& model, const SynthesisOptions& options);

double objective(const std::array<double, 3>& taus, const GateTarget& target, const SequenceModel& model,
                 const SynthesisOptions& options);

/// Two-level propagator of a complete delay set, seen in the rotating frame
/// at the end of the sequence.
Mat2 rotating_gate(const SequenceModel& model, const Delays& taus, PulseOrder order = PulseOrder::PulseFirst);

struct VerificationReport {
  std::array<std::string, 3> labels{"pair1", "pair2", "+Y"};
  std::array<double, 3> model_fidelities{};
  std::array<double, 3> oracle_fidelities{};
  double max_gap = 0.0;
  double oracle_min_pair = 0.0;
  bool gap_flag = false;     // max_gap > 1e-2
  bool below_floor = false;  // oracle_min_pair < floor
};

struct SynthesisResult {
  std::string gate;
  Delays taus{};
  double total_ns = 0.0;
  std::array<double, 2> pair_fidelities{};
  double gate_fidelity = 0.0;
  double oracle_fidelity = 0.0;  // min oracle pair fidelity
  std::uint64_t seed = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  VerificationReport verification;
};

/// Multi-start differential evolution over (t1, t2, t3) in [0, tau_max]^3,
/// a descent over shorter period counts, Nelder-Mead polishing, then a
/// fidelity polish that keeps the period count. Never throws for
/// infeasibility; check `converged`.
SynthesisResult synthesize(const GateTarget& target, const SequenceModel& model, const SynthesisOptions& options = {});

/// Replays the delays in the full 8-dimensional model for both state pairs
/// and |+Y>, comparing against the two-level prediction.
VerificationReport verify(const Delays& taus, const GateTarget& target, const SequenceModel& model,
                          double fidelity_floor = 0.98, PulseOrder order = PulseOrder::PulseFirst);

/// Serialises a result with its operating point as a single JSON document.
std::string to_json(const SynthesisResult& result, const std::string& strain_case, const SystemConfig& config);

}  // namespace sivnuc
