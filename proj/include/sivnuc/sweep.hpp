#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sivnuc/config.hpp"
#include "sivnuc/spectrum.hpp"

namespace sivnuc {

/// Field grid, iterated row-major: magnitude outer, polar angle inner.
struct FieldGrid {
  std::vector<double> magnitudes_T;
  std::vector<double> polar_deg;
  double azimuth_deg = 0.0;

  std::size_t size() const { return magnitudes_T.size() * polar_deg.size(); }

  /// 0-7 T in 141 steps by 0-90 deg in 91 steps.
  static FieldGrid defaults();
};

/// `count` evenly spaced values from `first` to `last` inclusive.
std::vector<double> linspace(double first, double last, int count);

struct DeltaThetaRow {
  double B_mag_T = 0.0;
  double theta_deg = 0.0;
  double delta_theta_deg = 0.0;
  double dev_orthogonal_deg = 0.0;
  std::string status = "ok";
};

struct PrecessionRow {
  double B_mag_T = 0.0;
  double theta_deg = 0.0;
  double f_alpha_MHz = 0.0;
  double f_beta_MHz = 0.0;
  double period_alpha_ns = 0.0;
  double period_beta_ns = 0.0;
  std::string status = "ok";
};

struct OrientationRow {
  double B_mag_T = 0.0;
  int state_index = 0;
  double energy_MHz = 0.0;
  double S_polar_deg = 0.0;
  double I_polar_deg = 0.0;
};

/// Options shared by the sweeps. `transition` defaults per strain case.
struct SweepOptions {
  std::optional<TransitionKind> transition;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Delta-theta map. A failing grid point becomes a row with NaN values and a
/// status message; the sweep continues.
std::vector<DeltaThetaRow> sweep_delta_theta(const SystemConfig& base, const FieldGrid& grid,
                                             const SweepOptions& options = {});

std::vector<PrecessionRow> sweep_precession(const SystemConfig& base, const FieldGrid& grid,
                                            const SweepOptions& options = {});

/// Energies and spin orientations of all eight states along a magnitude
/// sweep at fixed polar angle. Polar angles are measured from z and are NaN
/// for a vanishing expectation vector.
std::vector<OrientationRow> eigenstate_orientations(const SystemConfig& base,
                                                    const std::vector<double>& magnitudes_T,
                                                    double polar_deg = 54.7, double azimuth_deg = 0.0);

/// Field magnitude on a fixed-angle line where delta theta is closest to
/// 90 degrees: coarse scan of [lo, hi] then bisection on the bracketing sign
/// change of (delta_theta - 90).
double balanced_field_magnitude(const SystemConfig& base, double polar_deg, double lo_T = 0.1,
                                double hi_T = 7.0, std::optional<TransitionKind> transition = {});

/// Named operating points: A is the unstrained centre at 3.5 T, 54.7 deg;
/// B is the alpha = beta = 150 GHz centre on the 54.7 deg line at the field
/// that brings delta theta closest to 90 degrees.
struct SetPoint {
  std::string name;
  SystemConfig config;
  TransitionKind transition;
};

SetPoint setpoint_A(const PhysicalConstants& constants = {});
SetPoint setpoint_B(const PhysicalConstants& constants = {});
SetPoint setpoint(const std::string& name, const PhysicalConstants& constants = {});

}  // namespace sivnuc
