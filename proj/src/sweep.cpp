#include "sivnuc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sivnuc/parallel.hpp"

namespace sivnuc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMagicAngleDeg = 54.7;

std::string status_text(const std::exception& e) {
  std::string msg = std::string("error: ") + e.what();
  std::replace(msg.begin(), msg.end(), ',', ';');
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  return msg;
}

double polar_of(const Vec3& v) {
  if (v.norm() < 1e-12) return kNaN;
  return delta_theta(v, Vec3::UnitZ());
}

TransitionKind kind_for(const SystemConfig& c, const std::optional<TransitionKind>& t) {
  return t ? *t : default_transition(c);
}

double delta_theta_at(const SystemConfig& base, double magnitude, double polar,
                      const std::optional<TransitionKind>& transition) {
  const SystemConfig c = base.with_field(magnitude, polar, base.field.azimuth_deg);
  return analyze(c, kind_for(c, transition)).geometry.delta_theta_deg;
}

}  // namespace

FieldGrid FieldGrid::defaults() { return FieldGrid{linspace(0.0, 7.0, 141), linspace(0.0, 90.0, 91), 0.0}; }

std::vector<double> linspace(double first, double last, int count) {
  if (count < 1) return {};
  if (count == 1) return {first};
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (last - first) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = first + step * i;
  out.back() = last;
  return out;
}

std::vector<DeltaThetaRow> sweep_delta_theta(const SystemConfig& base, const FieldGrid& grid,
                                             const SweepOptions& options) {
  if (grid.size() == 0) throw ConfigError("sweep grid is empty");
  const std::size_t cols = grid.polar_deg.size();
  std::vector<DeltaThetaRow> rows(grid.size());
  parallel_for(rows.size(), options.threads, [&](std::size_t k) {
    auto& row = rows[k];
    row.B_mag_T = grid.magnitudes_T[k / cols];
    row.theta_deg = grid.polar_deg[k % cols];
    try {
      const SystemConfig c = base.with_field(row.B_mag_T, row.theta_deg, grid.azimuth_deg);
      const auto op = analyze(c, kind_for(c, options.transition));
      row.delta_theta_deg = op.geometry.delta_theta_deg;
      row.dev_orthogonal_deg = std::abs(90.0 - row.delta_theta_deg);
    } catch (const std::exception& e) {
      row.delta_theta_deg = row.dev_orthogonal_deg = kNaN;
      row.status = status_text(e);
    }
  });
  return rows;
}

std::vector<PrecessionRow> sweep_precession(const SystemConfig& base, const FieldGrid& grid,
                                            const SweepOptions& options) {
  if (grid.size() == 0) throw ConfigError("sweep grid is empty");
  const std::size_t cols = grid.polar_deg.size();
  std::vector<PrecessionRow> rows(grid.size());
  parallel_for(rows.size(), options.threads, [&](std::size_t k) {
    auto& row = rows[k];
    row.B_mag_T = grid.magnitudes_T[k / cols];
    row.theta_deg = grid.polar_deg[k % cols];
    try {
      const SystemConfig c = base.with_field(row.B_mag_T, row.theta_deg, grid.azimuth_deg);
      const auto op = analyze(c, kind_for(c, options.transition));
      row.f_alpha_MHz = op.geometry.f_alpha;
      row.f_beta_MHz = op.geometry.f_beta;
      row.period_alpha_ns = op.geometry.period_alpha_ns;
      row.period_beta_ns = op.geometry.period_beta_ns;
    } catch (const std::exception& e) {
      row.f_alpha_MHz = row.f_beta_MHz = row.period_alpha_ns = row.period_beta_ns = kNaN;
      row.status = status_text(e);
    }
  });
  return rows;
}

std::vector<OrientationRow> eigenstate_orientations(const SystemConfig& base,
                                                    const std::vector<double>& magnitudes_T,
                                                    double polar_deg, double azimuth_deg) {
  if (magnitudes_T.empty()) throw ConfigError("sweep grid is empty");
  std::vector<OrientationRow> rows;
  rows.reserve(magnitudes_T.size() * kDim);
  for (double b : magnitudes_T) {
    const auto h = build_hamiltonian(base.with_field(b, polar_deg, azimuth_deg));
    const auto s = diagonalize(h.matrix);
    for (int i = 0; i < kDim; ++i) {
      rows.push_back(OrientationRow{b, i, s.energies[i], polar_of(s.electron_spin[i]),
                                    polar_of(s.nuclear_spin[i])});
    }
  }
  return rows;
}

double balanced_field_magnitude(const SystemConfig& base, double polar_deg, double lo_T, double hi_T,
                                std::optional<TransitionKind> transition) {
  if (!(hi_T > lo_T) || lo_T < 0.0) throw ConfigError("invalid field bracket");
  const auto grid = linspace(lo_T, hi_T, 281);

  std::vector<double> dev(grid.size(), kNaN);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      dev[i] = delta_theta_at(base, grid[i], polar_deg, transition) - 90.0;
    } catch (const Error&) {
    }
  }

  // Prefer a continuous zero crossing; otherwise the closest sampled point.
  std::size_t best = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::isnan(dev[i])) continue;
    if (best == grid.size() || std::abs(dev[i]) < std::abs(dev[best])) best = i;
  }
  if (best == grid.size()) throw NumericalError("delta theta undefined along the whole field line");

  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (std::isnan(dev[i]) || std::isnan(dev[i + 1]) || (dev[i] > 0) == (dev[i + 1] > 0)) continue;
    if (std::max(std::abs(dev[i]), std::abs(dev[i + 1])) > 45.0) continue;
    double a = grid[i];
    double b = grid[i + 1];
    double fa = dev[i];
    for (int iter = 0; iter < 60; ++iter) {
      const double m = 0.5 * (a + b);
      const double fm = delta_theta_at(base, m, polar_deg, transition) - 90.0;
      if ((fm > 0) == (fa > 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  }
  return grid[best];
}

SetPoint setpoint_A(const PhysicalConstants& constants) {
  SystemConfig c;
  c.constants = constants;
  c.field = FieldSetPoint{3.5, kMagicAngleDeg, 0.0};
  return SetPoint{"A", c, TransitionKind::SpinOrbitSeparated};
}

SetPoint setpoint_B(const PhysicalConstants& constants) {
  SystemConfig c;
  c.constants = constants;
  c.strain = StrainParams{kReferenceStrainMHz, kReferenceStrainMHz};
  const double b = balanced_field_magnitude(c, kMagicAngleDeg, 0.1, 7.0, TransitionKind::MixedOrbitalSpin);
  c.field = FieldSetPoint{b, kMagicAngleDeg, 0.0};
  return SetPoint{"B", c, TransitionKind::MixedOrbitalSpin};
}

SetPoint setpoint(const std::string& name, const PhysicalConstants& constants) {
  if (name == "A" || name == "a") return setpoint_A(constants);
  if (name == "B" || name == "b") return setpoint_B(constants);
  throw ConfigError("unknown set-point '" + name + "' (expected A or B)");
}

}  // namespace sivnuc
