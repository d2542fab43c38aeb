#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sivnuc/types.hpp"

namespace sivnuc {

/// Ground-state Hamiltonian constants. Energies in MHz, gyromagnetic
/// ratios in MHz/T. gamma_n is signed and enters the nuclear Zeeman term
/// as -gamma_n (B . I) exactly once.
struct PhysicalConstants {
  double gamma_e = 28000.0;
  double gamma_n = -8.46;
  double A_par = 70.0;
  double A_perp = 78.0;
  double q = 0.1;
  double gamma_L = 14000.0;
  double lambda_SO = 46000.0;

  void validate() const;
};

/// Strain energies in MHz; (0, 0) is the unstrained centre.
struct StrainParams {
  double alpha = 0.0;
  double beta = 0.0;

  bool is_zero() const { return alpha == 0.0 && beta == 0.0; }
  void validate() const;
};

/// Applied field in the defect frame (z along the symmetry axis).
struct FieldSetPoint {
  double magnitude_T = 0.0;
  double polar_deg = 0.0;
  double azimuth_deg = 0.0;

  /// |B| (sin t cos p, sin t sin p, cos t) in tesla.
  Vec3 cartesian() const;
  void validate() const;
};

struct SystemConfig {
  PhysicalConstants constants;
  StrainParams strain;
  FieldSetPoint field;

  void validate() const;

  SystemConfig with_field(double magnitude_T, double polar_deg, double azimuth_deg = 0.0) const;
  SystemConfig with_strain(double alpha, double beta) const;
};

/// Strain magnitude used for the strained reference case (alpha = beta).
inline constexpr double kReferenceStrainMHz = 150000.0;

/// Parses the flat `key = value` format. `#` starts a comment. Unknown keys,
/// duplicate keys and unparsable numbers raise ConfigError naming the
/// source and line. If gamma_L is absent it tracks gamma_e / 2.
SystemConfig parse_config(std::string_view text, const std::string& source = "<string>");
SystemConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config; values are written with round-trip precision.
std::string format_config(const SystemConfig& config);

}  // namespace sivnuc
