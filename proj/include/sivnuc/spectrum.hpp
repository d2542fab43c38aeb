#pragma once

#include <array>
#include <string>

#include "sivnuc/config.hpp"
#include "sivnuc/hamiltonian.hpp"
#include "sivnuc/types.hpp"

namespace sivnuc {

/// Eigen-decomposition of an 8x8 Hamiltonian plus per-state expectation
/// values. Energies ascend; eigenvectors are the columns of `vectors`.
struct Spectrum {
  std::array<double, kDim> energies{};
  Mat8 vectors;
  std::array<Vec3, kDim> electron_spin;  // <S>
  std::array<Vec3, kDim> nuclear_spin;   // <I>
  std::array<double, kDim> orbital{};    // <Lz>

  Vec8 state(int i) const { return vectors.col(i); }
};

/// Hermitian eigensolve with a reproducible gauge: exactly degenerate
/// clusters are resolved by diagonalising Lz (then Sz, Iz) inside the
/// cluster, and each vector's largest-magnitude component is made real
/// positive. Throws NumericalError if the solver does not converge.
Spectrum diagonalize(const Mat8& h);

Vec3 expectation(const std::array<Mat8, 3>& ops, const Vec8& v);
double expectation(const Mat8& op, const Vec8& v);

/// Two hyperfine-split sublevels belonging to one electron level.
struct Doublet {
  int low = 0;   // state index of the lower-energy member
  int high = 0;  // state index of the higher-energy member
  Vec3 electron_spin = Vec3::Zero();  // mean <S> of the members
  double orbital = 0.0;               // mean <Lz>
  double center = 0.0;                // MHz
  double splitting = 0.0;             // MHz, E(high) - E(low)
};

/// Groups the eight states into four doublets, ordered by energy. Partners
/// lie within 1 GHz and share electron spin direction (5 deg) and orbital
/// character. Throws AmbiguityError when no consistent grouping exists.
std::array<Doublet, 4> group_doublets(const Spectrum& spectrum);

enum class TransitionKind {
  SpinOrbitSeparated,  // omega_1: electron flip inside one orbital branch (unstrained)
  MixedOrbitalSpin,    // omega_2: flip between the two lowest doublets (strained)
};

/// omega_1 for zero strain, omega_2 otherwise.
TransitionKind default_transition(const SystemConfig& config);

std::string to_string(TransitionKind kind);
TransitionKind parse_transition_kind(const std::string& text);

struct TransitionPair {
  int lower = 0;  // doublet index (0..3) of the alpha level
  int upper = 0;  // doublet index of the beta level
  std::string label;
  double frequency_MHz = 0.0;
  Doublet lower_doublet;
  Doublet upper_doublet;
};

TransitionPair select_transition(const Spectrum& spectrum, TransitionKind kind);

/// Explicit doublet indices; no physical screening is applied.
TransitionPair select_transition(const Spectrum& spectrum, int lower, int upper);

/// Nuclear quantization geometry for the two electron levels of a
/// transition. alpha = electron in the lower level, beta = upper level.
/// Fields in tesla, frequencies in MHz, periods in ns.
struct QuantizationGeometry {
  Vec3 B_alpha = Vec3::Zero();
  Vec3 B_beta = Vec3::Zero();
  Vec3 hyperfine_alpha = Vec3::Zero();
  Vec3 hyperfine_beta = Vec3::Zero();
  double delta_theta_deg = 0.0;
  double f_alpha = 0.0;
  double f_beta = 0.0;
  double period_alpha_ns = 0.0;
  double period_beta_ns = 0.0;
};

/// Effective hyperfine field (A_perp <Sx>, A_perp <Sy>, A_par <Sz>) / |gamma_n|.
Vec3 hyperfine_field(const PhysicalConstants& constants, const Vec3& electron_spin);

/// Net nuclear field for one doublet: B0 + s B_hf with the sign s picked so
/// |gamma_n| |B_net| best matches the exact splitting (must agree to 5%).
Vec3 net_nuclear_field(const SystemConfig& config, const Doublet& doublet);

QuantizationGeometry nuclear_quantization_fields(const SystemConfig& config, const Spectrum& spectrum,
                                                 const TransitionPair& pair);

/// Angle between two nonzero vectors in degrees, in [0, 180].
double delta_theta(const Vec3& a, const Vec3& b);

/// Unit nuclear Bloch direction of the higher-energy member of a doublet,
/// taken from the reduced density matrix. Nuclear precession in this level
/// is right-handed about this axis.
Vec3 doublet_nuclear_axis(const Spectrum& spectrum, const Doublet& doublet);

/// Everything needed about one operating point, computed once.
struct OperatingPoint {
  Hamiltonian hamiltonian;
  Spectrum spectrum;
  TransitionPair transition;
  QuantizationGeometry geometry;
};

OperatingPoint analyze(const SystemConfig& config, TransitionKind kind);
OperatingPoint analyze(const SystemConfig& config, int lower, int upper);

}  // namespace sivnuc
