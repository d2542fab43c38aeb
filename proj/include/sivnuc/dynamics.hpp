#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "sivnuc/spectrum.hpp"
#include "sivnuc/types.hpp"

namespace sivnuc {

/// Right-handed working frame for the nuclear spin: z along B_alpha, B_beta
/// in the x-z plane with non-negative x component.
struct NuclearFrame {
  Vec3 x = Vec3::UnitX();
  Vec3 y = Vec3::UnitY();
  Vec3 z = Vec3::UnitZ();

  static NuclearFrame from_fields(const Vec3& b_alpha, const Vec3& b_beta);

  /// Columns x, y, z: lab = rotation() * frame.
  Mat3 rotation() const;
  Vec3 to_frame(const Vec3& lab) const { return rotation().transpose() * lab; }
  Vec3 to_lab(const Vec3& frame) const { return rotation() * frame; }

  /// SU(2) image of rotation(): maps frame-basis nuclear spinors to lab-basis spinors.
  Mat2 spinor_to_lab() const;
};

/// Order of pulses and delays inside a four-pulse gate.
enum class PulseOrder {
  PulseFirst,  // pi, t1, pi, t2, pi, t3, pi, t4
  DelayFirst,  // t1, pi, t2, pi, t3, pi, t4, pi
};

using Delays = std::array<double, 4>;

/// Reduced two-level description of one operating point plus the pieces the
/// full-space replay needs.
struct SequenceModel {
  OperatingPoint point;
  NuclearFrame frame;
  double f_alpha = 0.0;  // MHz
  double f_beta = 0.0;   // MHz
  double delta_theta_deg = 0.0;
  // Exact nuclear precession axes in frame coordinates (Bloch direction of the
  // upper sublevel); precession is right-handed about them.
  Vec3 alpha_axis = Vec3::UnitZ();
  Vec3 beta_axis = Vec3::UnitZ();
  Mat8 pi_rotation;
  Eigen::Vector4cd alpha_electron;  // orbital x electron factor of the alpha level

  /// Rotating-frame frequency: the primary-axis precession.
  double f_rf() const { return f_alpha; }
};

SequenceModel build_sequence_model(const OperatingPoint& point);
SequenceModel build_sequence_model(const SystemConfig& config, TransitionKind kind);

/// exp(-i 2 pi H t) with H in MHz and t in ns.
Mat8 propagator(const Mat8& h, double t_ns);
Mat8 propagator(const Spectrum& spectrum, double t_ns);

/// exp(-i angle n . sigma / 2): right-handed rotation of the Bloch vector.
Mat2 su2_rotation(const Vec3& axis, double angle_rad);

/// SO(3) rotation about `axis` by `angle_rad`.
Mat3 so3_rotation(const Vec3& axis, double angle_rad);

/// Idealised instantaneous electron pi-rotation on a transition. It swaps
/// the two doublets and maps each lower-level nuclear state onto the
/// upper-level state with the same nuclear spinor, leaving the other four
/// states untouched. Hermitian and an involution.
Mat8 pi_rotation(const Spectrum& spectrum, const TransitionPair& pair);

/// Nuclear propagator of the four-pulse sequence in frame spinor basis.
Mat2 two_level_propagator(const SequenceModel& model, const Delays& taus,
                          PulseOrder order = PulseOrder::PulseFirst);

enum class FrameTag { Lab, Rotating };

std::string to_string(FrameTag tag);

struct Trajectory {
  std::vector<double> t_ns;
  std::vector<Vec3> bloch;  // nuclear Bloch vector in NuclearFrame coordinates
  FrameTag frame = FrameTag::Lab;
  Vec8 final_state = Vec8::Zero();
};

/// Full 8-dimensional replay of the sequence. The nuclear Bloch vector is
/// recorded at `samples_per_segment` + 1 evenly spaced instants of every delay.
Trajectory evolve_full(const SequenceModel& model, const Delays& taus, const Vec8& initial,
                       int samples_per_segment = 100, PulseOrder order = PulseOrder::PulseFirst);

/// Rotating-frame view: undoes a right-handed precession at f_rf about `axis`.
/// At t = k / f_rf the transform is the identity.
Vec3 rotating_frame(const Vec3& v, double t_ns, double f_rf_MHz, const Vec3& axis);
Mat2 rotating_frame(const Mat2& u, double t_ns, double f_rf_MHz, const Vec3& axis);
Trajectory rotating_frame(const Trajectory& lab, double f_rf_MHz, const Vec3& axis);

/// Reduced nuclear density matrix (partial trace over orbital and electron).
Mat2 nuclear_density(const Vec8& state);

/// 2 (<Ix>, <Iy>, <Iz>) in lab coordinates.
Vec3 nuclear_bloch_lab(const Vec8& state);

/// Nuclear Bloch vector expressed in `frame` coordinates.
Vec3 nuclear_bloch(const Vec8& state, const NuclearFrame& frame);

/// Full-space state with the electron in the alpha level and the nucleus in
/// `nuclear` (frame basis), projected onto the alpha doublet.
Vec8 prepare_state(const SequenceModel& model, const Vec2& nuclear);

/// Bloch vector of a normalised spinor.
Vec3 bloch_vector(const Vec2& spinor);

void write_trajectory_csv(std::ostream& out, const std::vector<Trajectory>& parts);

}  // namespace sivnuc
