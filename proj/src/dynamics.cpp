#include "sivnuc/dynamics.hpp"

#include <cmath>
#include <ostream>

#include "sivnuc/csv.hpp"
#include "sivnuc/operators.hpp"

namespace sivnuc {

namespace {

using Sub = Eigen::Matrix<Complex, kDim, 2>;

Eigen::Matrix<Complex, 4, 2> split_nucleus(const Vec8& v) {
  Eigen::Matrix<Complex, 4, 2> m;
  for (int r = 0; r < 4; ++r)
    for (int n = 0; n < 2; ++n) m(r, n) = v(2 * r + n);
  return m;
}

Vec8 join_nucleus(const Eigen::Vector4cd& electron, const Vec2& nucleus) {
  Vec8 v;
  for (int r = 0; r < 4; ++r)
    for (int n = 0; n < 2; ++n) v(2 * r + n) = electron(r) * nucleus(n);
  return v;
}

// Best product approximation e (x) nu_k of the two doublet states: e is the
// dominant left singular vector of [A_1 A_2], nu_k = e^dagger A_k.
struct DoubletFactors {
  Eigen::Vector4cd electron;
  std::array<Vec2, 2> nuclear;
};

DoubletFactors factorize(const Sub& states) {
  Eigen::Matrix4cd stacked;
  const auto a0 = split_nucleus(states.col(0));
  const auto a1 = split_nucleus(states.col(1));
  stacked << a0, a1;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(stacked, Eigen::ComputeFullU);
  DoubletFactors f;
  f.electron = svd.matrixU().col(0);
  f.nuclear[0] = (f.electron.adjoint() * a0).transpose();
  f.nuclear[1] = (f.electron.adjoint() * a1).transpose();
  return f;
}

Sub doublet_states(const Spectrum& s, const Doublet& d) {
  Sub m;
  m.col(0) = s.vectors.col(d.low);
  m.col(1) = s.vectors.col(d.high);
  return m;
}

Vec3 any_perpendicular(const Vec3& z) {
  const Vec3 seed = std::abs(z.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return (seed - seed.dot(z) * z).normalized();
}

}  // namespace

NuclearFrame NuclearFrame::from_fields(const Vec3& b_alpha, const Vec3& b_beta) {
  if (b_alpha.norm() == 0.0) throw AmbiguityError("B_alpha vanishes; nuclear frame undefined");
  NuclearFrame f;
  f.z = b_alpha.normalized();
  Vec3 x = b_beta - b_beta.dot(f.z) * f.z;
  f.x = x.norm() > 1e-12 * std::max(1.0, b_beta.norm()) ? x.normalized() : any_perpendicular(f.z);
  f.y = f.z.cross(f.x);
  return f;
}

Mat3 NuclearFrame::rotation() const {
  Mat3 r;
  r.col(0) = x;
  r.col(1) = y;
  r.col(2) = z;
  return r;
}

Mat2 NuclearFrame::spinor_to_lab() const {
  const Eigen::Quaterniond q(rotation());
  const Complex i(0.0, 1.0);
  const Mat2 u = q.w() * Mat2::Identity() - i * (q.x() * pauli_x() + q.y() * pauli_y() + q.z() * pauli_z());
  return u;
}

Mat8 propagator(const Mat8& h, double t_ns) {
  Eigen::SelfAdjointEigenSolver<Mat8> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed in propagator");
  Vec8 phases;
  for (int k = 0; k < kDim; ++k) phases(k) = std::polar(1.0, -2.0 * kPi * solver.eigenvalues()(k) * t_ns * 1e-3);
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Mat8 propagator(const Spectrum& s, double t_ns) {
  Vec8 phases;
  for (int k = 0; k < kDim; ++k) phases(k) = std::polar(1.0, -2.0 * kPi * s.energies[k] * t_ns * 1e-3);
  return s.vectors * phases.asDiagonal() * s.vectors.adjoint();
}

Mat2 su2_rotation(const Vec3& axis, double angle) {
  const Vec3 n = axis.normalized();
  const Complex i(0.0, 1.0);
  return std::cos(angle / 2) * Mat2::Identity() -
         i * std::sin(angle / 2) * (n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z());
}

Mat3 so3_rotation(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

Mat8 pi_rotation(const Spectrum& spectrum, const TransitionPair& pair) {
  const Sub lower = doublet_states(spectrum, pair.lower_doublet);
  const Sub upper = doublet_states(spectrum, pair.upper_doublet);
  const auto fl = factorize(lower);
  const auto fu = factorize(upper);

  // overlap(l, k) = <mu_l | nu_k>: nuclear content of upper state l vs lower state k.
  Mat2 overlap;
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k) overlap(l, k) = fu.nuclear[l].dot(fl.nuclear[k]);

  Eigen::JacobiSVD<Mat2> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(1) < 0.5) {
    throw AmbiguityError("electron levels of the transition are too entangled with the nucleus "
                         "to define a nucleus-preserving pi-rotation");
  }
  const Mat2 w = svd.matrixU() * svd.matrixV().adjoint();

  const Mat8 rest = Mat8::Identity() - lower * lower.adjoint() - upper * upper.adjoint();
  return rest + upper * w * lower.adjoint() + lower * w.adjoint() * upper.adjoint();
}

SequenceModel build_sequence_model(const OperatingPoint& point) {
  SequenceModel m;
  m.point = point;
  const auto& g = point.geometry;
  m.frame = NuclearFrame::from_fields(g.B_alpha, g.B_beta);
  m.f_alpha = g.f_alpha;
  m.f_beta = g.f_beta;
  m.delta_theta_deg = g.delta_theta_deg;

  // Rotation axes are the exact nuclear Bloch directions of the upper
  // sublevels (precession is right-handed about them). The field-model
  // directions that define the frame can be tilted from these by a fraction
  // of a degree, which is enough to spoil agreement with the full replay.
  const auto& s = point.spectrum;
  m.alpha_axis = m.frame.to_frame(doublet_nuclear_axis(s, point.transition.lower_doublet));
  m.beta_axis = m.frame.to_frame(doublet_nuclear_axis(s, point.transition.upper_doublet));

  m.pi_rotation = pi_rotation(s, point.transition);
  m.alpha_electron = factorize(doublet_states(s, point.transition.lower_doublet)).electron;
  return m;
}

SequenceModel build_sequence_model(const SystemConfig& config, TransitionKind kind) {
  return build_sequence_model(analyze(config, kind));
}

Mat2 two_level_propagator(const SequenceModel& m, const Delays& taus, PulseOrder order) {
  for (double t : taus)
    if (!(t >= 0.0)) throw ConfigError("delays must be non-negative");
  const auto alpha = [&](double t) { return su2_rotation(m.alpha_axis, 2.0 * kPi * m.f_alpha * t * 1e-3); };
  const auto beta = [&](double t) { return su2_rotation(m.beta_axis, 2.0 * kPi * m.f_beta * t * 1e-3); };
  if (order == PulseOrder::PulseFirst) return alpha(taus[3]) * beta(taus[2]) * alpha(taus[1]) * beta(taus[0]);
  return beta(taus[3]) * alpha(taus[2]) * beta(taus[1]) * alpha(taus[0]);
}

std::string to_string(FrameTag tag) { return tag == FrameTag::Lab ? "lab" : "rot"; }

Trajectory evolve_full(const SequenceModel& m, const Delays& taus, const Vec8& initial, int samples_per_segment,
                       PulseOrder order) {
  if (samples_per_segment < 1) throw ConfigError("samples_per_segment must be positive");
  for (double t : taus)
    if (!(t >= 0.0)) throw ConfigError("delays must be non-negative");

  const auto& spectrum = m.point.spectrum;
  Trajectory traj;
  traj.frame = FrameTag::Lab;
  Vec8 state = initial;
  double clock = 0.0;

  const auto record = [&](double t, const Vec8& psi) {
    traj.t_ns.push_back(t);
    traj.bloch.push_back(nuclear_bloch(psi, m.frame));
  };
  record(0.0, state);

  for (int seg = 0; seg < 4; ++seg) {
    if (order == PulseOrder::PulseFirst) state = m.pi_rotation * state;
    const double tau = taus[seg];
    const Mat8 step = propagator(spectrum, tau / samples_per_segment);
    Vec8 psi = state;
    record(clock, psi);
    for (int j = 1; j <= samples_per_segment; ++j) {
      psi = step * psi;
      record(clock + tau * j / samples_per_segment, psi);
    }
    // Re-evolve the whole segment in one step to avoid accumulating rounding.
    state = propagator(spectrum, tau) * state;
    clock += tau;
    if (order == PulseOrder::DelayFirst) {
      state = m.pi_rotation * state;
      record(clock, state);
    }
  }
  traj.final_state = state;
  return traj;
}

Vec3 rotating_frame(const Vec3& v, double t_ns, double f_rf, const Vec3& axis) {
  if (!(f_rf > 0.0)) throw ConfigError("rotating-frame frequency must be positive");
  return so3_rotation(axis, -2.0 * kPi * f_rf * t_ns * 1e-3) * v;
}

Mat2 rotating_frame(const Mat2& u, double t_ns, double f_rf, const Vec3& axis) {
  if (!(f_rf > 0.0)) throw ConfigError("rotating-frame frequency must be positive");
  return su2_rotation(axis, -2.0 * kPi * f_rf * t_ns * 1e-3) * u;
}

Trajectory rotating_frame(const Trajectory& lab, double f_rf, const Vec3& axis) {
  Trajectory out = lab;
  out.frame = FrameTag::Rotating;
  for (std::size_t k = 0; k < out.t_ns.size(); ++k) out.bloch[k] = rotating_frame(lab.bloch[k], lab.t_ns[k], f_rf, axis);
  return out;
}

Mat2 nuclear_density(const Vec8& state) {
  const auto m = split_nucleus(state);
  return m.transpose() * m.conjugate();
}

Vec3 nuclear_bloch_lab(const Vec8& state) {
  const Mat2 rho = nuclear_density(state);
  return Vec3(2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real());
}

Vec3 nuclear_bloch(const Vec8& state, const NuclearFrame& frame) { return frame.to_frame(nuclear_bloch_lab(state)); }

Vec8 prepare_state(const SequenceModel& m, const Vec2& nuclear) {
  const Vec2 lab = m.frame.spinor_to_lab() * nuclear.normalized();
  const Sub alpha = doublet_states(m.point.spectrum, m.point.transition.lower_doublet);
  Vec8 psi = alpha * (alpha.adjoint() * join_nucleus(m.alpha_electron, lab));
  const double norm = psi.norm();
  if (norm < 1e-6) throw NumericalError("nuclear state has no support on the alpha doublet");
  return psi / norm;
}

Vec3 bloch_vector(const Vec2& s) {
  const Complex c = std::conj(s(0)) * s(1);
  return Vec3(2.0 * c.real(), 2.0 * c.imag(), std::norm(s(0)) - std::norm(s(1)));
}

void write_trajectory_csv(std::ostream& out, const std::vector<Trajectory>& parts) {
  out << kTrajectoryHeader << '\n';
  for (const auto& traj : parts) {
    const std::string tag = to_string(traj.frame);
    for (std::size_t k = 0; k < traj.t_ns.size(); ++k) {
      const auto& r = traj.bloch[k];
      out << format_number(traj.t_ns[k]) << ',' << tag << ',' << format_number(r.x()) << ',' << format_number(r.y())
          << ',' << format_number(r.z()) << '\n';
    }
  }
}

}  // namespace sivnuc
