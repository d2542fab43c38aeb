#include "sivnuc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sivnuc/operators.hpp"

namespace sivnuc {

namespace {

constexpr double kDoubletMaxGapMHz = 1000.0;
constexpr double kDoubletSpinAngleDeg = 5.0;
constexpr double kSplittingMatchTolerance = 0.05;
constexpr double kMinSplittingMHz = 1e-6;

// Makes the largest-magnitude component real and positive. The first index
// within 1e-12 of the maximum wins so repeated calls pick the same one.
void fix_phase(Vec8& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  int pivot = 0;
  for (int i = 0; i < kDim; ++i) {
    if (std::abs(v(i)) >= peak - 1e-12) {
      pivot = i;
      break;
    }
  }
  const double magnitude = std::abs(v(pivot));
  v *= std::conj(v(pivot)) / magnitude;
  v(pivot) = magnitude;  // exactly real, not just to rounding
}

// Rotates exactly degenerate clusters onto eigenvectors of a fixed
// symmetry-breaking probe so the returned basis does not depend on solver
// internals.
void resolve_degeneracies(const std::array<double, kDim>& energies, Mat8& vectors) {
  const auto& ops = operators();
  const Mat8 probe = ops.Lz + 1e-3 * ops.Sz() + 1e-6 * ops.Iz();
  const double scale = std::max({1.0, std::abs(energies.front()), std::abs(energies.back())});
  const double tol = 1e-10 * scale;

  int start = 0;
  while (start < kDim) {
    int stop = start + 1;
    while (stop < kDim && energies[stop] - energies[stop - 1] < tol) ++stop;
    const int size = stop - start;
    if (size > 1) {
      const Eigen::MatrixXcd basis = vectors.middleCols(start, size);
      const Eigen::MatrixXcd projected = basis.adjoint() * probe * basis;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(projected);
      vectors.middleCols(start, size) = basis * solver.eigenvectors();
    }
    start = stop;
  }
}

bool spins_compatible(const Vec3& a, const Vec3& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na < 1e-3 || nb < 1e-3) return na < 1e-3 && nb < 1e-3;
  return delta_theta(a, b) <= kDoubletSpinAngleDeg;
}

Doublet make_doublet(const Spectrum& s, int low, int high) {
  Doublet d;
  d.low = low;
  d.high = high;
  d.electron_spin = 0.5 * (s.electron_spin[low] + s.electron_spin[high]);
  d.orbital = 0.5 * (s.orbital[low] + s.orbital[high]);
  d.center = 0.5 * (s.energies[low] + s.energies[high]);
  d.splitting = s.energies[high] - s.energies[low];
  return d;
}

TransitionPair make_pair(const std::array<Doublet, 4>& doublets, int lower, int upper, std::string label) {
  TransitionPair p;
  p.lower = lower;
  p.upper = upper;
  p.label = std::move(label);
  p.lower_doublet = doublets[lower];
  p.upper_doublet = doublets[upper];
  p.frequency_MHz = std::abs(doublets[upper].center - doublets[lower].center);
  return p;
}

}  // namespace

Vec3 expectation(const std::array<Mat8, 3>& ops, const Vec8& v) {
  return Vec3(expectation(ops[0], v), expectation(ops[1], v), expectation(ops[2], v));
}

double expectation(const Mat8& op, const Vec8& v) { return v.dot(op * v).real(); }

Spectrum diagonalize(const Mat8& h) {
  Eigen::SelfAdjointEigenSolver<Mat8> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed to converge");

  Spectrum s;
  for (int i = 0; i < kDim; ++i) s.energies[i] = solver.eigenvalues()(i);
  s.vectors = solver.eigenvectors();
  resolve_degeneracies(s.energies, s.vectors);

  const auto& ops = operators();
  for (int i = 0; i < kDim; ++i) {
    Vec8 v = s.vectors.col(i);
    fix_phase(v);
    s.vectors.col(i) = v;
    s.electron_spin[i] = expectation(ops.S, v);
    s.nuclear_spin[i] = expectation(ops.I, v);
    s.orbital[i] = expectation(ops.Lz, v);
  }
  return s;
}

std::array<Doublet, 4> group_doublets(const Spectrum& s) {
  std::array<bool, kDim> used{};
  std::vector<Doublet> found;
  for (int i = 0; i < kDim; ++i) {
    if (used[i]) continue;
    int partner = -1;
    int looked = 0;
    for (int j = i + 1; j < kDim && looked < 3; ++j) {
      if (used[j]) continue;
      ++looked;
      if (s.energies[j] - s.energies[i] >= kDoubletMaxGapMHz) break;
      if (!spins_compatible(s.electron_spin[i], s.electron_spin[j])) continue;
      if (std::abs(s.orbital[i] - s.orbital[j]) > 0.5) continue;
      partner = j;
      break;
    }
    if (partner < 0) {
      throw AmbiguityError("cannot group state " + std::to_string(i) +
                           " into a hyperfine doublet; pass explicit doublet indices");
    }
    used[i] = used[partner] = true;
    found.push_back(make_doublet(s, i, partner));
  }
  std::array<Doublet, 4> out;
  std::copy(found.begin(), found.end(), out.begin());
  return out;
}

TransitionKind default_transition(const SystemConfig& config) {
  return config.strain.is_zero() ? TransitionKind::SpinOrbitSeparated : TransitionKind::MixedOrbitalSpin;
}

std::string to_string(TransitionKind kind) {
  return kind == TransitionKind::SpinOrbitSeparated ? "omega1" : "omega2";
}

TransitionKind parse_transition_kind(const std::string& text) {
  if (text == "omega1" || text == "w1" || text == "1") return TransitionKind::SpinOrbitSeparated;
  if (text == "omega2" || text == "w2" || text == "2") return TransitionKind::MixedOrbitalSpin;
  throw ConfigError("unknown transition '" + text + "' (expected omega1 or omega2)");
}

TransitionPair select_transition(const Spectrum& spectrum, TransitionKind kind) {
  const auto doublets = group_doublets(spectrum);

  if (kind == TransitionKind::MixedOrbitalSpin) {
    if (doublets[0].electron_spin.dot(doublets[1].electron_spin) >= 0.0) {
      throw AmbiguityError("lowest two doublets do not differ by an electron spin flip; "
                           "pass explicit doublet indices");
    }
    return make_pair(doublets, 0, 1, "omega2");
  }

  int best_lower = -1;
  int best_upper = -1;
  double best_freq = 0.0;
  double best_orbital = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const auto& a = doublets[i];
      const auto& b = doublets[j];
      if (std::abs(a.orbital) < 0.5 || std::abs(b.orbital) < 0.5) continue;
      if ((a.orbital > 0) != (b.orbital > 0)) continue;
      if (a.electron_spin.dot(b.electron_spin) >= 0.0) continue;
      const double freq = b.center - a.center;
      const bool tie = best_lower >= 0 && std::abs(freq - best_freq) <= 1e-6 * std::max(1.0, best_freq);
      if (best_lower < 0 || (!tie && freq < best_freq) || (tie && a.orbital > best_orbital)) {
        best_lower = i;
        best_upper = j;
        best_freq = freq;
        best_orbital = a.orbital;
      }
    }
  }
  if (best_lower < 0) {
    throw AmbiguityError("no spin-flip transition inside a single orbital branch; "
                         "pass explicit doublet indices");
  }
  return make_pair(doublets, best_lower, best_upper, "omega1");
}

TransitionPair select_transition(const Spectrum& spectrum, int lower, int upper) {
  if (lower < 0 || lower > 3 || upper < 0 || upper > 3 || lower == upper) {
    throw ConfigError("doublet indices must be two distinct values in 0..3");
  }
  return make_pair(group_doublets(spectrum), lower, upper, "custom");
}

Vec3 hyperfine_field(const PhysicalConstants& k, const Vec3& spin) {
  return Vec3(k.A_perp * spin.x(), k.A_perp * spin.y(), k.A_par * spin.z()) / std::abs(k.gamma_n);
}

Vec3 net_nuclear_field(const SystemConfig& config, const Doublet& doublet) {
  if (doublet.splitting < kMinSplittingMHz) {
    throw AmbiguityError("doublet splitting below 1e-6 MHz: nuclear quantization axis is degenerate");
  }
  const double gn = std::abs(config.constants.gamma_n);
  const Vec3 b0 = config.field.cartesian();
  const Vec3 bhf = hyperfine_field(config.constants, doublet.electron_spin);

  const Vec3 plus = b0 + bhf;
  const Vec3 minus = b0 - bhf;
  const double err_plus = std::abs(gn * plus.norm() - doublet.splitting) / doublet.splitting;
  const double err_minus = std::abs(gn * minus.norm() - doublet.splitting) / doublet.splitting;
  const double err = std::min(err_plus, err_minus);
  if (err > kSplittingMatchTolerance) {
    throw NumericalError("effective nuclear field does not reproduce the doublet splitting (" +
                         std::to_string(100.0 * err) + "% off)");
  }
  return err_plus <= err_minus ? plus : minus;
}

QuantizationGeometry nuclear_quantization_fields(const SystemConfig& config, const Spectrum&,
                                                 const TransitionPair& pair) {
  QuantizationGeometry g;
  g.B_alpha = net_nuclear_field(config, pair.lower_doublet);
  g.B_beta = net_nuclear_field(config, pair.upper_doublet);
  g.hyperfine_alpha = g.B_alpha - config.field.cartesian();
  g.hyperfine_beta = g.B_beta - config.field.cartesian();
  g.delta_theta_deg = delta_theta(g.B_alpha, g.B_beta);
  g.f_alpha = pair.lower_doublet.splitting;
  g.f_beta = pair.upper_doublet.splitting;
  g.period_alpha_ns = 1000.0 / g.f_alpha;
  g.period_beta_ns = 1000.0 / g.f_beta;
  return g;
}

double delta_theta(const Vec3& a, const Vec3& b) {
  const double na = a.stableNorm();
  const double nb = b.stableNorm();
  if (na == 0.0 || nb == 0.0) throw ConfigError("delta_theta requires nonzero vectors");
  const double c = std::clamp((a / na).dot(b / nb), -1.0, 1.0);
  return rad_to_deg(std::acos(c));
}

Vec3 doublet_nuclear_axis(const Spectrum& spectrum, const Doublet& doublet) {
  const Vec3 r = spectrum.nuclear_spin[doublet.high];
  if (r.norm() < 1e-9) throw AmbiguityError("doublet member has no nuclear polarisation");
  return r.normalized();
}

OperatingPoint analyze(const SystemConfig& config, TransitionKind kind) {
  OperatingPoint op;
  op.hamiltonian = build_hamiltonian(config);
  op.spectrum = diagonalize(op.hamiltonian.matrix);
  op.transition = select_transition(op.spectrum, kind);
  op.geometry = nuclear_quantization_fields(config, op.spectrum, op.transition);
  return op;
}

OperatingPoint analyze(const SystemConfig& config, int lower, int upper) {
  OperatingPoint op;
  op.hamiltonian = build_hamiltonian(config);
  op.spectrum = diagonalize(op.hamiltonian.matrix);
  op.transition = select_transition(op.spectrum, lower, upper);
  op.geometry = nuclear_quantization_fields(config, op.spectrum, op.transition);
  return op;
}

}  // namespace sivnuc
