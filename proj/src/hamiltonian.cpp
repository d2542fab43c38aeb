#include "sivnuc/hamiltonian.hpp"

#include "sivnuc/operators.hpp"

namespace sivnuc {

Mat8 HamiltonianTerms::sum() const {
  return electron_zeeman + nuclear_zeeman + hyperfine + spin_orbit + strain;
}

HamiltonianTerms build_terms(const SystemConfig& config) {
  const auto& ops = operators();
  const auto& k = config.constants;
  const Vec3 b = config.field.cartesian();

  HamiltonianTerms t;
  t.electron_zeeman = k.gamma_e * (b.x() * ops.Sx() + b.y() * ops.Sy() + b.z() * ops.Sz()) +
                      (k.gamma_L * k.q * b.z()) * ops.Lz;
  t.nuclear_zeeman = -k.gamma_n * (b.x() * ops.Ix() + b.y() * ops.Iy() + b.z() * ops.Iz());
  t.hyperfine = k.A_par * ops.Sz() * ops.Iz() + k.A_perp * (ops.Sx() * ops.Ix() + ops.Sy() * ops.Iy());
  t.spin_orbit = -k.lambda_SO * ops.Lz * ops.Sz();

  Mat2 strain2;
  strain2 << config.strain.alpha, config.strain.beta, config.strain.beta, -config.strain.alpha;
  const auto tr = strain_transform();
  t.strain = tr.T * kron3(strain2, Mat2::Identity(), Mat2::Identity()) * tr.T_inv;
  return t;
}

Hamiltonian build_hamiltonian(const SystemConfig& config) {
  config.validate();
  Hamiltonian h;
  h.terms = build_terms(config);
  h.matrix = h.terms.sum();
  h.config = config;
  return h;
}

double spectral_norm(const Mat8& m) {
  Eigen::JacobiSVD<Mat8> svd(m);
  return svd.singularValues()(0);
}

}  // namespace sivnuc
