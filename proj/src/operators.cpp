#include "sivnuc/operators.hpp"

namespace sivnuc {

namespace {

Eigen::Matrix4cd kron(const Mat2& a, const Mat2& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

Mat2 pauli_x() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Mat2 pauli_y() {
  const Complex i(0.0, 1.0);
  Mat2 m;
  m << 0.0, -i, i, 0.0;
  return m;
}

Mat2 pauli_z() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Mat8 kron3(const Mat2& orbital, const Mat2& electron, const Mat2& nucleus) {
  const Eigen::Matrix4cd inner = kron(electron, nucleus);
  Mat8 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<4, 4>(4 * i, 4 * j) = orbital(i, j) * inner;
  return out;
}

OperatorSet build_operators() {
  const Mat2 id = Mat2::Identity();
  const std::array<Mat2, 3> half{0.5 * pauli_x(), 0.5 * pauli_y(), 0.5 * pauli_z()};

  OperatorSet ops;
  for (int k = 0; k < 3; ++k) {
    ops.S[k] = kron3(id, half[k], id);
    ops.I[k] = kron3(id, id, half[k]);
  }
  ops.Lz = kron3(pauli_z(), id, id);
  return ops;
}

const OperatorSet& operators() {
  static const OperatorSet instance = build_operators();
  return instance;
}

StrainTransform strain_transform() {
  const Complex i(0.0, 1.0);
  Mat2 t;
  t << -1.0, -i, 1.0, -i;
  // det = 2i, so the inverse is adj(t) / det.
  Mat2 t_inv;
  t_inv << -i, i, -1.0, -1.0;
  t_inv /= Complex(0.0, 2.0);

  const Mat2 id = Mat2::Identity();
  return StrainTransform{kron3(t, id, id), kron3(t_inv, id, id)};
}

}  // namespace sivnuc
