#pragma once

#include <array>

#include "sivnuc/types.hpp"

namespace sivnuc {

/// Spin and orbital operators lifted to the 8-dimensional product space.
///
/// Basis ordering (frozen): {e+, e-} x {up, down} x {nuc up, nuc down}, i.e.
/// index = 4 * orbital + 2 * electron + nucleus with 0 meaning e+/up.
/// Spin operators have eigenvalues +-1/2; Lz has eigenvalues +-1.
struct OperatorSet {
  std::array<Mat8, 3> S;
  std::array<Mat8, 3> I;
  Mat8 Lz;

  const Mat8& Sx() const { return S[0]; }
  const Mat8& Sy() const { return S[1]; }
  const Mat8& Sz() const { return S[2]; }
  const Mat8& Ix() const { return I[0]; }
  const Mat8& Iy() const { return I[1]; }
  const Mat8& Iz() const { return I[2]; }
};

OperatorSet build_operators();

/// Shared immutable instance of build_operators().
const OperatorSet& operators();

/// Kronecker product orbital x electron x nucleus of three 2x2 factors.
Mat8 kron3(const Mat2& orbital, const Mat2& electron, const Mat2& nucleus);

/// Orbital basis change used by the strain term: T = [[-1, -i], [1, -i]] x 1_4
/// and its exact inverse. T is sqrt(2) times a unitary, not unitary itself.
struct StrainTransform {
  Mat8 T;
  Mat8 T_inv;
};

StrainTransform strain_transform();

/// Pauli matrices (not halved).
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

}  // namespace sivnuc
