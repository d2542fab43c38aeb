#pragma once

#include <array>
#include <string>
#include <vector>

#include "sivnuc/types.hpp"

namespace sivnuc {

struct StatePair {
  Vec2 initial;
  Vec2 target;
};

/// Single-qubit target in the nuclear frame basis {|up>, |down>} plus the two
/// (initial, target) pairs the synthesis objective scores.
struct GateTarget {
  std::string name;
  Mat2 matrix;
  std::array<StatePair, 2> pairs;
};

/// X, Y, Z, H, S, S^-1, T, T^-1. Aliases such as "Sdg", "Sinv" and "S-1"
/// are accepted. Default pairs: |up> -> G|up> and |+X> -> G|+X>.
GateTarget standard_gate(const std::string& name);

/// Any unitary with the default state pairs.
GateTarget custom_gate(std::string name, const Mat2& matrix);

std::vector<std::string> standard_gate_names();
std::string canonical_gate_name(const std::string& name);

Vec2 ket_up();
Vec2 ket_down();
Vec2 ket_plus_x();
Vec2 ket_plus_y();

/// |<a|b>|^2
double state_fidelity(const Vec2& a, const Vec2& b);

/// |Tr(G^dagger U)| / 2
double gate_fidelity(const Mat2& target, const Mat2& u);

/// Trace distance between the normalised Choi states of two unitaries,
/// sqrt(1 - |Tr(A^dagger B) / 2|^2). Zero iff A = e^{i phi} B.
double phase_invariant_distance(const Mat2& a, const Mat2& b);

}  // namespace sivnuc
