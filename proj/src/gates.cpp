#include "sivnuc/gates.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sivnuc/operators.hpp"

namespace sivnuc {

namespace {

bool is_unitary(const Mat2& u) { return (u.adjoint() * u - Mat2::Identity()).norm() <= 1e-12; }

Mat2 phase_gate(double phi) {
  Mat2 m = Mat2::Identity();
  m(1, 1) = std::polar(1.0, phi);
  return m;
}

}  // namespace

Vec2 ket_up() { return Vec2(1.0, 0.0); }
Vec2 ket_down() { return Vec2(0.0, 1.0); }
Vec2 ket_plus_x() { return Vec2(1.0, 1.0) / std::sqrt(2.0); }
Vec2 ket_plus_y() { return Vec2(Complex(1.0, 0.0), Complex(0.0, 1.0)) / std::sqrt(2.0); }

std::vector<std::string> standard_gate_names() { return {"X", "Y", "Z", "H", "S", "S^-1", "T", "T^-1"}; }

std::string canonical_gate_name(const std::string& name) {
  static const std::map<std::string, std::string> aliases{
      {"X", "X"},       {"Y", "Y"},       {"Z", "Z"},        {"H", "H"},       {"S", "S"},
      {"T", "T"},       {"S^-1", "S^-1"}, {"S-1", "S^-1"},   {"Sinv", "S^-1"}, {"Sdg", "S^-1"},
      {"T^-1", "T^-1"}, {"T-1", "T^-1"},  {"Tinv", "T^-1"},  {"Tdg", "T^-1"},
  };
  const auto it = aliases.find(name);
  if (it == aliases.end()) throw ConfigError("unknown gate '" + name + "'");
  return it->second;
}

GateTarget custom_gate(std::string name, const Mat2& matrix) {
  if (!is_unitary(matrix)) throw ConfigError("gate '" + name + "' is not unitary");
  GateTarget g;
  g.name = std::move(name);
  g.matrix = matrix;
  g.pairs[0] = StatePair{ket_up(), matrix * ket_up()};
  g.pairs[1] = StatePair{ket_plus_x(), matrix * ket_plus_x()};
  return g;
}

GateTarget standard_gate(const std::string& name) {
  const std::string n = canonical_gate_name(name);
  Mat2 m;
  if (n == "X") {
    m = pauli_x();
  } else if (n == "Y") {
    m = pauli_y();
  } else if (n == "Z") {
    m = pauli_z();
  } else if (n == "H") {
    m = (pauli_x() + pauli_z()) / std::sqrt(2.0);
  } else if (n == "S") {
    m = phase_gate(kPi / 2);
  } else if (n == "S^-1") {
    m = phase_gate(-kPi / 2);
  } else if (n == "T") {
    m = phase_gate(kPi / 4);
  } else {
    m = phase_gate(-kPi / 4);
  }
  return custom_gate(n, m);
}

double state_fidelity(const Vec2& a, const Vec2& b) { return std::norm(a.dot(b)); }

double gate_fidelity(const Mat2& target, const Mat2& u) { return std::abs((target.adjoint() * u).trace()) / 2.0; }

double phase_invariant_distance(const Mat2& a, const Mat2& b) {
  const double overlap = std::min(1.0, std::abs((a.adjoint() * b).trace()) / 2.0);
  return std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
}

}  // namespace sivnuc
