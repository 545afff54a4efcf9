#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace sidechain {

enum class GateKind { X, RZ, RX, RY, RZZ, XY, A, CX };

std::string_view to_string(GateKind kind);
GateKind gate_kind_from_string(std::string_view name);

/// One- or two-qubit gate.
///
/// Conventions (theta, phi in radians):
///   RZ(t)  = exp(-i t Z / 2)        RX(t) = exp(-i t X / 2)    RY(t) = exp(-i t Y / 2)
///   RZZ(t) = exp(-i t Z Z / 2)      XY(t) = exp(-i t (XX + YY) / 2)
///   CX     control qubits[0], target qubits[1]
///   A(t,p) on the {|01>, |10>} subspace: [[cos t, e^{ip} sin t], [e^{-ip} sin t, -cos t]],
///          identity on |00> and |11>.
/// Two-qubit matrices use the local basis index bit(qubits[0]) + 2 * bit(qubits[1]).
struct Gate {
  GateKind kind = GateKind::X;
  std::array<int, 2> qubits{0, -1};
  double theta = 0.0;
  double phi = 0.0;

  static Gate x(int q);
  static Gate rz(int q, double theta);
  static Gate rx(int q, double theta);
  static Gate ry(int q, double theta);
  static Gate rzz(int a, int b, double theta);
  static Gate xy(int a, int b, double theta);
  static Gate a_gate(int a, int b, double theta, double phi);
  static Gate cx(int control, int target);

  int arity() const { return qubits[1] < 0 ? 1 : 2; }
  bool is_diagonal() const { return kind == GateKind::RZ || kind == GateKind::RZZ; }
  /// CNOTs in the standard decomposition: RZZ 2, XY 2, A 3, CX 1, else 0.
  int cnot_cost() const;

  bool operator==(const Gate&) const = default;
};

Eigen::Matrix2cd single_qubit_matrix(const Gate& gate);
Eigen::Matrix4cd two_qubit_matrix(const Gate& gate);

/// Three-CX decomposition of an A gate on (a, b), in time order:
/// CX(a,b), R(t,p)^dag on a, CX(b,a), R(t,p) on a, CX(a,b), where
/// R(t,p) = RZ(p + pi) RY(t + pi/2). Exact, including global phase.
std::vector<Gate> decompose_a_gate(const Gate& gate);

}  // namespace sidechain
