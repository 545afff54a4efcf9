#include "sidechain/circuit/gate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sidechain {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

Gate one(GateKind kind, int q, double theta = 0.0) {
  if (q < 0) throw std::out_of_range("qubit index must be non-negative");
  return Gate{kind, {q, -1}, theta, 0.0};
}

Gate two(GateKind kind, int a, int b, double theta = 0.0, double phi = 0.0) {
  if (a < 0 || b < 0) throw std::out_of_range("qubit index must be non-negative");
  if (a == b) throw std::invalid_argument("two-qubit gate needs distinct qubits");
  return Gate{kind, {a, b}, theta, phi};
}

}  // namespace

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::RZ: return "RZ";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZZ: return "RZZ";
    case GateKind::XY: return "XY";
    case GateKind::A: return "A";
    case GateKind::CX: return "CX";
  }
  return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
  for (auto k : {GateKind::X, GateKind::RZ, GateKind::RX, GateKind::RY, GateKind::RZZ, GateKind::XY, GateKind::A,
                 GateKind::CX}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

Gate Gate::x(int q) { return one(GateKind::X, q); }
Gate Gate::rz(int q, double theta) { return one(GateKind::RZ, q, theta); }
Gate Gate::rx(int q, double theta) { return one(GateKind::RX, q, theta); }
Gate Gate::ry(int q, double theta) { return one(GateKind::RY, q, theta); }
Gate Gate::rzz(int a, int b, double theta) { return two(GateKind::RZZ, a, b, theta); }
Gate Gate::xy(int a, int b, double theta) { return two(GateKind::XY, a, b, theta); }
Gate Gate::a_gate(int a, int b, double theta, double phi) { return two(GateKind::A, a, b, theta, phi); }
Gate Gate::cx(int control, int target) { return two(GateKind::CX, control, target); }

int Gate::cnot_cost() const {
  switch (kind) {
    case GateKind::RZZ:
    case GateKind::XY: return 2;
    case GateKind::A: return 3;
    case GateKind::CX: return 1;
    default: return 0;
  }
}

Eigen::Matrix2cd single_qubit_matrix(const Gate& gate) {
  const double c = std::cos(gate.theta / 2);
  const double s = std::sin(gate.theta / 2);
  Eigen::Matrix2cd m;
  switch (gate.kind) {
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::RZ: m << std::exp(-kI * (gate.theta / 2)), 0, 0, std::exp(kI * (gate.theta / 2)); break;
    case GateKind::RX: m << c, -kI * s, -kI * s, c; break;
    case GateKind::RY: m << c, -s, s, c; break;
    default: throw std::invalid_argument("not a single-qubit gate: " + std::string(to_string(gate.kind)));
  }
  return m;
}

Eigen::Matrix4cd two_qubit_matrix(const Gate& gate) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  switch (gate.kind) {
    case GateKind::RZZ: {
      const cd even = std::exp(-kI * (gate.theta / 2));
      const cd odd = std::exp(kI * (gate.theta / 2));
      m.diagonal() << even, odd, odd, even;
      break;
    }
    case GateKind::XY: {
      const double c = std::cos(gate.theta);
      const double s = std::sin(gate.theta);
      m(0, 0) = m(3, 3) = 1;
      m(1, 1) = m(2, 2) = c;
      m(1, 2) = m(2, 1) = -kI * s;
      break;
    }
    case GateKind::A: {
      const double c = std::cos(gate.theta);
      const double s = std::sin(gate.theta);
      m(0, 0) = m(3, 3) = 1;
      m(1, 1) = c;
      m(2, 2) = -c;
      m(1, 2) = std::exp(kI * gate.phi) * s;
      m(2, 1) = std::exp(-kI * gate.phi) * s;
      break;
    }
    case GateKind::CX:
      // control is bit 0 of the local index, target bit 1: |01> <-> |11>.
      m(0, 0) = m(2, 2) = 1;
      m(3, 1) = m(1, 3) = 1;
      break;
    default: throw std::invalid_argument("not a two-qubit gate: " + std::string(to_string(gate.kind)));
  }
  return m;
}

std::vector<Gate> decompose_a_gate(const Gate& gate) {
  if (gate.kind != GateKind::A) throw std::invalid_argument("decompose_a_gate expects an A gate");
  const int a = gate.qubits[0];
  const int b = gate.qubits[1];
  const double pi = std::numbers::pi;
  return {
      Gate::cx(a, b),
      Gate::rz(a, -gate.phi - pi),
      Gate::ry(a, -gate.theta - pi / 2),
      Gate::cx(b, a),
      Gate::ry(a, gate.theta + pi / 2),
      Gate::rz(a, gate.phi + pi),
      Gate::cx(a, b),
  };
}

}  // namespace sidechain
