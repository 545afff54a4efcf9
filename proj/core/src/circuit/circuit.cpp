#include "sidechain/circuit/circuit.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace sidechain {

std::string_view to_string(SegmentRole role) {
  switch (role) {
    case SegmentRole::state_prep: return "state_prep";
    case SegmentRole::cost: return "cost";
    case SegmentRole::mixer: return "mixer";
    case SegmentRole::other: return "other";
  }
  return "?";
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0) throw std::invalid_argument("qubit count must be non-negative");
}

void Circuit::add(const Gate& gate) {
  for (int k = 0; k < gate.arity(); ++k) {
    const int q = gate.qubits[static_cast<std::size_t>(k)];
    if (q < 0 || q >= num_qubits_) {
      throw std::out_of_range(fmt::format("{} gate on qubit {} outside {}-qubit circuit", to_string(gate.kind), q,
                                          num_qubits_));
    }
  }
  if (segments_.empty()) segments_.push_back({SegmentRole::other, gates_.size(), gates_.size()});
  gates_.push_back(gate);
  segments_.back().end = gates_.size();
}

void Circuit::begin_segment(SegmentRole role) {
  if (!segments_.empty() && segments_.back().begin == segments_.back().end) {
    segments_.back().role = role;
    return;
  }
  segments_.push_back({role, gates_.size(), gates_.size()});
}

void Circuit::append(const Circuit& fragment, SegmentRole role) {
  if (fragment.num_qubits() > num_qubits_) {
    throw std::invalid_argument("fragment uses more qubits than the circuit");
  }
  begin_segment(role);
  for (const auto& g : fragment.gates()) add(g);
  global_phase_ += fragment.global_phase();
}

std::size_t Circuit::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

std::size_t Circuit::two_qubit_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [](const Gate& g) { return g.arity() == 2; }));
}

}  // namespace sidechain
