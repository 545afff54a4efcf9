#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "sidechain/circuit/gate.hpp"

namespace sidechain {

enum class SegmentRole { state_prep, cost, mixer, other };

std::string_view to_string(SegmentRole role);

/// Contiguous run of gates with one role. Segments are scheduling barriers.
struct Segment {
  SegmentRole role = SegmentRole::other;
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Ordered gate list over a fixed number of qubits.
///
/// global_phase is the scalar phase the circuit should carry but does not emit
/// as gates (e.g. exp(-i gamma k) from a Hamiltonian constant).
class Circuit {
 public:
  explicit Circuit(int num_qubits = 0);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<Segment>& segments() const { return segments_; }
  double global_phase() const { return global_phase_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  /// Appends to the trailing segment (role `other` if none is open).
  void add(const Gate& gate);
  /// Starts a new segment; subsequent add() calls extend it.
  void begin_segment(SegmentRole role);
  /// Appends every gate of `fragment` as one new segment with `role`.
  void append(const Circuit& fragment, SegmentRole role);
  void add_global_phase(double phase) { global_phase_ += phase; }

  std::size_t count(GateKind kind) const;
  std::size_t two_qubit_count() const;

 private:
  int num_qubits_ = 0;
  std::vector<Gate> gates_;
  std::vector<Segment> segments_;
  double global_phase_ = 0.0;
};

}  // namespace sidechain
