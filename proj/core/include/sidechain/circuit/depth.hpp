#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sidechain/circuit/ansatz.hpp"
#include "sidechain/circuit/circuit.hpp"

namespace sidechain {

/// Schedule of one segment's two-qubit gates.
///
/// A segment made only of diagonal gates is commuting: its two-qubit gates
/// are packed first-fit, in order, into the earliest layer where neither
/// qubit is busy, and each layer costs its largest CNOT count. Other segments
/// are scheduled in order, as soon as possible, at single-CNOT resolution.
/// `layers` lists gate indices (into Circuit::gates) per layer; for ASAP
/// segments a gate appears in each CNOT layer it occupies.
struct SegmentSchedule {
  SegmentRole role = SegmentRole::other;
  bool commuting = false;
  int cnot_layers = 0;
  std::vector<std::vector<std::size_t>> layers;
};

struct DepthReport {
  /// CNOT layers, summed over segments (segments are barriers).
  int cd = 0;
  int cnot_count = 0;
  std::vector<SegmentSchedule> trace;

  std::string describe() const;
};

DepthReport logical_depth(const Circuit& circuit, bool include_state_prep);

/// Extra CNOTs if every two-qubit gate were routed on a line of qubits by
/// SWAPs (3 CX each) to adjacency and back. A generic estimate only; it does
/// not model any particular device.
struct LineRoutingEstimate {
  long long swaps = 0;
  long long cnot_count = 0;
};
LineRoutingEstimate lnn_swap_estimate(const Circuit& circuit);

/// Depth of a p-layer ansatz on a uniform (N, n) instance whose pair tables
/// and fields are all nonzero, so every coupling a real instance could have
/// is present.
struct DepthRow {
  Regime regime = Regime::xy;
  int num_residues = 0;
  int rotamers = 0;
  int p = 1;
  int cd = 0;
  int cd_sp = 0;
  int cnot_count = 0;
};
DepthRow depth_row(Regime regime, int num_residues, int rotamers, int p = 1);
nlohmann::json to_json(const DepthRow& row);

}  // namespace sidechain
