#pragma once

#include <iosfwd>

#include "sidechain/circuit/circuit.hpp"

namespace sidechain {

/// Plain-text gate list. First line "qubits <M>", optional "phase <value>",
/// then one gate per line: kind, qubit indices, then angles, e.g.
///
///   qubits 4
///   X 0
///   A 0 1 0.785398163397448 0
///   RZZ 1 2 -0.25
///
/// Angles are printed with 17 significant digits so a round trip is exact.
/// Segment boundaries are written as "# segment <role>" comment lines.
void write_gate_list(const Circuit& circuit, std::ostream& out);
Circuit read_gate_list(std::istream& in);

}  // namespace sidechain
