#include "sidechain/circuit/gate_list.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace sidechain {
namespace {

bool has_angle(GateKind k) { return k != GateKind::X && k != GateKind::CX; }

SegmentRole role_from_string(const std::string& s) {
  for (auto r : {SegmentRole::state_prep, SegmentRole::cost, SegmentRole::mixer, SegmentRole::other}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown segment role '" + s + "'");
}

}  // namespace

void write_gate_list(const Circuit& circuit, std::ostream& out) {
  out << "qubits " << circuit.num_qubits() << '\n';
  if (circuit.global_phase() != 0.0) out << fmt::format("phase {:.17g}\n", circuit.global_phase());
  for (const auto& seg : circuit.segments()) {
    out << "# segment " << to_string(seg.role) << '\n';
    for (std::size_t g = seg.begin; g < seg.end; ++g) {
      const auto& gate = circuit.gates()[g];
      out << to_string(gate.kind) << ' ' << gate.qubits[0];
      if (gate.arity() == 2) out << ' ' << gate.qubits[1];
      if (has_angle(gate.kind)) out << fmt::format(" {:.17g}", gate.theta);
      if (gate.kind == GateKind::A) out << fmt::format(" {:.17g}", gate.phi);
      out << '\n';
    }
  }
}

Circuit read_gate_list(std::istream& in) {
  std::string line;
  int lineno = 0;
  int qubits = -1;
  while (qubits < 0 && std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    if (word != "qubits" || !(ls >> qubits) || qubits < 0) {
      throw std::invalid_argument(fmt::format("line {}: expected 'qubits <M>'", lineno));
    }
  }
  if (qubits < 0) throw std::invalid_argument("gate list has no 'qubits' line");
  Circuit c(qubits);
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "#") {
      std::string tag, role;
      if (ls >> tag >> role && tag == "segment") c.begin_segment(role_from_string(role));
      continue;
    }
    if (word[0] == '#') continue;
    if (word == "phase") {
      double phase = 0;
      if (!(ls >> phase)) throw std::invalid_argument(fmt::format("line {}: bad phase", lineno));
      c.add_global_phase(phase);
      continue;
    }
    Gate g;
    try {
      g.kind = gate_kind_from_string(word);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(fmt::format("line {}: {}", lineno, e.what()));
    }
    const bool two = g.kind == GateKind::RZZ || g.kind == GateKind::XY || g.kind == GateKind::A || g.kind == GateKind::CX;
    bool ok = static_cast<bool>(ls >> g.qubits[0]);
    if (two) ok = ok && static_cast<bool>(ls >> g.qubits[1]);
    if (has_angle(g.kind)) ok = ok && static_cast<bool>(ls >> g.theta);
    if (g.kind == GateKind::A) ok = ok && static_cast<bool>(ls >> g.phi);
    std::string extra;
    if (!ok || (ls >> extra)) throw std::invalid_argument(fmt::format("line {}: malformed {} gate", lineno, word));
    if (two && g.qubits[0] == g.qubits[1]) {
      throw std::invalid_argument(fmt::format("line {}: two-qubit gate on one qubit", lineno));
    }
    c.add(g);
  }
  return c;
}

}  // namespace sidechain
