#include "sidechain/circuit/depth.hpp"

#include <algorithm>
#include <cstdlib>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "sidechain/energy/problem.hpp"

namespace sidechain {
namespace {

SegmentSchedule first_fit(const Circuit& circuit, const Segment& seg) {
  SegmentSchedule s{seg.role, true, 0, {}};
  std::vector<std::vector<bool>> busy;  // busy[layer][qubit]
  std::vector<int> width;
  for (std::size_t g = seg.begin; g < seg.end; ++g) {
    const auto& gate = circuit.gates()[g];
    if (gate.arity() != 2 || gate.cnot_cost() == 0) continue;
    const auto a = static_cast<std::size_t>(gate.qubits[0]);
    const auto b = static_cast<std::size_t>(gate.qubits[1]);
    std::size_t layer = 0;
    while (layer < busy.size() && (busy[layer][a] || busy[layer][b])) ++layer;
    if (layer == busy.size()) {
      busy.emplace_back(static_cast<std::size_t>(circuit.num_qubits()), false);
      s.layers.emplace_back();
      width.push_back(0);
    }
    busy[layer][a] = busy[layer][b] = true;
    s.layers[layer].push_back(g);
    width[layer] = std::max(width[layer], gate.cnot_cost());
  }
  for (int w : width) s.cnot_layers += w;
  return s;
}

SegmentSchedule asap(const Circuit& circuit, const Segment& seg) {
  SegmentSchedule s{seg.role, false, 0, {}};
  std::vector<int> ready(static_cast<std::size_t>(circuit.num_qubits()), 0);
  for (std::size_t g = seg.begin; g < seg.end; ++g) {
    const auto& gate = circuit.gates()[g];
    const int w = gate.cnot_cost();
    if (w == 0) continue;
    const auto a = static_cast<std::size_t>(gate.qubits[0]);
    const auto b = static_cast<std::size_t>(gate.qubits[1]);
    const int start = std::max(ready[a], ready[b]);
    ready[a] = ready[b] = start + w;
    if (static_cast<int>(s.layers.size()) < start + w) s.layers.resize(static_cast<std::size_t>(start + w));
    for (int l = start; l < start + w; ++l) s.layers[static_cast<std::size_t>(l)].push_back(g);
  }
  s.cnot_layers = static_cast<int>(s.layers.size());
  return s;
}

}  // namespace

DepthReport logical_depth(const Circuit& circuit, bool include_state_prep) {
  DepthReport report;
  for (const auto& seg : circuit.segments()) {
    if (seg.role == SegmentRole::state_prep && !include_state_prep) continue;
    bool diagonal = true;
    for (std::size_t g = seg.begin; g < seg.end; ++g) {
      report.cnot_count += circuit.gates()[g].cnot_cost();
      diagonal = diagonal && circuit.gates()[g].is_diagonal();
    }
    auto s = diagonal ? first_fit(circuit, seg) : asap(circuit, seg);
    report.cd += s.cnot_layers;
    report.trace.push_back(std::move(s));
  }
  return report;
}

std::string DepthReport::describe() const {
  std::string out = fmt::format("cd={} cnot_count={}\n", cd, cnot_count);
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const auto& s = trace[k];
    out += fmt::format("  segment {} {} ({}) cnot_layers={}\n", k, to_string(s.role),
                       s.commuting ? "first-fit" : "asap", s.cnot_layers);
    for (std::size_t l = 0; l < s.layers.size(); ++l) {
      out += fmt::format("    layer {}: gates {}\n", l, fmt::join(s.layers[l], ","));
    }
  }
  return out;
}

LineRoutingEstimate lnn_swap_estimate(const Circuit& circuit) {
  LineRoutingEstimate e;
  for (const auto& g : circuit.gates()) {
    e.cnot_count += g.cnot_cost();
    if (g.arity() != 2) continue;
    const int dist = std::abs(g.qubits[0] - g.qubits[1]);
    if (dist > 1) e.swaps += 2LL * (dist - 1);
  }
  e.cnot_count += 3 * e.swaps;
  return e;
}

DepthRow depth_row(Regime regime, int num_residues, int rotamers, int p) {
  // Distinct nonzero values keep every field and coupling present.
  ProblemBuilder builder(std::vector<int>(static_cast<std::size_t>(num_residues), rotamers), true);
  for (int i = 0; i < num_residues; ++i) {
    for (int a = 0; a < rotamers; ++a) {
      builder.set_self_energy(i, a, 1.0 + 0.01 * a);
      if (i + 1 < num_residues) {
        for (int b = 0; b < rotamers; ++b) builder.set_pair_energy(i, a, i + 1, b, 0.5 + 0.001 * (a * rotamers + b));
      }
    }
  }
  const auto spec = make_ansatz_spec(builder.build(), regime, p);
  const std::vector<double> params(spec.num_params(), 0.3);
  const auto circuit = assemble_ansatz(spec, params);
  const auto with_prep = logical_depth(circuit, true);
  return {regime, num_residues, rotamers, p, logical_depth(circuit, false).cd, with_prep.cd, with_prep.cnot_count};
}

nlohmann::json to_json(const DepthRow& row) {
  return {{"regime", std::string(to_string(row.regime))},
          {"N", row.num_residues},
          {"n", row.rotamers},
          {"p", row.p},
          {"cd", row.cd},
          {"cd_sp", row.cd_sp},
          {"cnot_count", row.cnot_count}};
}

}  // namespace sidechain
