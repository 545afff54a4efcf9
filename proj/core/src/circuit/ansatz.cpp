#include "sidechain/circuit/ansatz.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace sidechain {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::baseline: return "baseline";
    case Regime::penalty: return "penalty";
    case Regime::xy: return "xy";
  }
  return "?";
}

Regime regime_from_string(std::string_view name) {
  if (name == "baseline") return Regime::baseline;
  if (name == "penalty" || name == "pen") return Regime::penalty;
  if (name == "xy") return Regime::xy;
  throw std::invalid_argument("unknown regime '" + std::string(name) + "'");
}

Circuit build_cost_unitary(const IsingHamiltonian& h, double gamma) {
  const int m = h.num_spins();
  Circuit c(m);
  for (int i = 0; i < m; ++i) {
    if (h.fields(i) != 0.0) c.add(Gate::rz(i, -2 * gamma * h.fields(i)));
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (h.couplings(i, j) != 0.0) c.add(Gate::rzz(i, j, 2 * gamma * h.couplings(i, j)));
    }
  }
  c.add_global_phase(-gamma * h.constant);
  return c;
}

Circuit build_mixer(Regime regime, const BlockLayout& layout, double beta) {
  Circuit c(layout.num_variables());
  if (regime != Regime::xy) {
    for (int q = 0; q < layout.num_variables(); ++q) c.add(Gate::rx(q, 2 * beta));
    return c;
  }
  for (int b = 0; b < layout.num_blocks(); ++b) {
    const int n = layout.size(b);
    const int o = layout.offset(b);
    if (n < 2) throw std::invalid_argument(fmt::format("xy mixer needs at least 2 rotamers, block {} has {}", b, n));
    if (n == 2) {
      c.add(Gate::xy(o, o + 1, beta));
      continue;
    }
    for (int j = 0; j + 1 < n; j += 2) c.add(Gate::xy(o + j, o + j + 1, beta));
    for (int j = 1; j + 1 < n; j += 2) c.add(Gate::xy(o + j, o + j + 1, beta));
    c.add(Gate::xy(o + n - 1, o, beta));
  }
  return c;
}

Circuit build_mixer(Regime regime, int num_residues, int rotamers, double beta) {
  return build_mixer(regime, BlockLayout::uniform(num_residues, rotamers), beta);
}

Circuit build_initial_state(Regime regime, const BlockLayout& layout, std::span<const int> rotamers) {
  Circuit c(layout.num_variables());
  if (!rotamers.empty() && static_cast<int>(rotamers.size()) != layout.num_blocks()) {
    throw std::invalid_argument("initial configuration needs one rotamer per residue");
  }
  for (int b = 0; b < layout.num_blocks(); ++b) {
    const int o = layout.offset(b);
    if (regime != Regime::xy) {
      const int r = rotamers.empty() ? 0 : rotamers[static_cast<std::size_t>(b)];
      if (r < 0 || r >= layout.size(b)) throw std::out_of_range(fmt::format("initial rotamer {} out of range", r));
      c.add(Gate::x(o + r));
      continue;
    }
    c.add(Gate::x(o));
    for (int j = 0; j + 1 < layout.size(b); ++j) c.add(Gate::a_gate(o + j, o + j + 1, std::numbers::pi / 4, 0.0));
  }
  return c;
}

Circuit build_initial_state(Regime regime, int num_residues, int rotamers) {
  return build_initial_state(regime, BlockLayout::uniform(num_residues, rotamers));
}

AnsatzSpec make_ansatz_spec(const RotamerProblem& problem, Regime regime, int p, std::optional<Penalty> penalty) {
  if (p < 1) throw std::invalid_argument(fmt::format("ansatz needs p >= 1, got {}", p));
  if (penalty && regime != Regime::penalty) {
    throw std::invalid_argument(fmt::format("{} regime does not take penalty terms", to_string(regime)));
  }
  if (regime == Regime::penalty && !penalty) penalty = Penalty{default_penalty(problem), PenaltyForm::one_hot};
  if (regime == Regime::xy) {
    for (int b = 0; b < problem.num_residues(); ++b) {
      if (problem.rotamers(b) < 2) {
        throw std::invalid_argument(fmt::format("xy regime needs n >= 2 rotamers; residue {} has {}", b,
                                                problem.rotamers(b)));
      }
    }
  }
  AnsatzSpec spec;
  spec.regime = regime;
  spec.p = p;
  spec.layout = problem.layout();
  spec.cost = qubo_to_ising(build_qubo(problem, penalty));
  spec.penalty = penalty;
  return spec;
}

Circuit assemble_ansatz(const AnsatzSpec& spec, std::span<const double> params) {
  if (params.size() != spec.num_params()) {
    throw std::invalid_argument(fmt::format("ansatz with p={} needs {} parameters, got {}", spec.p,
                                            spec.num_params(), params.size()));
  }
  Circuit c(spec.num_qubits());
  c.append(build_initial_state(spec.regime, spec.layout, spec.initial_rotamers), SegmentRole::state_prep);
  for (int k = 0; k < spec.p; ++k) {
    c.append(build_cost_unitary(spec.cost, params[2 * static_cast<std::size_t>(k)]), SegmentRole::cost);
    c.append(build_mixer(spec.regime, spec.layout, params[2 * static_cast<std::size_t>(k) + 1]), SegmentRole::mixer);
  }
  return c;
}

}  // namespace sidechain
