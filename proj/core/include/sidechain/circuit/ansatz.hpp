#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sidechain/circuit/circuit.hpp"
#include "sidechain/energy/ising.hpp"
#include "sidechain/energy/problem.hpp"
#include "sidechain/energy/qubo.hpp"

namespace sidechain {

/// Constraint handling: none, a cost penalty, or a weight-preserving mixer.
enum class Regime { baseline, penalty, xy };

std::string_view to_string(Regime regime);
Regime regime_from_string(std::string_view name);

/// exp(-i gamma H) for a diagonal Ising H: RZ(-2 gamma h_i) for every nonzero
/// field, then RZZ(2 gamma J_ij) for every nonzero coupling in (i, j)
/// lexicographic order. The constant enters as global phase -gamma k.
Circuit build_cost_unitary(const IsingHamiltonian& h, double gamma);

/// baseline / penalty: RX(2 beta) on every qubit.
/// xy: XY(beta) on the ring (j, j+1 mod n) of every block, emitted by edge
/// colour (even edges, odd edges, then the wrap-around edge for odd n). A
/// two-qubit block gets a single XY term. Blocks of size 1 are rejected.
Circuit build_mixer(Regime regime, const BlockLayout& layout, double beta);
Circuit build_mixer(Regime regime, int num_residues, int rotamers, double beta);

/// baseline / penalty: X on qubit `rotamers[b]` of each block (rotamer 0 when
/// empty). xy: X on the first qubit of each block followed by the chain
/// A(pi/4, 0) on (0,1), (1,2), ..., producing a positive superposition over
/// the block's weight-1 states.
Circuit build_initial_state(Regime regime, const BlockLayout& layout, std::span<const int> rotamers = {});
Circuit build_initial_state(Regime regime, int num_residues, int rotamers);

struct AnsatzSpec {
  Regime regime = Regime::xy;
  int p = 1;
  BlockLayout layout;
  /// Cost Hamiltonian, including penalty terms for Regime::penalty.
  IsingHamiltonian cost;
  std::optional<Penalty> penalty;
  /// Initial valid configuration for baseline / penalty.
  std::vector<int> initial_rotamers;

  int num_qubits() const { return layout.num_variables(); }
  std::size_t num_params() const { return 2 * static_cast<std::size_t>(p); }
};

/// Penalty regime defaults to the one_hot form with default_penalty(problem).
/// Passing a penalty with any other regime is an error.
AnsatzSpec make_ansatz_spec(const RotamerProblem& problem, Regime regime, int p,
                            std::optional<Penalty> penalty = std::nullopt);

/// Initial state, then cost(gamma_k) and mixer(beta_k) for k = 1..p.
/// params are ordered gamma_1, beta_1, ..., gamma_p, beta_p.
Circuit assemble_ansatz(const AnsatzSpec& spec, std::span<const double> params);

}  // namespace sidechain
