#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sidechain/circuit/circuit.hpp"
#include "sidechain/energy/bitstring.hpp"
#include "sidechain/util/rng.hpp"

namespace sidechain {

struct MpsOptions {
  /// Largest bond dimension kept after a two-site update. 0 means unbounded.
  int max_bond = 64;
  /// Largest relative weight sum_{dropped} s^2 / sum s^2 allowed per split.
  double cutoff = 1e-10;
};

/// Matrix product state with one site per qubit, in qubit order.
///
/// Site q holds two matrices (physical index 0 and 1) of shape
/// left_bond x right_bond. The state is kept in mixed-canonical form around
/// a movable orthogonality center. Two-qubit gates on non-adjacent sites are
/// routed with SWAPs to adjacency and back.
class MpsState {
 public:
  explicit MpsState(int num_qubits, MpsOptions options = {});

  int num_qubits() const { return static_cast<int>(sites_.size()); }
  const MpsOptions& options() const { return options_; }

  void apply(const Gate& gate);
  /// Applies every gate and the circuit's global phase.
  void run(const Circuit& circuit);

  int bond_dimension(int bond) const;  // bond between sites bond and bond+1
  int max_bond_dimension() const;
  int max_bond_reached() const { return max_bond_reached_; }
  double discarded_weight() const { return discarded_; }
  double norm() const;

  /// Sequential conditional sampling. Moves the center to site 0.
  std::vector<Bitstring> sample(std::size_t shots, Rng& rng);
  std::vector<Bitstring> sample(std::size_t shots, std::uint64_t seed);

  /// Full contraction (num_qubits <= 24); qubit k is bit k of the index.
  Eigen::VectorXcd to_statevector() const;

 private:
  using Site = std::array<Eigen::MatrixXcd, 2>;

  void move_center(int target);
  void apply_adjacent(int left, const Eigen::Matrix4cd& u);
  void swap_adjacent(int left);
  void check_qubit(int q) const;

  std::vector<Site> sites_;
  MpsOptions options_;
  int center_ = 0;
  int max_bond_reached_ = 1;
  double discarded_ = 0.0;
};

}  // namespace sidechain
