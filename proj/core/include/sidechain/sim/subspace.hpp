#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sidechain/circuit/circuit.hpp"
#include "sidechain/energy/bitstring.hpp"
#include "sidechain/energy/layout.hpp"
#include "sidechain/util/rng.hpp"

namespace sidechain {

/// Exact state restricted to per-block Hamming weight 0 or 1.
///
/// Block b has local states 0 (all qubits 0) and k + 1 (only qubit k set), so
/// the dimension is prod_b (n_b + 1) instead of 2^M. Supports X, RZ, RZZ and
/// intra-block XY and A gates, i.e. every gate of an xy-regime ansatz.
/// Applying a gate that would leave the subspace throws std::domain_error.
/// Runs of consecutive diagonal gates are fused into one pass.
class BlockSubspaceState {
 public:
  explicit BlockSubspaceState(BlockLayout layout);

  const BlockLayout& layout() const { return layout_; }
  int num_qubits() const { return layout_.num_variables(); }
  std::size_t dimension() const { return static_cast<std::size_t>(amp_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }

  void apply(const Gate& gate);
  void run(const Circuit& circuit);

  double norm() const { return amp_.norm(); }
  Eigen::VectorXd probabilities() const { return amp_.cwiseAbs2(); }
  /// Probability of states with some empty block.
  double invalid_mass() const;

  Bitstring bitstring_of(std::size_t index) const;
  /// Subspace index of a bitstring, or -1 if outside the subspace.
  long long index_of(const Bitstring& bits) const;

  std::vector<Bitstring> sample(std::size_t shots, Rng& rng) const;
  std::vector<Bitstring> sample(std::size_t shots, std::uint64_t seed) const;

  /// Embedding into the full 2^M vector (M <= 30).
  Eigen::VectorXcd to_statevector() const;

 private:
  struct Location {
    int block;
    int local;  // local state that has this qubit set
  };
  Location locate(int qubit) const;
  void apply_diagonal_run(const std::vector<Gate>& gates, std::size_t begin, std::size_t end);
  void apply_local_pair(int block, int u, int v, const Eigen::Matrix2cd& m);
  void apply_x(int qubit);

  BlockLayout layout_;
  std::vector<std::size_t> stride_;
  Eigen::VectorXcd amp_;
};

}  // namespace sidechain
