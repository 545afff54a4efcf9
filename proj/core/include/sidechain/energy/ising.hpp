#pragma once

#include <Eigen/Dense>

#include "sidechain/energy/bitstring.hpp"
#include "sidechain/energy/qubo.hpp"

namespace sidechain {

/// H(z) = sum_{i<j} J_ij z_i z_j - sum_i h_i z_i + k over spins z in {-1, +1}.
///
/// Spin z_i = 1 - 2 x_i, so bit 0 is spin up. Only the strict upper triangle
/// of J is populated.
struct IsingHamiltonian {
  Eigen::MatrixXd couplings;
  Eigen::VectorXd fields;
  double constant = 0.0;

  int num_spins() const { return static_cast<int>(fields.size()); }
  double energy(const Bitstring& bits) const;
  /// Energy of basis state `index` (bit k = x_k); num_spins() <= 64.
  double energy(std::uint64_t index) const;
};

/// Exact expansion of x^T Q x + c under x = (1 - z) / 2. Throws if Q is not
/// symmetric to 1e-12 relative.
IsingHamiltonian qubo_to_ising(const QuboMatrix& qubo);

/// Energies of all 2^M basis states, indexed by basis index. M <= 30.
Eigen::VectorXd diagonal_energies(const IsingHamiltonian& h);

}  // namespace sidechain
