#pragma once

#include <optional>

#include <Eigen/Dense>

#include "sidechain/energy/bitstring.hpp"
#include "sidechain/energy/layout.hpp"
#include "sidechain/energy/problem.hpp"

namespace sidechain {

enum class PenaltyForm {
  /// lambda on every intra-block off-diagonal entry (pairwise ZZ terms only).
  pairwise,
  /// lambda * (sum_block x - 1)^2: off-diagonal lambda, diagonal -lambda, constant +lambda.
  one_hot,
};

struct Penalty {
  double lambda = 0.0;
  PenaltyForm form = PenaltyForm::one_hot;
};

/// Symmetric QUBO matrix; energy(x) = x^T Q x + constant.
struct QuboMatrix {
  Eigen::MatrixXd q;
  BlockLayout layout;
  double constant = 0.0;

  int dimension() const { return static_cast<int>(q.rows()); }
  std::span<const int> block_offsets() const { return layout.offsets(); }
  double energy(const Bitstring& bits) const;
};

/// Self energies on the diagonal, each pair energy split as E/2 into both
/// mirrored entries. Throws if penalty->lambda <= 0.
QuboMatrix build_qubo(const RotamerProblem& problem, std::optional<Penalty> penalty = std::nullopt);

/// max_a (|Q_aa| + 2 sum_{b != a} |Q_ab|) + 1 over the unpenalized matrix.
/// With the one_hot form this bounds any single-bit energy change, so every
/// invalid string has a strictly better neighbour and the penalized minimum
/// is valid.
double default_penalty(const RotamerProblem& problem);

}  // namespace sidechain
