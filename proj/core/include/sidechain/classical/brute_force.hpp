#pragma once

#include <vector>

#include "sidechain/energy/problem.hpp"

namespace sidechain {

struct OracleResult {
  double ground_energy = 0.0;
  /// Every configuration within kTieTolerance of ground_energy, in
  /// enumeration order (residue 0 varies slowest).
  std::vector<std::vector<int>> ground_configs;
  long long evaluations = 0;
};

constexpr double kTieTolerance = 1e-9;

/// Enumerates the prod_i n_i valid configurations. Throws std::length_error
/// when that count exceeds `cap`.
OracleResult brute_force(const RotamerProblem& problem, double cap = 1e8);

}  // namespace sidechain
