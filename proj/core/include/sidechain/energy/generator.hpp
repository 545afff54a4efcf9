#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sidechain/energy/problem.hpp"

namespace sidechain {

/// Options for the seeded synthetic instance generator.
///
/// Self energies are drawn from U[self_min, self_max] and nearest-neighbor
/// pair energies from U[pair_min, pair_max], both rounded to `decimals`
/// places. When `decay` is set the problem is generated with full pair tables:
/// entries at residue distance d > 1 are U[-1, 1] * m1 * decay^(d-1), where m1
/// is the largest |E| among the generated d = 1 entries, truncated toward zero
/// so the bound survives rounding.
struct GeneratorOptions {
  std::vector<int> rotamers_per_residue;
  double self_min = -1.0;
  double self_max = 1.0;
  double pair_min = -0.5;
  double pair_max = 0.5;
  int decimals = 3;
  std::optional<double> decay;
  std::uint64_t seed = 0;

  static GeneratorOptions uniform(int num_residues, int rotamers, std::uint64_t seed);
};

RotamerProblem generate_problem(const GeneratorOptions& options);

}  // namespace sidechain
