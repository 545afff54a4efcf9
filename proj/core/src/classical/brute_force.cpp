#include "sidechain/classical/brute_force.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace sidechain {

OracleResult brute_force(const RotamerProblem& problem, double cap) {
  const int n = problem.num_residues();
  double count = 1.0;
  for (int i = 0; i < n; ++i) count *= problem.rotamers(i);
  if (count > cap) {
    throw std::length_error(fmt::format("brute force over {:.3g} configurations exceeds cap {:.3g}", count, cap));
  }

  OracleResult result;
  std::vector<int> config(static_cast<std::size_t>(n), 0);
  result.ground_energy = problem.energy(config);
  result.ground_configs.push_back(config);
  result.evaluations = 1;
  for (;;) {
    int k = n - 1;
    while (k >= 0 && config[static_cast<std::size_t>(k)] + 1 == problem.rotamers(k)) {
      config[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
    ++config[static_cast<std::size_t>(k)];
    const double e = problem.energy(config);
    ++result.evaluations;
    if (e < result.ground_energy - kTieTolerance) {
      result.ground_energy = e;
      result.ground_configs.assign(1, config);
    } else if (std::abs(e - result.ground_energy) <= kTieTolerance) {
      result.ground_energy = std::min(result.ground_energy, e);
      result.ground_configs.push_back(config);
    }
  }
  // A later, slightly lower tie can push earlier entries past the tolerance.
  std::erase_if(result.ground_configs,
                [&](const auto& c) { return problem.energy(c) > result.ground_energy + kTieTolerance; });
  return result;
}

}  // namespace sidechain
