#include "sidechain/energy/interaction_profile.hpp"

#include <cmath>

namespace sidechain {

std::vector<SeparationStats> interaction_profile(const RotamerProblem& problem) {
  const int n = problem.num_residues();
  std::vector<SeparationStats> out;
  for (int d = 1; d < n; ++d) {
    SeparationStats s;
    s.separation = d;
    double sum = 0.0;
    for (int i = 0; i + d < n; ++i) {
      const auto* table = problem.pair_table(i, i + d);
      s.entries += static_cast<long long>(problem.rotamers(i)) * problem.rotamers(i + d);
      if (!table) continue;
      sum += table->cwiseAbs().sum();
      s.max_abs = std::max(s.max_abs, table->cwiseAbs().maxCoeff());
    }
    s.mean_abs = s.entries ? sum / static_cast<double>(s.entries) : 0.0;
    out.push_back(s);
  }
  return out;
}

}  // namespace sidechain
