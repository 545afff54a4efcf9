#pragma once

#include <vector>

#include "sidechain/energy/problem.hpp"

namespace sidechain {

/// |pair energy| statistics at one residue separation d = |i - j|.
struct SeparationStats {
  int separation = 0;
  /// Mean over every rotamer pair of every residue pair at this distance;
  /// missing tables count as zeros.
  double mean_abs = 0.0;
  double max_abs = 0.0;
  long long entries = 0;
};

/// One row per d = 1 .. N-1. Used to judge whether dropping d > 1 pair terms
/// is justified for a dataset.
std::vector<SeparationStats> interaction_profile(const RotamerProblem& problem);

}  // namespace sidechain
