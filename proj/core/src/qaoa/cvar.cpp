#include "sidechain/qaoa/cvar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace sidechain {

double cvar(std::span<const double> energies, double alpha) {
  if (energies.empty()) throw std::invalid_argument("cvar of an empty sample set");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument(fmt::format("cvar alpha {} outside (0, 1]", alpha));
  const std::size_t n = energies.size();
  // The small slack keeps alpha * n = 1.0000000000000002 from rounding up.
  auto k = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n) - 1e-9));
  k = std::clamp<std::size_t>(k, 1, n);
  std::vector<double> sorted(energies.begin(), energies.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1), sorted.end());
  std::sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k));
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += sorted[i];
  return sum / static_cast<double>(k);
}

double cvar(const std::vector<Bitstring>& samples, const IsingHamiltonian& h, double alpha) {
  std::vector<double> energies;
  energies.reserve(samples.size());
  for (const auto& s : samples) energies.push_back(h.energy(s));
  return cvar(energies, alpha);
}

}  // namespace sidechain
