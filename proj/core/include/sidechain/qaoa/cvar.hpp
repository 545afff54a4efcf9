#pragma once

#include <span>
#include <vector>

#include "sidechain/energy/bitstring.hpp"
#include "sidechain/energy/ising.hpp"

namespace sidechain {

/// Mean of the ceil(alpha * |energies|) lowest values. Throws on an empty
/// input or alpha outside (0, 1].
double cvar(std::span<const double> energies, double alpha);
double cvar(const std::vector<Bitstring>& samples, const IsingHamiltonian& h, double alpha);

}  // namespace sidechain
