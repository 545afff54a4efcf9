#include "sidechain/energy/ising.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace sidechain {

double IsingHamiltonian::energy(const Bitstring& bits) const {
  if (static_cast<int>(bits.size()) != num_spins()) {
    throw std::invalid_argument(fmt::format("bitstring length {} does not match {} spins", bits.size(), num_spins()));
  }
  const int m = num_spins();
  double e = constant;
  for (int i = 0; i < m; ++i) {
    const double zi = bits[static_cast<std::size_t>(i)] ? -1.0 : 1.0;
    e -= fields(i) * zi;
    for (int j = i + 1; j < m; ++j) {
      const double zj = bits[static_cast<std::size_t>(j)] ? -1.0 : 1.0;
      e += couplings(i, j) * zi * zj;
    }
  }
  return e;
}

double IsingHamiltonian::energy(std::uint64_t index) const {
  return energy(Bitstring::from_index(index, num_spins()));
}

IsingHamiltonian qubo_to_ising(const QuboMatrix& qubo) {
  const auto& q = qubo.q;
  const int m = static_cast<int>(q.rows());
  if (q.cols() != m) throw std::invalid_argument("QUBO matrix must be square");
  const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (std::abs(q(i, j) - q(j, i)) > 1e-12 * scale) {
        throw std::invalid_argument(fmt::format("QUBO matrix not symmetric at ({}, {})", i, j));
      }
    }
  }
  // x_i x_j = (1 - z_i - z_j + z_i z_j) / 4 and x_i^2 = x_i = (1 - z_i) / 2.
  IsingHamiltonian h{Eigen::MatrixXd::Zero(m, m), Eigen::VectorXd::Zero(m), qubo.constant};
  for (int i = 0; i < m; ++i) {
    h.fields(i) += q(i, i) / 2;
    h.constant += q(i, i) / 2;
    for (int j = i + 1; j < m; ++j) {
      const double w = q(i, j) + q(j, i);
      h.couplings(i, j) = w / 4;
      h.fields(i) += w / 4;
      h.fields(j) += w / 4;
      h.constant += w / 4;
    }
  }
  return h;
}

Eigen::VectorXd diagonal_energies(const IsingHamiltonian& h) {
  const int m = h.num_spins();
  if (m > 30) throw std::invalid_argument("diagonal_energies supports at most 30 spins");
  struct Term {
    int i, j;
    double c;
  };
  std::vector<Term> terms;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (h.couplings(i, j) != 0.0) terms.push_back({i, j, h.couplings(i, j)});
    }
  }
  const std::size_t dim = std::size_t{1} << m;
  Eigen::VectorXd out(static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < dim; ++x) {
    double e = h.constant;
    for (int i = 0; i < m; ++i) e += ((x >> i) & 1U) ? h.fields(i) : -h.fields(i);
    for (const auto& t : terms) e += (((x >> t.i) ^ (x >> t.j)) & 1U) ? -t.c : t.c;
    out(static_cast<Eigen::Index>(x)) = e;
  }
  return out;
}

}  // namespace sidechain
