#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "sidechain/circuit/circuit.hpp"
#include "sidechain/energy/bitstring.hpp"
#include "sidechain/energy/ising.hpp"
#include "sidechain/util/rng.hpp"

namespace sidechain {

/// Dense 2^M amplitude vector; qubit k is bit k of the basis index.
class StateVector {
 public:
  static constexpr int kMaxQubits = 30;

  /// |0...0>.
  explicit StateVector(int num_qubits);
  /// Takes amplitudes as given (no normalization).
  static StateVector from_amplitudes(Eigen::VectorXcd amplitudes);

  int num_qubits() const { return num_qubits_; }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  std::complex<double> amplitude(std::uint64_t index) const { return amp_(static_cast<Eigen::Index>(index)); }

  void apply(const Gate& gate);
  /// Applies every gate and the circuit's global phase.
  void run(const Circuit& circuit);

  double norm() const { return amp_.norm(); }
  Eigen::VectorXd probabilities() const { return amp_.cwiseAbs2(); }

  std::vector<std::uint64_t> sample_indices(std::size_t shots, Rng& rng) const;
  std::vector<Bitstring> sample(std::size_t shots, Rng& rng) const;
  std::vector<Bitstring> sample(std::size_t shots, std::uint64_t seed) const;

  /// <psi|H|psi> = sum_x |a_x|^2 E(x).
  double expectation(const IsingHamiltonian& h) const;

  /// Little-endian complex64 (float real, float imag) per amplitude.
  void dump(std::ostream& out) const;

 private:
  void check_qubit(int q) const;
  void apply_single(int q, const Eigen::Matrix2cd& u);
  void apply_pair(int a, int b, const Eigen::Matrix4cd& u);

  int num_qubits_ = 0;
  Eigen::VectorXcd amp_;
};

/// Sample indices from an explicit probability vector by inverse CDF. The
/// vector need not be normalized.
std::vector<std::uint64_t> sample_from_probabilities(const Eigen::VectorXd& probs, std::size_t shots, Rng& rng);

}  // namespace sidechain
