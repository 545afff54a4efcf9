#include "sidechain/sim/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace sidechain {
namespace {

using cd = std::complex<double>;

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0 || num_qubits > kMaxQubits) {
    throw std::invalid_argument(fmt::format("statevector supports 0..{} qubits, got {}", kMaxQubits, num_qubits));
  }
  amp_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
  amp_(0) = 1.0;
}

StateVector StateVector::from_amplitudes(Eigen::VectorXcd amplitudes) {
  const auto dim = static_cast<std::uint64_t>(amplitudes.size());
  if (dim == 0 || !std::has_single_bit(dim)) throw std::invalid_argument("amplitude count must be a power of two");
  StateVector s(0);
  s.num_qubits_ = std::countr_zero(dim);
  if (s.num_qubits_ > kMaxQubits) throw std::invalid_argument("too many qubits");
  s.amp_ = std::move(amplitudes);
  return s;
}

void StateVector::check_qubit(int q) const {
  if (q < 0 || q >= num_qubits_) {
    throw std::out_of_range(fmt::format("qubit {} out of range for {}-qubit state", q, num_qubits_));
  }
}

void StateVector::apply_single(int q, const Eigen::Matrix2cd& u) {
  const Eigen::Index bit = Eigen::Index{1} << q;
  const Eigen::Index dim = amp_.size();
  for (Eigen::Index base = 0; base < dim; base += 2 * bit) {
    for (Eigen::Index i = base; i < base + bit; ++i) {
      const cd a0 = amp_(i);
      const cd a1 = amp_(i + bit);
      amp_(i) = u(0, 0) * a0 + u(0, 1) * a1;
      amp_(i + bit) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

void StateVector::apply_pair(int a, int b, const Eigen::Matrix4cd& u) {
  const Eigen::Index ba = Eigen::Index{1} << a;
  const Eigen::Index bb = Eigen::Index{1} << b;
  const Eigen::Index dim = amp_.size();
  Eigen::Vector4cd v;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i & (ba | bb)) continue;
    const Eigen::Index idx[4] = {i, i | ba, i | bb, i | ba | bb};
    for (int k = 0; k < 4; ++k) v(k) = amp_(idx[k]);
    const Eigen::Vector4cd w = u * v;
    for (int k = 0; k < 4; ++k) amp_(idx[k]) = w(k);
  }
}

void StateVector::apply(const Gate& gate) {
  check_qubit(gate.qubits[0]);
  if (gate.arity() == 2) check_qubit(gate.qubits[1]);
  const Eigen::Index dim = amp_.size();
  switch (gate.kind) {
    case GateKind::X: {
      const Eigen::Index bit = Eigen::Index{1} << gate.qubits[0];
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (!(i & bit)) std::swap(amp_(i), amp_(i | bit));
      }
      return;
    }
    case GateKind::RZ: {
      const Eigen::Index bit = Eigen::Index{1} << gate.qubits[0];
      const cd p0 = std::polar(1.0, -gate.theta / 2);
      const cd p1 = std::conj(p0);
      for (Eigen::Index i = 0; i < dim; ++i) amp_(i) *= (i & bit) ? p1 : p0;
      return;
    }
    case GateKind::RZZ: {
      const int a = gate.qubits[0];
      const int b = gate.qubits[1];
      const cd even = std::polar(1.0, -gate.theta / 2);
      const cd odd = std::conj(even);
      for (Eigen::Index i = 0; i < dim; ++i) amp_(i) *= (((i >> a) ^ (i >> b)) & 1) ? odd : even;
      return;
    }
    case GateKind::RX:
    case GateKind::RY:
      apply_single(gate.qubits[0], single_qubit_matrix(gate));
      return;
    case GateKind::XY:
    case GateKind::A:
    case GateKind::CX:
      apply_pair(gate.qubits[0], gate.qubits[1], two_qubit_matrix(gate));
      return;
  }
}

void StateVector::run(const Circuit& circuit) {
  if (circuit.num_qubits() != num_qubits_) {
    throw std::invalid_argument(fmt::format("{}-qubit circuit on {}-qubit state", circuit.num_qubits(), num_qubits_));
  }
  for (const auto& g : circuit.gates()) apply(g);
  if (circuit.global_phase() != 0.0) amp_ *= std::polar(1.0, circuit.global_phase());
}

std::vector<std::uint64_t> sample_from_probabilities(const Eigen::VectorXd& probs, std::size_t shots, Rng& rng) {
  std::vector<double> cdf(static_cast<std::size_t>(probs.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    acc += probs(i);
    cdf[static_cast<std::size_t>(i)] = acc;
  }
  if (!(acc > 0.0)) throw std::domain_error("cannot sample from a zero distribution");
  std::vector<std::uint64_t> out;
  out.reserve(shots);
  for (std::size_t s = 0; s < shots; ++s) {
    const double r = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    // Skip zero-probability entries that share the final cumulative value.
    if (it == cdf.end()) it = std::lower_bound(cdf.begin(), cdf.end(), acc);
    out.push_back(static_cast<std::uint64_t>(it - cdf.begin()));
  }
  return out;
}

std::vector<std::uint64_t> StateVector::sample_indices(std::size_t shots, Rng& rng) const {
  return sample_from_probabilities(probabilities(), shots, rng);
}

std::vector<Bitstring> StateVector::sample(std::size_t shots, Rng& rng) const {
  std::vector<Bitstring> out;
  out.reserve(shots);
  for (auto idx : sample_indices(shots, rng)) out.push_back(Bitstring::from_index(idx, num_qubits_));
  return out;
}

std::vector<Bitstring> StateVector::sample(std::size_t shots, std::uint64_t seed) const {
  Rng rng(seed);
  return sample(shots, rng);
}

double StateVector::expectation(const IsingHamiltonian& h) const {
  if (h.num_spins() != num_qubits_) {
    throw std::invalid_argument(fmt::format("{}-spin Hamiltonian on {}-qubit state", h.num_spins(), num_qubits_));
  }
  return probabilities().dot(diagonal_energies(h));
}

void StateVector::dump(std::ostream& out) const {
  static_assert(std::endian::native == std::endian::little, "dump assumes a little-endian host");
  for (Eigen::Index i = 0; i < amp_.size(); ++i) {
    const float pair[2] = {static_cast<float>(amp_(i).real()), static_cast<float>(amp_(i).imag())};
    out.write(reinterpret_cast<const char*>(pair), sizeof pair);
  }
}

}  // namespace sidechain
