#include "sidechain/sim/subspace.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

#include "sidechain/sim/statevector.hpp"

namespace sidechain {
namespace {

using cd = std::complex<double>;
constexpr double kLeakTolerance = 1e-12;
constexpr std::size_t kMaxDimension = std::size_t{1} << 28;

}  // namespace

BlockSubspaceState::BlockSubspaceState(BlockLayout layout) : layout_(std::move(layout)) {
  std::size_t dim = 1;
  for (int b = 0; b < layout_.num_blocks(); ++b) {
    stride_.push_back(dim);
    dim *= static_cast<std::size_t>(layout_.size(b) + 1);
    if (dim > kMaxDimension) throw std::invalid_argument("block subspace dimension exceeds 2^28");
  }
  amp_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  amp_(0) = 1.0;
}

BlockSubspaceState::Location BlockSubspaceState::locate(int qubit) const {
  const int b = layout_.block_of(qubit);
  return {b, qubit - layout_.offset(b) + 1};
}

void BlockSubspaceState::apply_local_pair(int block, int u, int v, const Eigen::Matrix2cd& m) {
  const std::size_t stride = stride_[static_cast<std::size_t>(block)];
  const std::size_t span = stride * static_cast<std::size_t>(layout_.size(block) + 1);
  const std::size_t dim = dimension();
  for (std::size_t hi = 0; hi < dim; hi += span) {
    for (std::size_t lo = 0; lo < stride; ++lo) {
      const auto i0 = static_cast<Eigen::Index>(hi + lo + static_cast<std::size_t>(u) * stride);
      const auto i1 = static_cast<Eigen::Index>(hi + lo + static_cast<std::size_t>(v) * stride);
      const cd a0 = amp_(i0);
      const cd a1 = amp_(i1);
      amp_(i0) = m(0, 0) * a0 + m(0, 1) * a1;
      amp_(i1) = m(1, 0) * a0 + m(1, 1) * a1;
    }
  }
}

void BlockSubspaceState::apply_x(int qubit) {
  const auto [b, k] = locate(qubit);
  const std::size_t stride = stride_[static_cast<std::size_t>(b)];
  const int radix = layout_.size(b) + 1;
  const std::size_t dim = dimension();
  for (std::size_t i = 0; i < dim; ++i) {
    const int local = static_cast<int>((i / stride) % static_cast<std::size_t>(radix));
    if (local != 0 && local != k && std::abs(amp_(static_cast<Eigen::Index>(i))) > kLeakTolerance) {
      throw std::domain_error(fmt::format("X on qubit {} leaves the one-per-block subspace", qubit));
    }
  }
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  apply_local_pair(b, 0, k, m);
}

void BlockSubspaceState::apply_diagonal_run(const std::vector<Gate>& gates, std::size_t begin, std::size_t end) {
  // Phase angle per local state (amplitude gets exp(-i angle)), split into
  // per-block and per-block-pair tables.
  const int nb = layout_.num_blocks();
  std::vector<std::vector<double>> single(static_cast<std::size_t>(nb));
  for (int b = 0; b < nb; ++b) single[static_cast<std::size_t>(b)].assign(static_cast<std::size_t>(layout_.size(b) + 1), 0.0);
  std::map<std::pair<int, int>, Eigen::MatrixXd> pair;
  auto z = [](int local, int k) { return local == k ? -1.0 : 1.0; };

  for (std::size_t g = begin; g < end; ++g) {
    const auto& gate = gates[g];
    const double half = gate.theta / 2;
    if (gate.kind == GateKind::RZ) {
      const auto [b, k] = locate(gate.qubits[0]);
      auto& t = single[static_cast<std::size_t>(b)];
      for (int l = 0; l < static_cast<int>(t.size()); ++l) t[static_cast<std::size_t>(l)] += half * z(l, k);
      continue;
    }
    auto la = locate(gate.qubits[0]);
    auto lb = locate(gate.qubits[1]);
    if (la.block == lb.block) {
      auto& t = single[static_cast<std::size_t>(la.block)];
      for (int l = 0; l < static_cast<int>(t.size()); ++l) t[static_cast<std::size_t>(l)] += half * z(l, la.local) * z(l, lb.local);
      continue;
    }
    if (la.block > lb.block) std::swap(la, lb);
    auto [it, fresh] = pair.try_emplace({la.block, lb.block});
    if (fresh) it->second = Eigen::MatrixXd::Zero(layout_.size(la.block) + 1, layout_.size(lb.block) + 1);
    for (int u = 0; u <= layout_.size(la.block); ++u) {
      for (int v = 0; v <= layout_.size(lb.block); ++v) it->second(u, v) += half * z(u, la.local) * z(v, lb.local);
    }
  }

  std::vector<int> digit(static_cast<std::size_t>(nb), 0);
  const std::size_t dim = dimension();
  for (std::size_t i = 0; i < dim; ++i) {
    double angle = 0.0;
    for (int b = 0; b < nb; ++b) angle += single[static_cast<std::size_t>(b)][static_cast<std::size_t>(digit[static_cast<std::size_t>(b)])];
    for (const auto& [key, table] : pair) angle += table(digit[static_cast<std::size_t>(key.first)], digit[static_cast<std::size_t>(key.second)]);
    amp_(static_cast<Eigen::Index>(i)) *= std::polar(1.0, -angle);
    for (int b = 0; b < nb; ++b) {
      auto& d = digit[static_cast<std::size_t>(b)];
      if (++d <= layout_.size(b)) break;
      d = 0;
    }
  }
}

void BlockSubspaceState::apply(const Gate& gate) {
  switch (gate.kind) {
    case GateKind::X:
      apply_x(gate.qubits[0]);
      return;
    case GateKind::RZ:
    case GateKind::RZZ:
      apply_diagonal_run({gate}, 0, 1);
      return;
    case GateKind::XY:
    case GateKind::A: {
      const auto la = locate(gate.qubits[0]);
      const auto lb = locate(gate.qubits[1]);
      if (la.block != lb.block) {
        throw std::domain_error(fmt::format("{} gate across blocks leaves the one-per-block subspace",
                                            to_string(gate.kind)));
      }
      // Local index bit(first) + 2 bit(second): |01> is la.local, |10> is lb.local.
      const Eigen::Matrix4cd u = two_qubit_matrix(gate);
      apply_local_pair(la.block, la.local, lb.local, u.block<2, 2>(1, 1));
      return;
    }
    default:
      throw std::domain_error(fmt::format("{} gate is not supported by the block subspace backend",
                                          to_string(gate.kind)));
  }
}

void BlockSubspaceState::run(const Circuit& circuit) {
  if (circuit.num_qubits() != num_qubits()) {
    throw std::invalid_argument(fmt::format("{}-qubit circuit on {}-qubit state", circuit.num_qubits(), num_qubits()));
  }
  const auto& gates = circuit.gates();
  std::size_t g = 0;
  while (g < gates.size()) {
    if (!gates[g].is_diagonal()) {
      apply(gates[g++]);
      continue;
    }
    std::size_t end = g;
    while (end < gates.size() && gates[end].is_diagonal()) ++end;
    apply_diagonal_run(gates, g, end);
    g = end;
  }
  if (circuit.global_phase() != 0.0) amp_ *= std::polar(1.0, circuit.global_phase());
}

double BlockSubspaceState::invalid_mass() const {
  double mass = 0.0;
  for (std::size_t i = 0; i < dimension(); ++i) {
    bool empty = false;
    for (int b = 0; b < layout_.num_blocks() && !empty; ++b) {
      empty = (i / stride_[static_cast<std::size_t>(b)]) % static_cast<std::size_t>(layout_.size(b) + 1) == 0;
    }
    if (empty) mass += std::norm(amp_(static_cast<Eigen::Index>(i)));
  }
  return mass;
}

Bitstring BlockSubspaceState::bitstring_of(std::size_t index) const {
  Bitstring bits(static_cast<std::size_t>(num_qubits()));
  for (int b = 0; b < layout_.num_blocks(); ++b) {
    const auto radix = static_cast<std::size_t>(layout_.size(b) + 1);
    const auto local = static_cast<int>((index / stride_[static_cast<std::size_t>(b)]) % radix);
    if (local > 0) bits.set(static_cast<std::size_t>(layout_.offset(b) + local - 1), true);
  }
  return bits;
}

long long BlockSubspaceState::index_of(const Bitstring& bits) const {
  if (static_cast<int>(bits.size()) != num_qubits()) throw std::invalid_argument("bitstring length mismatch");
  std::size_t index = 0;
  for (int b = 0; b < layout_.num_blocks(); ++b) {
    int local = 0;
    for (int k = 0; k < layout_.size(b); ++k) {
      if (!bits[static_cast<std::size_t>(layout_.offset(b) + k)]) continue;
      if (local != 0) return -1;
      local = k + 1;
    }
    index += static_cast<std::size_t>(local) * stride_[static_cast<std::size_t>(b)];
  }
  return static_cast<long long>(index);
}

std::vector<Bitstring> BlockSubspaceState::sample(std::size_t shots, Rng& rng) const {
  std::vector<Bitstring> out;
  out.reserve(shots);
  for (auto idx : sample_from_probabilities(probabilities(), shots, rng)) out.push_back(bitstring_of(idx));
  return out;
}

std::vector<Bitstring> BlockSubspaceState::sample(std::size_t shots, std::uint64_t seed) const {
  Rng rng(seed);
  return sample(shots, rng);
}

Eigen::VectorXcd BlockSubspaceState::to_statevector() const {
  if (num_qubits() > StateVector::kMaxQubits) throw std::invalid_argument("too many qubits for a dense embedding");
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits());
  for (std::size_t i = 0; i < dimension(); ++i) {
    full(static_cast<Eigen::Index>(bitstring_of(i).to_index())) = amp_(static_cast<Eigen::Index>(i));
  }
  return full;
}

}  // namespace sidechain
