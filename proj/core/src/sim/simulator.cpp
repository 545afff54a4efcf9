#include "sidechain/sim/simulator.hpp"

#include <stdexcept>
#include <string>

#include "sidechain/sim/statevector.hpp"
#include "sidechain/sim/subspace.hpp"

namespace sidechain {
namespace {

class StatevectorBackend final : public Simulator {
 public:
  explicit StatevectorBackend(const BlockLayout& layout) : layout_(layout), state_(layout.num_variables()) {}

  BackendKind kind() const override { return BackendKind::statevector; }
  void run(const Circuit& circuit) override {
    state_ = StateVector(layout_.num_variables());
    state_.run(circuit);
  }
  std::vector<Bitstring> sample(std::size_t shots, Rng& rng) override { return state_.sample(shots, rng); }
  std::optional<double> invalid_mass() const override {
    const auto probs = state_.probabilities();
    double mass = 0.0;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
      if (probs(i) == 0.0) continue;
      if (!is_valid(Bitstring::from_index(static_cast<std::uint64_t>(i), layout_.num_variables()), layout_)) {
        mass += probs(i);
      }
    }
    return mass;
  }

 private:
  BlockLayout layout_;
  StateVector state_;
};

class SubspaceBackend final : public Simulator {
 public:
  explicit SubspaceBackend(const BlockLayout& layout) : layout_(layout), state_(layout) {}

  BackendKind kind() const override { return BackendKind::subspace; }
  void run(const Circuit& circuit) override {
    state_ = BlockSubspaceState(layout_);
    state_.run(circuit);
  }
  std::vector<Bitstring> sample(std::size_t shots, Rng& rng) override { return state_.sample(shots, rng); }
  std::optional<double> invalid_mass() const override { return state_.invalid_mass(); }

 private:
  BlockLayout layout_;
  BlockSubspaceState state_;
};

class MpsBackend final : public Simulator {
 public:
  MpsBackend(const BlockLayout& layout, MpsOptions options)
      : num_qubits_(layout.num_variables()), options_(options), state_(num_qubits_, options) {}

  BackendKind kind() const override { return BackendKind::mps; }
  void run(const Circuit& circuit) override {
    state_ = MpsState(num_qubits_, options_);
    state_.run(circuit);
    max_bond_ = std::max(max_bond_, state_.max_bond_reached());
    discarded_ += state_.discarded_weight();
  }
  std::vector<Bitstring> sample(std::size_t shots, Rng& rng) override { return state_.sample(shots, rng); }
  // Accumulated over every circuit run on this backend.
  int max_bond_reached() const override { return max_bond_; }
  double discarded_weight() const override { return discarded_; }

 private:
  int num_qubits_;
  MpsOptions options_;
  MpsState state_;
  int max_bond_ = 1;
  double discarded_ = 0.0;
};

}  // namespace

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::statevector: return "statevector";
    case BackendKind::subspace: return "subspace";
    case BackendKind::mps: return "mps";
  }
  return "?";
}

BackendKind backend_from_string(std::string_view name) {
  if (name == "statevector" || name == "sv") return BackendKind::statevector;
  if (name == "subspace") return BackendKind::subspace;
  if (name == "mps") return BackendKind::mps;
  throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

std::unique_ptr<Simulator> make_simulator(const BackendOptions& options, const BlockLayout& layout) {
  switch (options.kind) {
    case BackendKind::statevector: return std::make_unique<StatevectorBackend>(layout);
    case BackendKind::subspace: return std::make_unique<SubspaceBackend>(layout);
    case BackendKind::mps: return std::make_unique<MpsBackend>(layout, options.mps);
  }
  throw std::invalid_argument("unknown backend");
}

}  // namespace sidechain
