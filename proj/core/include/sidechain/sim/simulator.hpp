#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "sidechain/circuit/circuit.hpp"
#include "sidechain/energy/bitstring.hpp"
#include "sidechain/energy/layout.hpp"
#include "sidechain/sim/mps.hpp"
#include "sidechain/util/rng.hpp"

namespace sidechain {

enum class BackendKind { statevector, subspace, mps };

std::string_view to_string(BackendKind kind);
BackendKind backend_from_string(std::string_view name);

struct BackendOptions {
  BackendKind kind = BackendKind::statevector;
  MpsOptions mps;
};

/// Interchangeable circuit executor. run() always starts from |0...0>.
class Simulator {
 public:
  virtual ~Simulator() = default;

  virtual BackendKind kind() const = 0;
  virtual void run(const Circuit& circuit) = 0;
  virtual std::vector<Bitstring> sample(std::size_t shots, Rng& rng) = 0;
  /// Probability mass on strings with a block weight other than one, when
  /// the backend can compute it exactly.
  virtual std::optional<double> invalid_mass() const { return std::nullopt; }
  virtual int max_bond_reached() const { return 0; }
  virtual double discarded_weight() const { return 0.0; }
};

/// `layout` is required by the subspace backend and used by invalid_mass().
std::unique_ptr<Simulator> make_simulator(const BackendOptions& options, const BlockLayout& layout);

}  // namespace sidechain
