#include "sidechain/qaoa/optimizer.hpp"

#include <stdexcept>
#include <string>

#include "sidechain/qaoa/cobyla.hpp"
#include "sidechain/qaoa/nelder_mead.hpp"

namespace sidechain {

std::string_view to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::cobyla: return "cobyla";
    case OptimizerKind::nelder_mead: return "nelder-mead";
  }
  return "?";
}

OptimizerKind optimizer_from_string(std::string_view name) {
  if (name == "cobyla") return OptimizerKind::cobyla;
  if (name == "nelder-mead" || name == "nelder_mead") return OptimizerKind::nelder_mead;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

std::unique_ptr<Optimizer> make_optimizer(OptimizerKind kind, const OptimizerOptions& options) {
  switch (kind) {
    case OptimizerKind::cobyla: return std::make_unique<Cobyla>(options);
    case OptimizerKind::nelder_mead: return std::make_unique<NelderMead>(options);
  }
  throw std::invalid_argument("unknown optimizer");
}

}  // namespace sidechain
