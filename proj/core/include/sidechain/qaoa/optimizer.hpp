#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace sidechain {

/// Ask/tell minimizer. The caller evaluates every point it is handed:
///
///   auto x = opt.start(x0);
///   while (auto next = opt.propose(x, f(x))) x = *next;
///
/// propose() returns std::nullopt once the method has converged or run out
/// of evaluations; best() then holds the best point seen.
class Optimizer {
 public:
  virtual ~Optimizer() = default;

  virtual std::vector<double> start(std::vector<double> x0) = 0;
  /// `params` must be the point most recently returned by start()/propose().
  virtual std::optional<std::vector<double>> propose(std::span<const double> params, double value) = 0;

  virtual bool done() const = 0;
  virtual std::vector<double> best() const = 0;
  virtual double best_value() const = 0;
  virtual int evaluations() const = 0;
};

enum class OptimizerKind { cobyla, nelder_mead };

std::string_view to_string(OptimizerKind kind);
OptimizerKind optimizer_from_string(std::string_view name);

struct OptimizerOptions {
  /// Initial step size (COBYLA rhobeg, Nelder-Mead initial simplex edge).
  double initial_step = 1.0;
  /// Final trust radius (COBYLA rhoend) or simplex size tolerance.
  double final_step = 1e-4;
  int max_evaluations = 100000;
};

std::unique_ptr<Optimizer> make_optimizer(OptimizerKind kind, const OptimizerOptions& options = {});

}  // namespace sidechain
