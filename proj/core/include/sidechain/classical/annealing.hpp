#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sidechain/energy/bitstring.hpp"
#include "sidechain/energy/problem.hpp"
#include "sidechain/energy/qubo.hpp"
#include "sidechain/qaoa/run_record.hpp"

namespace sidechain {

enum class SaMethod {
  /// Generalized simulated annealing on [0,1]^M, objective on round(y).
  continuous,
  /// Metropolis over valid configurations, moving one residue at a time.
  discrete,
};

std::string_view to_string(SaMethod method);

struct SaConfig {
  SaMethod method = SaMethod::continuous;
  /// Visiting distribution shape q_v, in (1, 3].
  double visit = 1.01;
  /// Acceptance shape q_a.
  double accept = 0.9;
  int max_iterations = 1000;
  double initial_temperature = 5230.0;
  /// Re-anneal from a random point once T < initial_temperature * ratio.
  double restart_temperature_ratio = 2e-5;
  long long max_evaluations = 10'000'000;
  bool local_search = true;
  std::uint64_t seed = 0;
  /// Stop at the first evaluation of a valid string at this energy.
  std::optional<double> target_energy;
  double tolerance = 1e-9;
  /// Objective penalty; defaults to one_hot at default_penalty().
  std::optional<Penalty> penalty;
  /// Discrete method: geometric schedule over max_iterations sweeps of M moves.
  double discrete_start_temperature = 2.0;
  double discrete_end_temperature = 0.01;
};

struct SaResult {
  double best_energy = 0.0;
  Bitstring best_bitstring;
  long long evaluations = 0;
  int iterations = 0;
  bool converged = false;
};

/// Objective on a point of [0,1]^dim.
using ContinuousObjective = std::function<double(std::span<const double>)>;
/// Called after every evaluation; returning true ends the run.
using StopPredicate = std::function<bool(double value, std::span<const double> y)>;

struct ContinuousResult {
  double best_value = 0.0;
  std::vector<double> best_point;
  long long evaluations = 0;
  int iterations = 0;
  bool stopped = false;
};

/// Generalized simulated annealing (Tsallis visiting and acceptance) over
/// the unit box, with bit-mirror local search y_i -> 1 - y_i. Each call of
/// `f` counts as one evaluation.
ContinuousResult dual_anneal(const ContinuousObjective& f, int dim, const SaConfig& config,
                             const StopPredicate& stop = {});

/// Minimizes the penalized QUBO of `problem`, using config.method.
SaResult dual_anneal(const RotamerProblem& problem, const SaConfig& config);
/// Minimizes x^T Q x + c over round(y); target checks use `layout` validity.
SaResult dual_anneal(const QuboMatrix& qubo, const SaConfig& config);

struct SaEnsemble {
  std::vector<RunRecord> records;
  EnsembleSummary summary;
};

/// Trajectory t uses seed derive_seed(config.seed, first_id + t); success is
/// reaching config.target_energy, which must be set.
SaEnsemble sa_ensemble(const RotamerProblem& problem, const SaConfig& config, int num_trajectories,
                       std::uint64_t first_id = 0);

}  // namespace sidechain
