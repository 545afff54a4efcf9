#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sidechain/circuit/ansatz.hpp"
#include "sidechain/energy/problem.hpp"
#include "sidechain/energy/qubo.hpp"
#include "sidechain/qaoa/optimizer.hpp"
#include "sidechain/qaoa/run_record.hpp"
#include "sidechain/sim/simulator.hpp"

namespace sidechain {

enum class StopMode {
  /// Stop at the first sampled valid string whose energy matches target_energy.
  first_ground_state,
  /// Stop when the optimizer reports convergence.
  parameter_convergence,
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct QaoaConfig {
  Regime regime = Regime::xy;
  int p = 4;
  /// 0 selects default_shots(M).
  int shots_per_iteration = 0;
  double cvar_alpha = 0.2;
  /// 0 selects default_max_iterations(backend).
  int max_iterations = 0;
  Interval gamma_range{-0.1, 0.1};
  Interval beta_range{-1.0, 1.0};
  std::uint64_t seed = 0;
  BackendOptions backend;
  StopMode stop_mode = StopMode::first_ground_state;
  std::optional<double> target_energy;
  double tolerance = 1e-9;
  OptimizerKind optimizer = OptimizerKind::cobyla;
  OptimizerOptions optimizer_options;
  /// Penalty regime only; defaults to the one_hot form at default_penalty().
  std::optional<Penalty> penalty;
  /// Baseline / penalty: start from a seed-drawn valid string instead of
  /// rotamer 0 everywhere.
  bool random_initial_state = false;
  /// Record the largest exact invalid-string mass seen (backends that can).
  bool track_leakage = false;
};

/// 10 shots per qubit, clamped to [10, 100].
int default_shots(int num_qubits);
/// 2000 for MPS, 500 otherwise.
int default_max_iterations(BackendKind backend);

/// gamma_k ~ U(gamma_range), beta_k ~ U(beta_range), interleaved as
/// gamma_1, beta_1, ..., gamma_p, beta_p.
std::vector<double> init_params(int p, Interval gamma_range, Interval beta_range, std::uint64_t seed);

/// One trajectory seeded by config.seed.
///
/// Each iteration assembles the ansatz, simulates it, draws the shots and
/// scans them in order for a valid string at the target energy. Otherwise
/// the CVaR of the cost-Hamiltonian energies goes to the optimizer. Once the
/// optimizer has converged the loop keeps sampling at its best point until
/// max_iterations (first_ground_state mode) or stops (parameter_convergence).
/// Every iteration counts its full shot batch.
RunRecord optimize(const RotamerProblem& problem, const QaoaConfig& config, std::uint64_t trajectory_id = 0);

struct EnsembleResult {
  std::vector<RunRecord> records;
  EnsembleSummary summary;
};

/// Trajectory t uses seed derive_seed(config.seed, first_id + t). Runs in
/// parallel; records are returned in trajectory order.
EnsembleResult run_ensemble(const RotamerProblem& problem, const QaoaConfig& config, int num_trajectories,
                            std::uint64_t first_id = 0);

}  // namespace sidechain
