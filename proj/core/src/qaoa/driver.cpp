#include "sidechain/qaoa/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "sidechain/energy/bitstring.hpp"
#include "sidechain/qaoa/cvar.hpp"
#include "sidechain/util/parallel.hpp"
#include "sidechain/util/rng.hpp"

namespace sidechain {

int default_shots(int num_qubits) { return std::clamp(10 * num_qubits, 10, 100); }

int default_max_iterations(BackendKind backend) { return backend == BackendKind::mps ? 2000 : 500; }

std::vector<double> init_params(int p, Interval gamma_range, Interval beta_range, std::uint64_t seed) {
  if (p < 1) throw std::invalid_argument("p must be at least 1");
  Rng rng(seed);
  std::vector<double> params;
  params.reserve(2 * static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) {
    params.push_back(rng.uniform(gamma_range.lo, gamma_range.hi));
    params.push_back(rng.uniform(beta_range.lo, beta_range.hi));
  }
  return params;
}

RunRecord optimize(const RotamerProblem& problem, const QaoaConfig& config, std::uint64_t trajectory_id) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!(config.cvar_alpha > 0.0 && config.cvar_alpha <= 1.0)) throw std::invalid_argument("cvar_alpha must be in (0, 1]");
  if (config.stop_mode == StopMode::first_ground_state && !config.target_energy) {
    throw std::invalid_argument("first_ground_state stop mode needs a target energy");
  }
  const int m = problem.num_variables();
  const int shots = config.shots_per_iteration > 0 ? config.shots_per_iteration : default_shots(m);
  const int max_iterations =
      config.max_iterations > 0 ? config.max_iterations : default_max_iterations(config.backend.kind);

  auto spec = make_ansatz_spec(problem, config.regime, config.p,
                               config.regime == Regime::penalty ? config.penalty : std::nullopt);
  Rng init_rng(derive_seed(config.seed, 0));
  Rng sample_rng(derive_seed(config.seed, 1));
  if (config.random_initial_state && config.regime != Regime::xy) {
    for (int i = 0; i < problem.num_residues(); ++i) {
      spec.initial_rotamers.push_back(static_cast<int>(init_rng.below(static_cast<std::uint64_t>(problem.rotamers(i)))));
    }
  }
  auto params = init_params(config.p, config.gamma_range, config.beta_range, init_rng());
  auto optimizer = make_optimizer(config.optimizer, config.optimizer_options);
  params = optimizer->start(params);
  auto simulator = make_simulator(config.backend, problem.layout());

  RunRecord record;
  record.trajectory_id = trajectory_id;
  record.seed = config.seed;
  record.method = "qaoa";
  record.regime = std::string(to_string(config.regime));
  record.backend = std::string(to_string(config.backend.kind));

  std::vector<double> energies(static_cast<std::size_t>(shots));
  for (int iteration = 1; iteration <= max_iterations; ++iteration) {
    simulator->run(assemble_ansatz(spec, params));
    const auto samples = simulator->sample(static_cast<std::size_t>(shots), sample_rng);
    record.iterations_used = iteration;
    record.total_shots += shots;
    if (config.track_leakage) {
      if (auto mass = simulator->invalid_mass()) {
        record.max_invalid_mass = std::max(record.max_invalid_mass.value_or(0.0), *mass);
      }
    }

    bool hit = false;
    for (int s = 0; s < shots; ++s) {
      const auto& bits = samples[static_cast<std::size_t>(s)];
      energies[static_cast<std::size_t>(s)] = spec.cost.energy(bits);
      const auto decoded = decode(bits, problem.layout());
      if (!decoded.valid()) {
        ++record.invalid_samples;
        continue;
      }
      const double e = problem.energy(decoded.rotamers);
      if (!record.best_energy || e < *record.best_energy) {
        record.best_energy = e;
        record.best_bitstring = bits.to_string();
      }
      if (!hit && config.stop_mode == StopMode::first_ground_state &&
          std::abs(e - *config.target_energy) <= config.tolerance) {
        hit = true;
        record.first_hit = FirstHit{iteration, s};
        record.best_energy = e;
        record.best_bitstring = bits.to_string();
        // Later shots of this batch are not inspected: the run stops here.
        break;
      }
    }
    if (hit) {
      record.converged = true;
      break;
    }

    if (!optimizer->done()) {
      if (auto next = optimizer->propose(params, cvar(energies, config.cvar_alpha))) {
        params = std::move(*next);
        continue;
      }
      params = optimizer->best();
    }
    if (config.stop_mode == StopMode::parameter_convergence) {
      record.converged = true;
      break;
    }
  }

  record.evaluations = optimizer->evaluations();
  record.cost = record.total_shots;
  record.max_bond_reached = simulator->max_bond_reached();
  record.discarded_weight = simulator->discarded_weight();
  record.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return record;
}

EnsembleResult run_ensemble(const RotamerProblem& problem, const QaoaConfig& config, int num_trajectories,
                            std::uint64_t first_id) {
  if (num_trajectories < 1) throw std::invalid_argument("ensemble needs at least one trajectory");
  EnsembleResult result;
  result.records.resize(static_cast<std::size_t>(num_trajectories));
  parallel_for(result.records.size(), [&](std::size_t t) {
    QaoaConfig c = config;
    const std::uint64_t id = first_id + t;
    c.seed = derive_seed(config.seed, id);
    result.records[t] = optimize(problem, c, id);
  });
  result.summary = summarize(result.records);
  return result;
}

}  // namespace sidechain
