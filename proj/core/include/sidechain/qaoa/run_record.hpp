#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sidechain {

struct FirstHit {
  int iteration = 0;  // 1-based
  int shot = 0;       // 0-based within the iteration
  bool operator==(const FirstHit&) const = default;
};

/// Outcome of one trajectory of any method.
///
/// `cost` is the quantity the scaling analysis uses: circuits executed
/// (total_shots) for QAOA, objective evaluations for annealing.
struct RunRecord {
  std::uint64_t trajectory_id = 0;
  std::uint64_t seed = 0;
  std::string method;
  std::string regime;
  std::string backend;
  int iterations_used = 0;
  long long total_shots = 0;
  long long evaluations = 0;
  long long cost = 0;
  std::optional<FirstHit> first_hit;
  bool converged = false;
  std::optional<double> best_energy;
  std::string best_bitstring;
  double wall_time = 0.0;
  long long invalid_samples = 0;
  std::optional<double> max_invalid_mass;
  int max_bond_reached = 0;
  double discarded_weight = 0.0;
};

nlohmann::json to_json(const RunRecord& record);
RunRecord run_record_from_json(const nlohmann::json& doc);

void write_jsonl(std::span<const RunRecord> records, std::ostream& out);
std::vector<RunRecord> read_jsonl(std::istream& in);

/// Aggregate over trajectories. mean_cost and std_cost are taken over the
/// converged trajectories and divided by convergence_ratio; both are empty
/// when nothing converged.
struct EnsembleSummary {
  std::size_t trajectories = 0;
  std::size_t converged = 0;
  double convergence_ratio = 0.0;
  std::optional<double> mean_cost;
  std::optional<double> std_cost;
};

EnsembleSummary summarize(std::span<const RunRecord> records);
nlohmann::json to_json(const EnsembleSummary& summary);
EnsembleSummary ensemble_summary_from_json(const nlohmann::json& doc);

}  // namespace sidechain
