#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sidechain/classical/annealing.hpp"
#include "sidechain/energy/generator.hpp"
#include "sidechain/energy/problem.hpp"
#include "sidechain/qaoa/driver.hpp"
#include "sidechain/qaoa/run_record.hpp"

namespace sidechain {

enum class MethodKind { qaoa, sa };

std::string_view to_string(MethodKind kind);

struct MethodSpec {
  std::string name;
  MethodKind kind = MethodKind::qaoa;
  QaoaConfig qaoa;
  SaConfig sa;
  int fit_start_m = 15;
  std::optional<int> trajectories;
  /// The plan entry this was parsed from; part of each cell's hash.
  nlohmann::json source;
};

/// Parses one "methods" entry. Unknown keys are rejected.
MethodSpec method_from_json(const nlohmann::json& doc);

/// Grid of (residues, rotamers) sizes crossed with methods.
///
/// Instances come from generate_problem with seed derive_seed(seed, 1000 N + n)
/// unless `problems` names a file for that size.
struct ExperimentPlan {
  std::vector<std::pair<int, int>> sizes;
  std::vector<MethodSpec> methods;
  int trajectories = 20;
  std::uint64_t seed = 0;
  GeneratorOptions generator;
  double brute_force_cap = 1e8;
  std::map<std::pair<int, int>, double> reference_energies;
  std::map<std::pair<int, int>, std::filesystem::path> problems;
};

ExperimentPlan plan_from_json(const nlohmann::json& doc);
/// Relative problem paths resolve against the plan file's directory.
ExperimentPlan load_plan(const std::filesystem::path& path);

RotamerProblem plan_instance(const ExperimentPlan& plan, int residues, int rotamers);

/// 64-bit FNV-1a of the canonical (sorted-key, compact) dump, as 16 hex digits.
std::string content_hash(const nlohmann::json& doc);

struct CellResult {
  int residues = 0;
  int rotamers = 0;
  int num_qubits = 0;
  std::string method;
  MethodKind kind = MethodKind::qaoa;
  int fit_start_m = 0;
  std::string hash;
  double ground_energy = 0.0;
  EnsembleSummary summary;
  /// Loaded from an earlier run instead of computed.
  bool reused = false;
};

nlohmann::json to_json(const CellResult& cell);
CellResult cell_result_from_json(const nlohmann::json& doc);

struct Dataset {
  std::vector<CellResult> cells;
};

/// Runs every (size, method) cell into out/cells/<hash>/ (cell.json,
/// records.jsonl, summary.json) and writes out/index.json. A cell whose
/// summary.json exists is loaded, not rerun. Throws std::runtime_error when a
/// size is beyond the brute-force cap and has no reference energy.
Dataset run_experiment(const ExperimentPlan& plan, const std::filesystem::path& out,
                       const std::function<void(const CellResult&)>& progress = {});

/// Reads the cells listed in dir/index.json, or every cells/*/summary.json
/// when there is no index, ordered by method, residues, rotamers.
Dataset load_dataset(const std::filesystem::path& dir);

}  // namespace sidechain
