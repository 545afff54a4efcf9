#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sidechain/bench/experiment.hpp"
#include "sidechain/bench/scaling.hpp"

namespace sidechain {

/// Numbers in reports: 6 significant digits, locale independent.
std::string format_number(double value);

/// CSV rows N, n, method, CD, CD_SP, CNOTs for N = n = 2..max_size and the
/// three regimes.
void write_depth_table(std::ostream& out, int max_size, int p = 1);

/// CSV M, residues, rotamers, method, mean_cost, std_cost, convergence_ratio,
/// trajectories, converged. Cells appear in dataset order.
void write_scaling_csv(const Dataset& data, std::ostream& out);

/// Per-method scaling points (cells with at least one converged trajectory).
std::vector<ScalingPoint> scaling_points(const Dataset& data, const std::string& method);

struct MethodFit {
  std::string method;
  MethodKind kind = MethodKind::qaoa;
  std::optional<ScalingFit> fit;
  std::string error;
};

/// One fit per method, using `fit_start_m` when given and otherwise the
/// method's own threshold.
std::vector<MethodFit> fit_methods(const Dataset& data, std::optional<int> fit_start_m = std::nullopt);

/// Res., Rot., Total, Success Ratio rows for one method.
void write_convergence_table(const Dataset& data, const std::string& method, std::ostream& out);

struct ReportOptions {
  int depth_max_size = 7;
  std::optional<int> fit_start_m;
  Clocks clocks;
};

/// Writes depth_table.csv, scaling.csv, fits.json, crossover.json and
/// convergence_<method>.csv into `dir`. crossover.json pairs every annealing
/// fit with every QAOA fit.
void emit_reports(const Dataset& data, const std::filesystem::path& dir, const ReportOptions& options = {});

}  // namespace sidechain
