#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace sidechain {

struct ScalingPoint {
  int m = 0;
  double cost = 0.0;
  double std = 0.0;
};

/// Ordinary least squares of ln(cost) against M over the points with
/// M >= fit_start_m.
struct ScalingFit {
  std::vector<ScalingPoint> points;
  int fit_start_m = 0;
  std::size_t used = 0;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  /// Mean M and mean ln(cost) of the fitted points.
  double centroid_m = 0.0;
  double centroid_log_cost = 0.0;

  double log_cost_at(double m) const { return intercept + slope * m; }
};

/// Throws std::invalid_argument with fewer than 3 usable points or a
/// non-positive cost among them.
ScalingFit fit_scaling(std::span<const ScalingPoint> points, int fit_start_m);

struct Clocks {
  double cpu_hz = 1e9;
  double qpu_hz = 1e3;
};

enum class CrossoverKind {
  finite,
  /// The classical line is not steeper: no crossover ahead.
  unbounded,
  /// Identical runtime lines.
  degenerate,
};

std::string_view to_string(CrossoverKind kind);

/// Intersection of ln(cost) - ln(clock) for the two fits. One cost unit is
/// one clock tick. The interval comes from the four slope +- stderr corners,
/// each line pivoting about its centroid; a corner without an intersection
/// ahead makes the upper end infinite.
struct CrossoverEstimate {
  CrossoverKind kind = CrossoverKind::unbounded;
  Clocks clocks;
  std::optional<double> m;
  double lo = 0.0;
  double hi = 0.0;
};

CrossoverEstimate estimate_crossover(const ScalingFit& cpu, const ScalingFit& qpu, Clocks clocks = {});

nlohmann::json to_json(const ScalingFit& fit);
nlohmann::json to_json(const CrossoverEstimate& estimate);

}  // namespace sidechain
