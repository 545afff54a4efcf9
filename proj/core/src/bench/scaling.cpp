#include "sidechain/bench/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace sidechain {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

ScalingFit fit_scaling(std::span<const ScalingPoint> points, int fit_start_m) {
  ScalingFit fit;
  fit.points.assign(points.begin(), points.end());
  fit.fit_start_m = fit_start_m;
  std::vector<double> xs, ys;
  for (const auto& pt : points) {
    if (pt.m < fit_start_m) continue;
    if (!(pt.cost > 0.0)) throw std::invalid_argument(fmt::format("cost {} at M={} is not positive", pt.cost, pt.m));
    xs.push_back(pt.m);
    ys.push_back(std::log(pt.cost));
  }
  const std::size_t n = xs.size();
  if (n < 3) throw std::invalid_argument(fmt::format("fit needs 3 points at M >= {}, have {}", fit_start_m, n));
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit needs at least two distinct M values");
  fit.used = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.centroid_m = mx;
  fit.centroid_log_cost = my;
  double sse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    sse += r * r;
  }
  fit.slope_stderr = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  return fit;
}

std::string_view to_string(CrossoverKind kind) {
  switch (kind) {
    case CrossoverKind::finite:
      return "finite";
    case CrossoverKind::unbounded:
      return "unbounded";
    case CrossoverKind::degenerate:
      return "degenerate";
  }
  return "?";
}

CrossoverEstimate estimate_crossover(const ScalingFit& cpu, const ScalingFit& qpu, Clocks clocks) {
  if (!(clocks.cpu_hz > 0.0) || !(clocks.qpu_hz > 0.0)) throw std::invalid_argument("clock rates must be positive");
  CrossoverEstimate est;
  est.clocks = clocks;
  const double shift = std::log(clocks.cpu_hz) - std::log(clocks.qpu_hz);
  // Runtime lines: ln t = a + A M - ln(clock). Crossing where they agree.
  auto solve = [&](double a_c, double s_c, double a_q, double s_q) -> std::optional<double> {
    const double ds = s_c - s_q;
    if (!(ds > 0.0)) return std::nullopt;
    return (a_q - a_c + shift) / ds;
  };
  const double ds = cpu.slope - qpu.slope;
  const double da = qpu.intercept - cpu.intercept + shift;
  if (ds == 0.0 && da == 0.0) {
    est.kind = CrossoverKind::degenerate;
    est.lo = -kInf;
    est.hi = kInf;
    return est;
  }
  if (auto m = solve(cpu.intercept, cpu.slope, qpu.intercept, qpu.slope)) {
    est.kind = CrossoverKind::finite;
    est.m = *m;
  } else {
    est.kind = CrossoverKind::unbounded;
  }
  est.lo = kInf;
  est.hi = -kInf;
  for (int sc : {-1, 1}) {
    for (int sq : {-1, 1}) {
      const double s_c = cpu.slope + sc * cpu.slope_stderr;
      const double s_q = qpu.slope + sq * qpu.slope_stderr;
      const double a_c = cpu.centroid_log_cost - s_c * cpu.centroid_m;
      const double a_q = qpu.centroid_log_cost - s_q * qpu.centroid_m;
      if (auto m = solve(a_c, s_c, a_q, s_q)) {
        est.lo = std::min(est.lo, *m);
        est.hi = std::max(est.hi, *m);
      } else {
        est.hi = kInf;
      }
    }
  }
  if (est.m) {
    est.lo = std::min(est.lo, *est.m);
    est.hi = std::max(est.hi, *est.m);
  }
  return est;
}

nlohmann::json to_json(const ScalingFit& fit) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : fit.points) pts.push_back({{"M", p.m}, {"cost", p.cost}, {"std", p.std}});
  return {{"points", pts},
          {"fit_start_M", fit.fit_start_m},
          {"used", fit.used},
          {"slope", fit.slope},
          {"slope_stderr", fit.slope_stderr},
          {"intercept", fit.intercept},
          {"r_squared", fit.r_squared},
          {"centroid_M", fit.centroid_m},
          {"centroid_log_cost", fit.centroid_log_cost}};
}

nlohmann::json to_json(const CrossoverEstimate& e) {
  return {{"kind", std::string(to_string(e.kind))},
          {"cpu_hz", e.clocks.cpu_hz},
          {"qpu_hz", e.clocks.qpu_hz},
          {"crossover_M", e.m ? nlohmann::json(*e.m) : nlohmann::json(nullptr)},
          {"interval", {finite_or_null(e.lo), finite_or_null(e.hi)}}};
}

}  // namespace sidechain
