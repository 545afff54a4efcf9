#include "sidechain/bench/report.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "sidechain/circuit/depth.hpp"

namespace sidechain {
namespace fs = std::filesystem;
namespace {

double round6(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(fmt::format("{:.6g}", v));
}

// Round every floating value of a document to 6 significant digits.
nlohmann::json rounded(nlohmann::json doc) {
  if (doc.is_number_float()) return round6(doc.get<double>());
  if (doc.is_structured()) {
    for (auto& v : doc) v = rounded(v);
  }
  return doc;
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << text;
}

std::vector<std::string> method_names(const Dataset& data) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& c : data.cells) {
    if (seen.insert(c.method).second) names.push_back(c.method);
  }
  return names;
}

}  // namespace

std::string format_number(double value) { return fmt::format("{:.6g}", value); }

void write_depth_table(std::ostream& out, int max_size, int p) {
  out << "N,n,method,CD,CD_SP,CNOTs\n";
  for (int size = 2; size <= max_size; ++size) {
    for (Regime regime : {Regime::xy, Regime::penalty, Regime::baseline}) {
      const auto row = depth_row(regime, size, size, p);
      out << fmt::format("{},{},{},{},{},{}\n", size, size, to_string(regime), row.cd, row.cd_sp, row.cnot_count);
    }
  }
}

void write_scaling_csv(const Dataset& data, std::ostream& out) {
  out << "M,residues,rotamers,method,mean_cost,std_cost,convergence_ratio,trajectories,converged\n";
  for (const auto& c : data.cells) {
    out << fmt::format("{},{},{},{},{},{},{},{},{}\n", c.num_qubits, c.residues, c.rotamers, c.method,
                       optional_number(c.summary.mean_cost), optional_number(c.summary.std_cost),
                       format_number(c.summary.convergence_ratio), c.summary.trajectories, c.summary.converged);
  }
}

std::vector<ScalingPoint> scaling_points(const Dataset& data, const std::string& method) {
  std::vector<ScalingPoint> points;
  for (const auto& c : data.cells) {
    if (c.method != method || !c.summary.mean_cost) continue;
    points.push_back({c.num_qubits, *c.summary.mean_cost, c.summary.std_cost.value_or(0.0)});
  }
  return points;
}

std::vector<MethodFit> fit_methods(const Dataset& data, std::optional<int> fit_start_m) {
  std::vector<MethodFit> fits;
  for (const auto& name : method_names(data)) {
    MethodFit f;
    f.method = name;
    int start = 0;
    for (const auto& c : data.cells) {
      if (c.method == name) {
        f.kind = c.kind;
        start = c.fit_start_m;
      }
    }
    try {
      const auto points = scaling_points(data, name);
      f.fit = fit_scaling(points, fit_start_m.value_or(start));
    } catch (const std::invalid_argument& e) {
      f.error = e.what();
    }
    fits.push_back(std::move(f));
  }
  return fits;
}

void write_convergence_table(const Dataset& data, const std::string& method, std::ostream& out) {
  out << "Res.,Rot.,Total,Success Ratio\n";
  for (const auto& c : data.cells) {
    if (c.method != method) continue;
    out << fmt::format("{},{},{},{}\n", c.residues, c.rotamers, c.summary.trajectories,
                       format_number(c.summary.convergence_ratio));
  }
}

void emit_reports(const Dataset& data, const fs::path& dir, const ReportOptions& options) {
  fs::create_directories(dir);
  {
    std::ostringstream s;
    write_depth_table(s, options.depth_max_size);
    write_file(dir / "depth_table.csv", s.str());
  }
  {
    std::ostringstream s;
    write_scaling_csv(data, s);
    write_file(dir / "scaling.csv", s.str());
  }
  const auto fits = fit_methods(data, options.fit_start_m);
  nlohmann::json fits_doc = nlohmann::json::array();
  for (const auto& f : fits) {
    nlohmann::json j{{"method", f.method}, {"kind", std::string(to_string(f.kind))}};
    if (f.fit) {
      j["fit"] = to_json(*f.fit);
    } else {
      j["error"] = f.error;
    }
    fits_doc.push_back(j);
  }
  write_file(dir / "fits.json", rounded(fits_doc).dump(2) + "\n");

  nlohmann::json cross = nlohmann::json::array();
  for (const auto& c : fits) {
    if (c.kind != MethodKind::sa || !c.fit) continue;
    for (const auto& q : fits) {
      if (q.kind != MethodKind::qaoa || !q.fit) continue;
      auto j = to_json(estimate_crossover(*c.fit, *q.fit, options.clocks));
      j["classical"] = c.method;
      j["quantum"] = q.method;
      cross.push_back(j);
    }
  }
  write_file(dir / "crossover.json", rounded(cross).dump(2) + "\n");

  for (const auto& name : method_names(data)) {
    std::ostringstream s;
    write_convergence_table(data, name, s);
    write_file(dir / fmt::format("convergence_{}.csv", name), s.str());
  }
}

}  // namespace sidechain
