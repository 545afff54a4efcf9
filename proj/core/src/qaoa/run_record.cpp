#include "sidechain/qaoa/run_record.hpp"

#include <cmath>
#include <istream>
#include <ostream>

namespace sidechain {
namespace {

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<T>();
}

}  // namespace

nlohmann::json to_json(const RunRecord& r) {
  nlohmann::json j{{"trajectory_id", r.trajectory_id},
                   {"seed", r.seed},
                   {"method", r.method},
                   {"regime", r.regime},
                   {"backend", r.backend},
                   {"iterations_used", r.iterations_used},
                   {"total_shots", r.total_shots},
                   {"evaluations", r.evaluations},
                   {"cost", r.cost},
                   {"converged", r.converged},
                   {"best_energy", optional_json(r.best_energy)},
                   {"best_bitstring", r.best_bitstring},
                   {"wall_time", r.wall_time},
                   {"invalid_samples", r.invalid_samples},
                   {"max_invalid_mass", optional_json(r.max_invalid_mass)},
                   {"max_bond_reached", r.max_bond_reached},
                   {"discarded_weight", r.discarded_weight}};
  j["first_hit"] = r.first_hit ? nlohmann::json{{"iteration", r.first_hit->iteration}, {"shot", r.first_hit->shot}}
                               : nlohmann::json(nullptr);
  return j;
}

RunRecord run_record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.trajectory_id = j.at("trajectory_id").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.method = j.value("method", "");
  r.regime = j.value("regime", "");
  r.backend = j.value("backend", "");
  r.iterations_used = j.value("iterations_used", 0);
  r.total_shots = j.value("total_shots", 0LL);
  r.evaluations = j.value("evaluations", 0LL);
  r.cost = j.at("cost").get<long long>();
  r.converged = j.at("converged").get<bool>();
  r.best_energy = optional_from<double>(j, "best_energy");
  r.best_bitstring = j.value("best_bitstring", "");
  r.wall_time = j.value("wall_time", 0.0);
  r.invalid_samples = j.value("invalid_samples", 0LL);
  r.max_invalid_mass = optional_from<double>(j, "max_invalid_mass");
  r.max_bond_reached = j.value("max_bond_reached", 0);
  r.discarded_weight = j.value("discarded_weight", 0.0);
  if (j.contains("first_hit") && !j.at("first_hit").is_null()) {
    r.first_hit = FirstHit{j.at("first_hit").at("iteration").get<int>(), j.at("first_hit").at("shot").get<int>()};
  }
  return r;
}

void write_jsonl(std::span<const RunRecord> records, std::ostream& out) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::vector<RunRecord> read_jsonl(std::istream& in) {
  std::vector<RunRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(run_record_from_json(nlohmann::json::parse(line)));
  }
  return out;
}

EnsembleSummary summarize(std::span<const RunRecord> records) {
  EnsembleSummary s;
  s.trajectories = records.size();
  double sum = 0.0;
  for (const auto& r : records) {
    if (!r.converged) continue;
    ++s.converged;
    sum += static_cast<double>(r.cost);
  }
  if (s.trajectories == 0 || s.converged == 0) return s;
  s.convergence_ratio = static_cast<double>(s.converged) / static_cast<double>(s.trajectories);
  const double mean = sum / static_cast<double>(s.converged);
  double ss = 0.0;
  for (const auto& r : records) {
    if (r.converged) ss += (static_cast<double>(r.cost) - mean) * (static_cast<double>(r.cost) - mean);
  }
  const double sd = s.converged > 1 ? std::sqrt(ss / static_cast<double>(s.converged - 1)) : 0.0;
  s.mean_cost = mean / s.convergence_ratio;
  s.std_cost = sd / s.convergence_ratio;
  return s;
}

nlohmann::json to_json(const EnsembleSummary& s) {
  return {{"trajectories", s.trajectories},
          {"converged", s.converged},
          {"convergence_ratio", s.convergence_ratio},
          {"mean_cost", optional_json(s.mean_cost)},
          {"std_cost", optional_json(s.std_cost)}};
}

EnsembleSummary ensemble_summary_from_json(const nlohmann::json& j) {
  EnsembleSummary s;
  s.trajectories = j.at("trajectories").get<std::size_t>();
  s.converged = j.at("converged").get<std::size_t>();
  s.convergence_ratio = j.at("convergence_ratio").get<double>();
  s.mean_cost = optional_from<double>(j, "mean_cost");
  s.std_cost = optional_from<double>(j, "std_cost");
  return s;
}

}  // namespace sidechain
