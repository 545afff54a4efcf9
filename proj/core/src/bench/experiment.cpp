#include "sidechain/bench/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <stdexcept>

#include <fmt/format.h>

#include "sidechain/classical/brute_force.hpp"
#include "sidechain/energy/problem_io.hpp"
#include "sidechain/util/rng.hpp"

namespace sidechain {
namespace fs = std::filesystem;
namespace {

Interval interval_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("interval must be [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

void check_keys(const nlohmann::json& doc, const std::set<std::string>& allowed, std::string_view what) {
  for (const auto& item : doc.items()) {
    if (!allowed.contains(item.key())) throw std::invalid_argument(fmt::format("unknown {} key '{}'", what, item.key()));
  }
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path.string()));
  return nlohmann::json::parse(in);
}

void write_text(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write {}", tmp.string()));
    out << text;
  }
  fs::rename(tmp, path);
}

bool cell_less(const CellResult& a, const CellResult& b) {
  return std::tie(a.method, a.residues, a.rotamers) < std::tie(b.method, b.residues, b.rotamers);
}

}  // namespace

std::string_view to_string(MethodKind kind) { return kind == MethodKind::qaoa ? "qaoa" : "sa"; }

MethodSpec method_from_json(const nlohmann::json& doc) {
  MethodSpec m;
  m.source = doc;
  m.name = doc.at("name").get<std::string>();
  const auto kind = doc.value("kind", std::string("qaoa"));
  if (kind == "qaoa") {
    m.kind = MethodKind::qaoa;
    check_keys(doc,
               {"name", "kind", "regime", "backend", "p", "shots", "max_iterations", "cvar_alpha", "optimizer",
                "initial_step", "final_step", "max_evaluations", "gamma", "beta", "penalty", "random_initial_state",
                "max_bond", "cutoff", "fit_start_m", "trajectories"},
               "qaoa method");
    auto& q = m.qaoa;
    q.regime = regime_from_string(doc.value("regime", std::string("xy")));
    q.backend.kind = backend_from_string(doc.value("backend", std::string("statevector")));
    q.p = doc.value("p", q.p);
    q.shots_per_iteration = doc.value("shots", 0);
    q.max_iterations = doc.value("max_iterations", 0);
    q.cvar_alpha = doc.value("cvar_alpha", q.cvar_alpha);
    q.optimizer = optimizer_from_string(doc.value("optimizer", std::string("cobyla")));
    q.optimizer_options.initial_step = doc.value("initial_step", q.optimizer_options.initial_step);
    q.optimizer_options.final_step = doc.value("final_step", q.optimizer_options.final_step);
    q.optimizer_options.max_evaluations = doc.value("max_evaluations", q.optimizer_options.max_evaluations);
    if (doc.contains("gamma")) q.gamma_range = interval_from(doc.at("gamma"));
    if (doc.contains("beta")) q.beta_range = interval_from(doc.at("beta"));
    if (doc.contains("penalty")) q.penalty = Penalty{doc.at("penalty").get<double>(), PenaltyForm::one_hot};
    q.random_initial_state = doc.value("random_initial_state", false);
    q.backend.mps.max_bond = doc.value("max_bond", q.backend.mps.max_bond);
    q.backend.mps.cutoff = doc.value("cutoff", q.backend.mps.cutoff);
    m.fit_start_m = doc.value("fit_start_m", q.backend.kind == BackendKind::mps ? 18 : 15);
  } else if (kind == "sa") {
    m.kind = MethodKind::sa;
    check_keys(doc,
               {"name", "kind", "method", "visit", "accept", "max_iterations", "initial_temperature",
                "restart_temperature_ratio", "max_evaluations", "local_search", "penalty", "start_temperature",
                "end_temperature", "fit_start_m", "trajectories"},
               "sa method");
    auto& s = m.sa;
    const auto method = doc.value("method", std::string("continuous"));
    if (method == "continuous") {
      s.method = SaMethod::continuous;
    } else if (method == "discrete") {
      s.method = SaMethod::discrete;
    } else {
      throw std::invalid_argument(fmt::format("unknown sa method '{}'", method));
    }
    s.visit = doc.value("visit", s.visit);
    s.accept = doc.value("accept", s.accept);
    s.max_iterations = doc.value("max_iterations", s.max_iterations);
    s.initial_temperature = doc.value("initial_temperature", s.initial_temperature);
    s.restart_temperature_ratio = doc.value("restart_temperature_ratio", s.restart_temperature_ratio);
    s.max_evaluations = doc.value("max_evaluations", s.max_evaluations);
    s.local_search = doc.value("local_search", s.local_search);
    if (doc.contains("penalty")) s.penalty = Penalty{doc.at("penalty").get<double>(), PenaltyForm::one_hot};
    s.discrete_start_temperature = doc.value("start_temperature", s.discrete_start_temperature);
    s.discrete_end_temperature = doc.value("end_temperature", s.discrete_end_temperature);
    m.fit_start_m = doc.value("fit_start_m", 18);
  } else {
    throw std::invalid_argument(fmt::format("unknown method kind '{}'", kind));
  }
  if (doc.contains("trajectories")) m.trajectories = doc.at("trajectories").get<int>();
  return m;
}

ExperimentPlan plan_from_json(const nlohmann::json& doc) {
  check_keys(doc, {"sizes", "residues", "rotamers", "methods", "trajectories", "seed", "generator", "brute_force_cap",
                   "reference_energies", "problems"},
             "plan");
  ExperimentPlan plan;
  if (doc.contains("sizes")) {
    for (const auto& s : doc.at("sizes")) plan.sizes.emplace_back(s.at(0).get<int>(), s.at(1).get<int>());
  }
  if (doc.contains("residues") || doc.contains("rotamers")) {
    for (int res : doc.at("residues").get<std::vector<int>>()) {
      for (int rot : doc.at("rotamers").get<std::vector<int>>()) plan.sizes.emplace_back(res, rot);
    }
  }
  if (plan.sizes.empty()) throw std::invalid_argument("plan has no sizes");
  for (auto [res, rot] : plan.sizes) {
    if (res < 1 || rot < 1) throw std::invalid_argument(fmt::format("bad size ({}, {})", res, rot));
  }
  for (const auto& m : doc.at("methods")) plan.methods.push_back(method_from_json(m));
  if (plan.methods.empty()) throw std::invalid_argument("plan has no methods");
  std::set<std::string> names;
  for (const auto& m : plan.methods) {
    if (!names.insert(m.name).second) throw std::invalid_argument(fmt::format("duplicate method name '{}'", m.name));
  }
  plan.trajectories = doc.value("trajectories", plan.trajectories);
  plan.seed = doc.value("seed", plan.seed);
  if (doc.contains("generator")) {
    const auto& g = doc.at("generator");
    check_keys(g, {"self_min", "self_max", "pair_min", "pair_max", "decimals", "decay"}, "generator");
    plan.generator.self_min = g.value("self_min", plan.generator.self_min);
    plan.generator.self_max = g.value("self_max", plan.generator.self_max);
    plan.generator.pair_min = g.value("pair_min", plan.generator.pair_min);
    plan.generator.pair_max = g.value("pair_max", plan.generator.pair_max);
    plan.generator.decimals = g.value("decimals", plan.generator.decimals);
    if (g.contains("decay")) plan.generator.decay = g.at("decay").get<double>();
  }
  plan.brute_force_cap = doc.value("brute_force_cap", plan.brute_force_cap);
  if (doc.contains("reference_energies")) {
    for (const auto& r : doc.at("reference_energies")) {
      plan.reference_energies[{r.at("residues").get<int>(), r.at("rotamers").get<int>()}] = r.at("energy").get<double>();
    }
  }
  if (doc.contains("problems")) {
    for (const auto& r : doc.at("problems")) {
      plan.problems[{r.at("residues").get<int>(), r.at("rotamers").get<int>()}] = r.at("path").get<std::string>();
    }
  }
  return plan;
}

ExperimentPlan load_plan(const fs::path& path) {
  auto plan = plan_from_json(read_json(path));
  for (auto& [size, p] : plan.problems) {
    if (p.is_relative()) p = path.parent_path() / p;
  }
  return plan;
}

RotamerProblem plan_instance(const ExperimentPlan& plan, int residues, int rotamers) {
  if (auto it = plan.problems.find({residues, rotamers}); it != plan.problems.end()) {
    auto problem = load_problem(it->second);
    if (problem.num_residues() != residues) {
      throw std::runtime_error(fmt::format("{} has {} residues, plan says {}", it->second.string(),
                                           problem.num_residues(), residues));
    }
    return problem;
  }
  GeneratorOptions g = plan.generator;
  g.rotamers_per_residue.assign(static_cast<std::size_t>(residues), rotamers);
  g.seed = derive_seed(plan.seed, 1000ULL * static_cast<std::uint64_t>(residues) + static_cast<std::uint64_t>(rotamers));
  return generate_problem(g);
}

std::string content_hash(const nlohmann::json& doc) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : doc.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

nlohmann::json to_json(const CellResult& c) {
  return {{"residues", c.residues},       {"rotamers", c.rotamers},         {"num_qubits", c.num_qubits},
          {"method", c.method},           {"kind", std::string(to_string(c.kind))},
          {"fit_start_M", c.fit_start_m}, {"hash", c.hash},                 {"ground_energy", c.ground_energy},
          {"summary", to_json(c.summary)}};
}

CellResult cell_result_from_json(const nlohmann::json& j) {
  CellResult c;
  c.residues = j.at("residues").get<int>();
  c.rotamers = j.at("rotamers").get<int>();
  c.num_qubits = j.at("num_qubits").get<int>();
  c.method = j.at("method").get<std::string>();
  c.kind = j.at("kind").get<std::string>() == "sa" ? MethodKind::sa : MethodKind::qaoa;
  c.fit_start_m = j.at("fit_start_M").get<int>();
  c.hash = j.at("hash").get<std::string>();
  c.ground_energy = j.at("ground_energy").get<double>();
  c.summary = ensemble_summary_from_json(j.at("summary"));
  return c;
}

Dataset run_experiment(const ExperimentPlan& plan, const fs::path& out,
                       const std::function<void(const CellResult&)>& progress) {
  fs::create_directories(out / "cells");
  Dataset data;
  nlohmann::json index = nlohmann::json::array();
  for (auto [residues, rotamers] : plan.sizes) {
    const auto problem = plan_instance(plan, residues, rotamers);
    const auto problem_doc = problem_to_json(problem);
    std::optional<double> ground;
    auto ground_energy = [&] {
      if (ground) return *ground;
      if (auto it = plan.reference_energies.find({residues, rotamers}); it != plan.reference_energies.end()) {
        ground = it->second;
      } else {
        double count = 1;
        for (int i = 0; i < problem.num_residues(); ++i) count *= problem.rotamers(i);
        if (count > plan.brute_force_cap) {
          throw std::runtime_error(fmt::format("size ({}, {}) has {:g} configurations, above the brute-force cap, "
                                               "and no reference energy",
                                               residues, rotamers, count));
        }
        ground = brute_force(problem, plan.brute_force_cap).ground_energy;
      }
      return *ground;
    };
    for (const auto& method : plan.methods) {
      const int trajectories = method.trajectories.value_or(plan.trajectories);
      const nlohmann::json cell_doc{{"instance", problem_doc},
                                    {"method", method.source},
                                    {"trajectories", trajectories},
                                    {"seed", plan.seed}};
      const std::string hash = content_hash(cell_doc);
      const fs::path dir = out / "cells" / hash;
      CellResult cell;
      if (fs::exists(dir / "summary.json")) {
        cell = cell_result_from_json(read_json(dir / "summary.json"));
        cell.reused = true;
      } else {
        fs::create_directories(dir);
        write_text(dir / "cell.json", cell_doc.dump(2) + "\n");
        const double e0 = ground_energy();
        const std::uint64_t seed = derive_seed(plan.seed, std::stoull(hash, nullptr, 16));
        std::vector<RunRecord> records;
        EnsembleSummary summary;
        if (method.kind == MethodKind::qaoa) {
          QaoaConfig c = method.qaoa;
          c.seed = seed;
          c.target_energy = e0;
          auto r = run_ensemble(problem, c, trajectories);
          records = std::move(r.records);
          summary = r.summary;
        } else {
          SaConfig c = method.sa;
          c.seed = seed;
          c.target_energy = e0;
          auto r = sa_ensemble(problem, c, trajectories);
          records = std::move(r.records);
          summary = r.summary;
        }
        std::ostringstream lines;
        write_jsonl(records, lines);
        write_text(dir / "records.jsonl", lines.str());
        cell.residues = residues;
        cell.rotamers = rotamers;
        cell.num_qubits = problem.num_variables();
        cell.method = method.name;
        cell.kind = method.kind;
        cell.fit_start_m = method.fit_start_m;
        cell.hash = hash;
        cell.ground_energy = e0;
        cell.summary = summary;
        write_text(dir / "summary.json", to_json(cell).dump(2) + "\n");
      }
      index.push_back({{"residues", residues}, {"rotamers", rotamers}, {"method", method.name}, {"hash", hash}});
      if (progress) progress(cell);
      data.cells.push_back(std::move(cell));
    }
  }
  write_text(out / "index.json", index.dump(2) + "\n");
  std::stable_sort(data.cells.begin(), data.cells.end(), cell_less);
  return data;
}

Dataset load_dataset(const fs::path& dir) {
  Dataset data;
  if (fs::exists(dir / "index.json")) {
    for (const auto& entry : read_json(dir / "index.json")) {
      const fs::path summary = dir / "cells" / entry.at("hash").get<std::string>() / "summary.json";
      if (!fs::exists(summary)) continue;
      auto cell = cell_result_from_json(read_json(summary));
      cell.reused = true;
      data.cells.push_back(std::move(cell));
    }
  } else if (fs::exists(dir / "cells")) {
    for (const auto& entry : fs::directory_iterator(dir / "cells")) {
      const fs::path summary = entry.path() / "summary.json";
      if (!fs::exists(summary)) continue;
      auto cell = cell_result_from_json(read_json(summary));
      cell.reused = true;
      data.cells.push_back(std::move(cell));
    }
  }
  std::stable_sort(data.cells.begin(), data.cells.end(), cell_less);
  return data;
}

}  // namespace sidechain
