// Command-line front end: experiment runs, fits, reports and one-off solves.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "sidechain/bench/experiment.hpp"
#include "sidechain/bench/report.hpp"
#include "sidechain/bench/scaling.hpp"
#include "sidechain/circuit/ansatz.hpp"
#include "sidechain/circuit/depth.hpp"
#include "sidechain/circuit/gate_list.hpp"
#include "sidechain/classical/annealing.hpp"
#include "sidechain/classical/brute_force.hpp"
#include "sidechain/energy/generator.hpp"
#include "sidechain/energy/problem_io.hpp"
#include "sidechain/qaoa/driver.hpp"

namespace fs = std::filesystem;
using namespace sidechain;

namespace {

void print_fits(const std::vector<MethodFit>& fits) {
  fmt::print("method,kind,fit_start_M,points,slope,slope_stderr,intercept,r_squared\n");
  for (const auto& f : fits) {
    if (!f.fit) {
      fmt::print("{},{},,,,,,  # {}\n", f.method, to_string(f.kind), f.error);
      continue;
    }
    fmt::print("{},{},{},{},{},{},{},{}\n", f.method, to_string(f.kind), f.fit->fit_start_m, f.fit->used,
               format_number(f.fit->slope), format_number(f.fit->slope_stderr), format_number(f.fit->intercept),
               format_number(f.fit->r_squared));
  }
}

std::string bounded(double v) { return std::isfinite(v) ? format_number(v) : (v > 0 ? "inf" : "-inf"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotamer packing benchmarks: QAOA ensembles, annealing baselines, scaling fits."};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Execute (or resume) an experiment plan");
  std::string plan_path, out_dir;
  bool quiet = false;
  run->add_option("--plan", plan_path, "Plan file (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Results directory")->required();
  run->add_flag("--quiet", quiet, "No per-cell progress lines");

  // fit
  auto* fit = app.add_subcommand("fit", "Log-linear scaling fit per method");
  std::string in_dir;
  std::optional<int> fit_start;
  fit->add_option("--in", in_dir, "Results directory")->required()->check(CLI::ExistingDirectory);
  fit->add_option("--fit-start-m", fit_start, "Smallest M in the fit (default: per method)");

  // crossover
  auto* crossover = app.add_subcommand("crossover", "Clock-normalized crossover between annealing and QAOA fits");
  double cpu_ghz = 1.0, qpu_khz = 1.0;
  crossover->add_option("--in", in_dir, "Results directory")->required()->check(CLI::ExistingDirectory);
  crossover->add_option("--cpu-ghz", cpu_ghz, "Classical clock in GHz")->capture_default_str();
  crossover->add_option("--qpu-khz", qpu_khz, "Circuit rate in kHz")->capture_default_str();
  crossover->add_option("--fit-start-m", fit_start, "Smallest M in the fits (default: per method)");

  // depth-table
  auto* depth_table = app.add_subcommand("depth-table", "Logical CNOT depth for N = n = 2..max");
  int max_size = 7, depth_p = 1;
  depth_table->add_option("--max-size", max_size)->capture_default_str()->check(CLI::Range(2, 12));
  depth_table->add_option("--p", depth_p, "Ansatz layers")->capture_default_str()->check(CLI::PositiveNumber);

  // report
  auto* report = app.add_subcommand("report", "Write CSV/JSON reports for a results directory");
  std::string report_dir;
  report->add_option("--in", in_dir, "Results directory")->required()->check(CLI::ExistingDirectory);
  report->add_option("--out", report_dir, "Report directory (default: <in>/report)");
  report->add_option("--fit-start-m", fit_start, "Smallest M in the fits (default: per method)");
  report->add_option("--cpu-ghz", cpu_ghz)->capture_default_str();
  report->add_option("--qpu-khz", qpu_khz)->capture_default_str();
  report->add_option("--max-size", max_size, "Depth table size")->capture_default_str();

  // generate
  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic instance");
  int residues = 2, rotamers = 2;
  std::uint64_t seed = 0;
  std::optional<double> decay;
  std::string problem_out;
  generate->add_option("--residues,-N", residues)->required()->check(CLI::PositiveNumber);
  generate->add_option("--rotamers,-n", rotamers)->required()->check(CLI::PositiveNumber);
  generate->add_option("--seed", seed)->capture_default_str();
  generate->add_option("--decay", decay, "Also fill non-adjacent pair tables, scaled by decay^(d-1)");
  generate->add_option("--out", problem_out, "Output path (.json or .csv); stdout JSON if omitted");

  // depth
  auto* depth = app.add_subcommand("depth", "Depth of one ansatz with its scheduling trace");
  std::string regime_name = "xy";
  depth->add_option("--regime", regime_name)->capture_default_str();
  depth->add_option("--residues,-N", residues)->required();
  depth->add_option("--rotamers,-n", rotamers)->required();
  depth->add_option("--p", depth_p)->capture_default_str();

  // circuit
  auto* circuit = app.add_subcommand("circuit", "Print the gate list of an ansatz for a problem");
  std::string problem_path;
  std::vector<double> params;
  circuit->add_option("--problem", problem_path)->required()->check(CLI::ExistingFile);
  circuit->add_option("--regime", regime_name)->capture_default_str();
  circuit->add_option("--p", depth_p)->capture_default_str();
  circuit->add_option("--params", params, "gamma_1 beta_1 ... (default: all 0.1)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one instance with one method");
  std::string method = "brute";
  std::string backend_name = "statevector";
  int trajectories = 1, p = 4, shots = 0, max_iterations = 0;
  solve->add_option("--problem", problem_path)->required()->check(CLI::ExistingFile);
  solve->add_option("--method", method, "brute | qaoa | sa | sa-discrete")->capture_default_str();
  solve->add_option("--regime", regime_name, "QAOA regime")->capture_default_str();
  solve->add_option("--backend", backend_name, "statevector | subspace | mps")->capture_default_str();
  solve->add_option("--p", p)->capture_default_str();
  solve->add_option("--shots", shots, "Shots per iteration (0: default)")->capture_default_str();
  solve->add_option("--max-iterations", max_iterations, "0: method default")->capture_default_str();
  solve->add_option("--trajectories", trajectories)->capture_default_str()->check(CLI::PositiveNumber);
  solve->add_option("--seed", seed)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto plan = load_plan(plan_path);
      run_experiment(plan, out_dir, [&](const CellResult& c) {
        if (quiet) return;
        fmt::print(stderr, "{:>12} N={} n={} M={} ratio={} cost={}{}\n", c.method, c.residues, c.rotamers,
                   c.num_qubits, format_number(c.summary.convergence_ratio),
                   c.summary.mean_cost ? format_number(*c.summary.mean_cost) : "-", c.reused ? " (cached)" : "");
      });
    } else if (*fit) {
      print_fits(fit_methods(load_dataset(in_dir), fit_start));
    } else if (*crossover) {
      const auto fits = fit_methods(load_dataset(in_dir), fit_start);
      const Clocks clocks{cpu_ghz * 1e9, qpu_khz * 1e3};
      fmt::print("classical,quantum,kind,crossover_M,lo,hi\n");
      for (const auto& c : fits) {
        if (c.kind != MethodKind::sa || !c.fit) continue;
        for (const auto& q : fits) {
          if (q.kind != MethodKind::qaoa || !q.fit) continue;
          const auto e = estimate_crossover(*c.fit, *q.fit, clocks);
          fmt::print("{},{},{},{},{},{}\n", c.method, q.method, to_string(e.kind), e.m ? format_number(*e.m) : "",
                     bounded(e.lo), bounded(e.hi));
        }
      }
    } else if (*depth_table) {
      write_depth_table(std::cout, max_size, depth_p);
    } else if (*report) {
      const fs::path dir = report_dir.empty() ? fs::path(in_dir) / "report" : fs::path(report_dir);
      ReportOptions options;
      options.depth_max_size = max_size;
      options.fit_start_m = fit_start;
      options.clocks = {cpu_ghz * 1e9, qpu_khz * 1e3};
      emit_reports(load_dataset(in_dir), dir, options);
      fmt::print("{}\n", dir.string());
    } else if (*generate) {
      auto options = GeneratorOptions::uniform(residues, rotamers, seed);
      options.decay = decay;
      const auto problem = generate_problem(options);
      if (problem_out.empty()) {
        fmt::print("{}\n", problem_to_json(problem).dump(2));
      } else {
        save_problem(problem, problem_out);
      }
    } else if (*depth) {
      const auto regime = regime_from_string(regime_name);
      const auto row = depth_row(regime, residues, rotamers, depth_p);
      fmt::print("{}\n", to_json(row).dump());
    } else if (*circuit) {
      const auto problem = load_problem(problem_path);
      const auto spec = make_ansatz_spec(problem, regime_from_string(regime_name), depth_p);
      if (params.empty()) params.assign(spec.num_params(), 0.1);
      write_gate_list(assemble_ansatz(spec, params), std::cout);
    } else if (*solve) {
      const auto problem = load_problem(problem_path);
      const auto oracle = brute_force(problem);
      if (method == "brute") {
        fmt::print("ground_energy {}\n", format_number(oracle.ground_energy));
        for (const auto& cfg : oracle.ground_configs) fmt::print("config {}\n", fmt::join(cfg, " "));
        return 0;
      }
      std::vector<RunRecord> records;
      EnsembleSummary summary;
      if (method == "qaoa") {
        QaoaConfig c;
        c.regime = regime_from_string(regime_name);
        c.backend.kind = backend_from_string(backend_name);
        c.p = p;
        c.shots_per_iteration = shots;
        c.max_iterations = max_iterations;
        c.seed = seed;
        c.target_energy = oracle.ground_energy;
        auto r = run_ensemble(problem, c, trajectories);
        records = std::move(r.records);
        summary = r.summary;
      } else if (method == "sa" || method == "sa-discrete") {
        SaConfig c;
        c.method = method == "sa" ? SaMethod::continuous : SaMethod::discrete;
        if (max_iterations > 0) c.max_iterations = max_iterations;
        c.seed = seed;
        c.target_energy = oracle.ground_energy;
        auto r = sa_ensemble(problem, c, trajectories);
        records = std::move(r.records);
        summary = r.summary;
      } else {
        throw CLI::ValidationError("--method", "expected brute, qaoa, sa or sa-discrete");
      }
      write_jsonl(records, std::cout);
      std::cerr << to_json(summary).dump() << '\n';
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
