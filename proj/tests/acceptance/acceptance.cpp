// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run all criteria
//   acceptance --only 3   run criterion 3
//
// Exit status is nonzero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sidechain/bench/scaling.hpp"
#include "sidechain/circuit/ansatz.hpp"
#include "sidechain/circuit/depth.hpp"
#include "sidechain/classical/annealing.hpp"
#include "sidechain/classical/brute_force.hpp"
#include "sidechain/energy/generator.hpp"
#include "sidechain/energy/ising.hpp"
#include "sidechain/qaoa/cvar.hpp"
#include "sidechain/qaoa/driver.hpp"
#include "sidechain/sim/mps.hpp"
#include "sidechain/sim/statevector.hpp"
#include "support/oracles.hpp"

using namespace sidechain;
namespace t = sidechain::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<int> random_sizes(Rng& rng, int max_total) {
  std::vector<int> sizes;
  int total = 0;
  const int residues = 1 + static_cast<int>(rng.below(6));
  for (int i = 0; i < residues; ++i) {
    const int n = 1 + static_cast<int>(rng.below(4));
    if (total + n > max_total) break;
    sizes.push_back(n);
    total += n;
  }
  if (sizes.empty()) sizes.push_back(1 + static_cast<int>(rng.below(4)));
  return sizes;
}

std::vector<double> random_params(Rng& rng, std::size_t count) {
  std::vector<double> p(count);
  for (auto& v : p) v = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return p;
}

// 1. x^T Q x + c against an explicit spin sum of the Ising form, exhaustively.
Outcome qubo_ising_identity() {
  Rng rng(101);
  double worst = 0;
  long long strings = 0;
  for (int inst = 0; inst < 200; ++inst) {
    const auto p = t::random_problem(rng, random_sizes(rng, 16), inst % 2 == 0);
    const auto q = build_qubo(p, Penalty{rng.uniform(0.5, 3.0), inst % 3 == 0 ? PenaltyForm::pairwise : PenaltyForm::one_hot});
    const auto h = qubo_to_ising(q);
    const int m = p.num_variables();
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        if (h.couplings(i, j) != 0.0) pairs.emplace_back(i, j);
      }
    }
    double scale = std::abs(q.constant);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) scale += std::abs(q.q(a, b));
    }
    std::vector<int> ones;
    for (std::uint64_t x = 0; x < (1ULL << m); ++x) {
      ones.clear();
      for (int k = 0; k < m; ++k) {
        if ((x >> k) & 1) ones.push_back(k);
      }
      double lhs = q.constant;
      for (int a : ones) {
        for (int b : ones) lhs += q.q(a, b);
      }
      auto z = [&](int k) { return ((x >> k) & 1) ? -1.0 : 1.0; };
      double rhs = h.constant;
      for (int k = 0; k < m; ++k) rhs -= h.fields(k) * z(k);
      for (auto [i, j] : pairs) rhs += h.couplings(i, j) * z(i) * z(j);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(scale, 1.0));
      ++strings;
    }
  }
  return {worst <= 1e-12, fmt::format("200 instances, {} strings, worst relative error {:.3g}", strings, worst)};
}

// 2. Brute force over valid configurations against a scan of all 2^M strings.
Outcome oracle_equivalence() {
  Rng rng(202);
  int mismatches = 0;
  for (int inst = 0; inst < 50; ++inst) {
    const int residues = 1 + static_cast<int>(rng.below(4));
    std::vector<int> sizes(static_cast<std::size_t>(residues));
    for (auto& n : sizes) n = 1 + static_cast<int>(rng.below(4));
    const auto p = t::random_problem(rng, sizes, inst % 2 == 0);
    const auto oracle = brute_force(p);
    const auto q = build_qubo(p, Penalty{default_penalty(p)});
    const int m = p.num_variables();
    double best = 1e300;
    std::vector<std::vector<int>> argmin;
    for (std::uint64_t x = 0; x < (1ULL << m); ++x) {
      const auto bits = Bitstring::from_index(x, m);
      if (!is_valid(bits, p.layout())) continue;
      const double e = q.energy(bits);
      if (e < best - kTieTolerance) {
        best = e;
        argmin.clear();
      }
      if (std::abs(e - best) <= kTieTolerance) argmin.push_back(decode(bits, p).rotamers);
    }
    std::sort(argmin.begin(), argmin.end());
    auto configs = oracle.ground_configs;
    std::sort(configs.begin(), configs.end());
    if (std::abs(best - oracle.ground_energy) > 1e-9 || configs != argmin) ++mismatches;
  }
  return {mismatches == 0, fmt::format("50 instances, {} mismatches", mismatches)};
}

// 3. Logical depth against the reference CD / CD-SP table (N = n = 2..7, p = 1).
Outcome depth_table() {
  struct Row {
    int size;
    Regime regime;
    int cd, cd_sp;
  };
  const std::vector<Row> table{
      {2, Regime::xy, 6, 9},   {2, Regime::penalty, 6, 6},   {2, Regime::baseline, 4, 4},
      {3, Regime::xy, 22, 28}, {3, Regime::penalty, 20, 20}, {3, Regime::baseline, 16, 16},
      {4, Regime::xy, 20, 29}, {4, Regime::penalty, 22, 22}, {4, Regime::baseline, 16, 16},
      {5, Regime::xy, 34, 46}, {5, Regime::penalty, 30, 30}, {5, Regime::baseline, 28, 28},
      {6, Regime::xy, 36, 51}, {6, Regime::penalty, 42, 42}, {6, Regime::baseline, 32, 32},
      {7, Regime::xy, 40, 58}, {7, Regime::penalty, 46, 46}, {7, Regime::baseline, 34, 34},
  };
  int matched = 0;
  std::string notes;
  for (const auto& r : table) {
    const auto got = depth_row(r.regime, r.size, r.size);
    if (got.cd == r.cd && got.cd_sp == r.cd_sp) {
      ++matched;
      continue;
    }
    Rng rng(1);
    const auto p = t::random_problem(rng, r.size, r.size);
    const std::vector<double> params{0.3, 0.3};
    const auto circuit = assemble_ansatz(make_ansatz_spec(p, r.regime, 1), params);
    notes += fmt::format("\n  ({0},{0}) {1}: CD {2} (want {3}), CD-SP {4} (want {5})\n{6}", r.size,
                         to_string(r.regime), got.cd, r.cd, got.cd_sp, r.cd_sp,
                         logical_depth(circuit, true).describe());
  }
  return {matched == static_cast<int>(table.size()), fmt::format("{}/{} table cells match{}", matched, table.size(), notes)};
}

// 4. xy-regime statevector sampling never leaves the one-hot subspace.
Outcome weight_conservation() {
  Rng rng(404);
  long long shots = 0, invalid = 0;
  double worst_mass = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const int residues = 1 + static_cast<int>(rng.below(4));
    const int rotamers = 2 + static_cast<int>(rng.below(3));
    const auto p = t::random_problem(rng, residues, rotamers);
    const auto spec = make_ansatz_spec(p, Regime::xy, 1 + static_cast<int>(rng.below(4)));
    StateVector sv(p.num_variables());
    sv.run(assemble_ansatz(spec, random_params(rng, spec.num_params())));
    const auto probs = sv.probabilities();
    double mass = 0;
    for (Eigen::Index x = 0; x < probs.size(); ++x) {
      if (!is_valid(Bitstring::from_index(static_cast<std::uint64_t>(x), p.num_variables()), p.layout())) mass += probs(x);
    }
    worst_mass = std::max(worst_mass, mass);
    for (const auto& s : sv.sample(50000, rng)) {
      ++shots;
      if (!is_valid(s, p.layout())) ++invalid;
    }
  }
  return {invalid == 0 && worst_mass < 1e-10,
          fmt::format("{} shots, {} invalid, largest invalid mass {:.3g}", shots, invalid, worst_mass)};
}

// 5. xy SV-QAOA at p = 4 finds the ground state in every trajectory.
Outcome sv_convergence() {
  bool pass = true;
  std::string detail;
  for (int residues : {2, 3, 4}) {
    for (int rotamers : {2, 3, 4}) {
      const auto p = generate_problem(GeneratorOptions::uniform(residues, rotamers, 500 + 10 * residues + rotamers));
      QaoaConfig c;
      c.regime = Regime::xy;
      c.p = 4;
      c.seed = 55;
      c.target_energy = brute_force(p).ground_energy;
      const auto e = run_ensemble(p, c, 20);
      pass = pass && e.summary.converged == 20;
      detail += fmt::format(" ({},{}):{}/20", residues, rotamers, e.summary.converged);
    }
  }
  return {pass, "converged" + detail};
}

// 6. Unbounded MPS sampling against exact statevector probabilities.
Outcome mps_agreement() {
  Rng rng(606);
  struct Case {
    Regime regime;
    int residues, rotamers;
  };
  const std::vector<Case> cases{{Regime::xy, 2, 2},       {Regime::xy, 2, 3},      {Regime::xy, 3, 3},
                                {Regime::xy, 2, 5},       {Regime::xy, 4, 3},      {Regime::xy, 3, 4},
                                {Regime::xy, 2, 6},       {Regime::baseline, 2, 2}, {Regime::penalty, 2, 3},
                                {Regime::baseline, 3, 2}};
  double worst = 0;
  std::string detail;
  for (const auto& cs : cases) {
    const auto p = t::random_problem(rng, cs.residues, cs.rotamers);
    const auto spec = make_ansatz_spec(p, cs.regime, 2);
    const auto circuit = assemble_ansatz(spec, random_params(rng, spec.num_params()));
    StateVector sv(p.num_variables());
    sv.run(circuit);
    MpsState mps(p.num_variables(), MpsOptions{0, 0.0});
    mps.run(circuit);
    const auto freq = t::empirical(mps.sample(100000, rng), p.num_variables());
    const double tv = t::total_variation(freq, sv.probabilities());
    worst = std::max(worst, tv);
    detail += fmt::format(" {}:{:.4f}", p.num_variables(), tv);
  }
  return {worst <= 0.02, fmt::format("worst TV {:.4f} over 10 circuits; M:TV{}", worst, detail)};
}

// 7. N = 5, n = 3..7 sweep: annealing fit quality and slope ordering.
Outcome scaling_pipeline() {
  std::vector<ScalingPoint> sa_points, q_points;
  std::string detail;
  for (int rotamers = 3; rotamers <= 7; ++rotamers) {
    const auto p = generate_problem(GeneratorOptions::uniform(5, rotamers, 700 + rotamers));
    const double ground = brute_force(p).ground_energy;
    const int m = p.num_variables();

    SaConfig sa;
    sa.seed = 71;
    sa.target_energy = ground;
    const auto s = sa_ensemble(p, sa, 500);

    QaoaConfig q;
    q.regime = Regime::xy;
    q.p = 4;
    q.backend.kind = BackendKind::subspace;
    q.seed = 72;
    q.target_energy = ground;
    const auto r = run_ensemble(p, q, 100);

    if (s.summary.mean_cost) sa_points.push_back({m, *s.summary.mean_cost, s.summary.std_cost.value_or(0)});
    if (r.summary.mean_cost) q_points.push_back({m, *r.summary.mean_cost, r.summary.std_cost.value_or(0)});
    detail += fmt::format("\n  M={} SA ratio {:.3f} cost {:.4g} | QAOA ratio {:.3f} cost {:.4g}", m,
                          s.summary.convergence_ratio, s.summary.mean_cost.value_or(NAN),
                          r.summary.convergence_ratio, r.summary.mean_cost.value_or(NAN));
  }
  try {
    const auto fs = fit_scaling(sa_points, 18);
    const auto fq = fit_scaling(q_points, 15);
    const bool pass = fs.r_squared >= 0.9 && fq.slope < fs.slope;
    return {pass, fmt::format("SA A={:.4f}+-{:.4f} r2={:.4f} | QAOA A={:.4f}+-{:.4f} r2={:.4f}{}", fs.slope,
                              fs.slope_stderr, fs.r_squared, fq.slope, fq.slope_stderr, fq.r_squared, detail)};
  } catch (const std::invalid_argument& e) {
    return {false, fmt::format("fit failed: {}{}", e.what(), detail)};
  }
}

// 8. CVaR against a sort-based oracle; planted slopes recovered by the fit.
Outcome cvar_and_fit() {
  Rng rng(808);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> e(1 + rng.below(200));
    // Coarse values produce ties.
    for (auto& v : e) v = std::round(rng.uniform(-10, 10) * 4) / 4;
    const double alpha = k % 10 == 0 ? 1.0 : std::max(1e-3, rng.uniform());
    worst = std::max(worst, std::abs(cvar(e, alpha) - t::sorted_cvar(e, alpha)));
  }
  int inside = 0;
  const int reps = 100;
  for (int r = 0; r < reps; ++r) {
    const double slope = rng.uniform(0.02, 0.3);
    std::vector<ScalingPoint> pts;
    for (int m = 10; m <= 52; m += 3) pts.push_back({m, std::exp(1.5 + slope * m) * (1 + 0.05 * rng.normal()), 0});
    const auto f = fit_scaling(pts, 10);
    if (std::abs(f.slope - slope) <= 3 * f.slope_stderr) ++inside;
  }
  return {worst <= 1e-12 && inside >= 95,
          fmt::format("cvar worst error {:.3g} on 1000 multisets; planted slope within 3 stderr in {}/{} fits", worst,
                      inside, reps)};
}

// 9. Crossover on planted lines and monotonicity in the circuit rate.
Outcome crossover_machinery() {
  Rng rng(909);
  double worst = 0;
  bool monotone = true;
  auto line = [](double a, double s) {
    std::vector<ScalingPoint> pts;
    for (int m = 10; m <= 40; m += 5) pts.push_back({m, std::exp(a + s * m), 0});
    return fit_scaling(pts, 0);
  };
  for (int k = 0; k < 100; ++k) {
    const double ac = rng.uniform(0, 5), aq = rng.uniform(0, 5);
    const double sq = rng.uniform(0.01, 0.2), sc = sq + rng.uniform(0.01, 0.2);
    const auto fc = line(ac, sc), fq = line(aq, sq);
    const Clocks clocks{rng.uniform(1e8, 1e10), rng.uniform(1e2, 1e4)};
    const auto e = estimate_crossover(fc, fq, clocks);
    const double want = (aq - ac + std::log(clocks.cpu_hz) - std::log(clocks.qpu_hz)) / (sc - sq);
    worst = std::max(worst, e.m ? std::abs(*e.m - want) : INFINITY);
    double prev = INFINITY;
    for (double hz = 1e1; hz <= 1e7; hz *= 10) {
      const auto g = estimate_crossover(fc, fq, {clocks.cpu_hz, hz});
      if (!g.m || *g.m > prev) monotone = false;
      prev = g.m.value_or(INFINITY);
    }
  }
  return {worst <= 1e-9 && monotone,
          fmt::format("worst intersection error {:.3g}; monotone in circuit rate: {}", worst, monotone ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "Criteria to run (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria{
      {1, {"QUBO/Ising identity", qubo_ising_identity}},
      {2, {"oracle equivalence", oracle_equivalence}},
      {3, {"depth table", depth_table}},
      {4, {"Hamming-weight conservation", weight_conservation}},
      {5, {"SV-QAOA convergence", sv_convergence}},
      {6, {"MPS/SV agreement", mps_agreement}},
      {7, {"scaling pipeline", scaling_pipeline}},
      {8, {"CVaR and fit oracles", cvar_and_fit}},
      {9, {"crossover machinery", crossover_machinery}},
  };
  bool all = true;
  for (const auto& [id, entry] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = entry.second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    fmt::print("criterion {} {}: {} ({:.1f} s) {}\n", id, o.pass ? "PASS" : "FAIL", entry.first, secs, o.detail);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
