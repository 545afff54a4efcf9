#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "sidechain/classical/annealing.hpp"
#include "sidechain/classical/brute_force.hpp"
#include "sidechain/energy/generator.hpp"
#include "support/oracles.hpp"

using namespace sidechain;
namespace t = sidechain::testing;

namespace {

RotamerProblem separable(int residues, int rotamers) {
  ProblemBuilder b(std::vector<int>(static_cast<std::size_t>(residues), rotamers), true);
  for (int i = 0; i < residues; ++i) {
    for (int a = 0; a < rotamers; ++a) b.set_self_energy(i, a, a == 0 ? -1.0 : 0.0);
  }
  return b.build();
}

// Minimum over all 2^M strings of the penalized QUBO, valid strings only.
double full_scan_ground(const RotamerProblem& p) {
  const auto q = build_qubo(p, Penalty{default_penalty(p)});
  const int m = p.num_variables();
  double best = 1e300;
  for (std::uint64_t x = 0; x < (1ULL << m); ++x) {
    const auto bits = Bitstring::from_index(x, m);
    if (is_valid(bits, p.layout())) best = std::min(best, q.energy(bits));
  }
  return best;
}

}  // namespace

TEST(brute_force, degenerate_and_separable) {
  const auto zero = [] {
    ProblemBuilder b({2, 2}, true);
    for (int i = 0; i < 2; ++i) {
      for (int a = 0; a < 2; ++a) b.set_self_energy(i, a, 0.0);
    }
    return b.build();
  }();
  const auto r0 = brute_force(zero);
  EXPECT_EQ(r0.ground_energy, 0.0);
  EXPECT_EQ(r0.ground_configs.size(), 4u);
  EXPECT_EQ(r0.evaluations, 4);

  const auto r1 = brute_force(separable(4, 3));
  EXPECT_EQ(r1.ground_energy, -4.0);
  ASSERT_EQ(r1.ground_configs.size(), 1u);
  EXPECT_EQ(r1.ground_configs[0], (std::vector<int>{0, 0, 0, 0}));
}

TEST(brute_force, agrees_with_full_scan) {
  const auto p = generate_problem(GeneratorOptions::uniform(4, 4, 13));
  EXPECT_NEAR(brute_force(p).ground_energy, full_scan_ground(p), 1e-12);
}

TEST(brute_force, cap) { EXPECT_THROW(brute_force(separable(5, 4), 100), std::length_error); }

TEST(brute_force, relabeling_and_shift) {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = t::random_problem(rng, {2, 3, 2}, false);
    const auto base = brute_force(p);
    // Reverse the residue order.
    ProblemBuilder rev({2, 3, 2}, false);
    ProblemBuilder shifted({2, 3, 2}, false);
    const double c = 0.75;
    for (int i = 0; i < 3; ++i) {
      for (int a = 0; a < p.rotamers(i); ++a) {
        rev.set_self_energy(2 - i, a, p.self_energy(i, a));
        shifted.set_self_energy(i, a, p.self_energy(i, a) + (i == 1 ? c : 0.0));
      }
      for (int j = i + 1; j < 3; ++j) {
        for (int a = 0; a < p.rotamers(i); ++a) {
          for (int b = 0; b < p.rotamers(j); ++b) {
            rev.set_pair_energy(2 - i, a, 2 - j, b, p.pair_energy(i, a, j, b));
            shifted.set_pair_energy(i, a, j, b, p.pair_energy(i, a, j, b));
          }
        }
      }
    }
    EXPECT_NEAR(brute_force(rev.build()).ground_energy, base.ground_energy, 1e-12);
    const auto s = brute_force(shifted.build());
    EXPECT_NEAR(s.ground_energy, base.ground_energy + c, 1e-12);
    EXPECT_EQ(s.ground_configs, base.ground_configs);
  }
}

TEST(dual_anneal, counts_every_call) {
  SaConfig c;
  c.max_iterations = 20;
  c.seed = 4;
  long long calls = 0;
  const auto r = dual_anneal(
      [&](std::span<const double> y) {
        ++calls;
        double s = 0;
        for (double v : y) s += (v - 0.3) * (v - 0.3);
        return s;
      },
      3, c);
  EXPECT_EQ(r.evaluations, calls);
  EXPECT_EQ(r.iterations, 20);
  for (double v : r.best_point) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(dual_anneal, respects_evaluation_budget) {
  SaConfig c;
  c.max_evaluations = 137;
  long long calls = 0;
  const auto r = dual_anneal([&](std::span<const double>) { return static_cast<double>(++calls); }, 4, c);
  EXPECT_EQ(r.evaluations, 137);
  EXPECT_EQ(calls, 137);
}

TEST(dual_anneal, separable_instance_converges) {
  const auto p = separable(3, 3);
  int hits = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    SaConfig c;
    c.seed = s;
    c.target_energy = -3.0;
    const auto r = dual_anneal(p, c);
    if (r.converged) ++hits;
    if (r.converged) {
      EXPECT_NEAR(r.best_energy, -3.0, 1e-9);
    }
  }
  EXPECT_GE(hits, 99);
}

TEST(dual_anneal, converged_implies_ground) {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = t::random_problem(rng, 3, 3);
    const double ground = brute_force(p).ground_energy;
    for (auto method : {SaMethod::continuous, SaMethod::discrete}) {
      SaConfig c;
      c.method = method;
      c.seed = static_cast<std::uint64_t>(trial);
      c.max_iterations = 200;
      c.target_energy = ground;
      const auto r = dual_anneal(p, c);
      if (r.converged) {
        EXPECT_NEAR(r.best_energy, ground, 1e-9);
        EXPECT_TRUE(is_valid(r.best_bitstring, p.layout()));
      }
      EXPECT_GE(r.best_energy, ground - 1e-9);
    }
  }
}

TEST(dual_anneal, rounded_minimizer_is_valid) {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = t::random_problem(rng, 2, 4);
    SaConfig c;
    c.seed = static_cast<std::uint64_t>(trial) + 100;
    c.max_iterations = 300;
    const auto r = dual_anneal(p, c);
    EXPECT_TRUE(is_valid(r.best_bitstring, p.layout()));
    EXPECT_NEAR(r.best_energy, full_scan_ground(p), 1e-9);
  }
}

TEST(sa_ensemble, records_and_summary) {
  const auto p = separable(3, 2);
  SaConfig c;
  c.target_energy = -3.0;
  c.seed = 1;
  const auto e = sa_ensemble(p, c, 8);
  ASSERT_EQ(e.records.size(), 8u);
  for (const auto& r : e.records) {
    EXPECT_EQ(r.method, "sa");
    EXPECT_EQ(r.cost, r.evaluations);
  }
  EXPECT_EQ(e.summary.trajectories, 8u);
  const auto again = sa_ensemble(p, c, 8);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(again.records[k].evaluations, e.records[k].evaluations);

  SaConfig no_target;
  EXPECT_THROW(sa_ensemble(p, no_target, 2), std::invalid_argument);
}

TEST(sa_ensemble, discrete_method) {
  Rng rng(3);
  const auto p = t::random_problem(rng, 3, 3);
  SaConfig c;
  c.method = SaMethod::discrete;
  c.target_energy = brute_force(p).ground_energy;
  const auto e = sa_ensemble(p, c, 10);
  EXPECT_EQ(e.records[0].method, "sa-discrete");
  EXPECT_GE(e.summary.convergence_ratio, 0.9);
}
