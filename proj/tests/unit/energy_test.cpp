#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "sidechain/energy/bitstring.hpp"
#include "sidechain/energy/generator.hpp"
#include "sidechain/energy/interaction_profile.hpp"
#include "sidechain/energy/ising.hpp"
#include "sidechain/energy/layout.hpp"
#include "sidechain/energy/problem.hpp"
#include "sidechain/energy/problem_io.hpp"
#include "sidechain/energy/qubo.hpp"
#include "support/oracles.hpp"

using namespace sidechain;
using sidechain::testing::random_problem;
using sidechain::testing::table_energy;

namespace {

RotamerProblem zero_problem(int residues, int rotamers) {
  ProblemBuilder b(std::vector<int>(static_cast<std::size_t>(residues), rotamers), true);
  for (int i = 0; i < residues; ++i) {
    for (int a = 0; a < rotamers; ++a) b.set_self_energy(i, a, 0.0);
  }
  return b.build();
}

}  // namespace

TEST(layout, offsets_and_owner) {
  BlockLayout l({2, 3, 1});
  EXPECT_EQ(l.num_variables(), 6);
  EXPECT_EQ(l.offset(2), 5);
  EXPECT_EQ(l.block_of(4), 1);
  EXPECT_EQ(l.block_of(5), 2);
  EXPECT_THROW(l.block_of(6), std::out_of_range);
}

TEST(bitstring, text_and_index) {
  auto b = Bitstring::from_string("0110");
  EXPECT_EQ(b.to_index(), 6u);
  EXPECT_EQ(b.to_string(), "0110");
  EXPECT_EQ(Bitstring::from_index(6, 4), b);
  EXPECT_EQ(b.hamming_weight(), 2);
  EXPECT_THROW(Bitstring::from_string("01x"), std::invalid_argument);
}

TEST(bitstring, decode_valid_and_invalid) {
  const auto layout = BlockLayout::uniform(2, 2);
  auto ok = decode(Bitstring::from_string("0110"), layout);
  ASSERT_TRUE(ok.valid());
  EXPECT_EQ(ok.rotamers, (std::vector<int>{1, 0}));

  auto bad = decode(Bitstring::from_string("1100"), layout);
  ASSERT_FALSE(bad.valid());
  ASSERT_EQ(bad.violations.size(), 2u);
  EXPECT_EQ(bad.violations[0].block, 0);
  EXPECT_EQ(bad.violations[0].weight, 2);
  EXPECT_EQ(bad.violations[1].block, 1);
  EXPECT_EQ(bad.violations[1].weight, 0);
}

TEST(bitstring, decode_inverts_encode) {
  const BlockLayout layout({3, 1, 4});
  for (int a = 0; a < 3; ++a) {
    for (int c = 0; c < 4; ++c) {
      std::vector<int> config{a, 0, c};
      EXPECT_EQ(decode(encode(config, layout), layout).rotamers, config);
    }
  }
}

TEST(problem_builder, rejects_bad_input) {
  ProblemBuilder b({2, 2, 2}, true);
  EXPECT_THROW(b.set_pair_energy(0, 0, 0, 1, 1.0), std::invalid_argument);
  EXPECT_THROW(b.set_pair_energy(0, 0, 2, 1, 1.0), std::invalid_argument);
  EXPECT_THROW(b.set_self_energy(0, 2, 1.0), std::out_of_range);
  b.set_pair_energy(0, 0, 1, 1, -1.0);
  EXPECT_THROW(b.set_pair_energy(1, 1, 0, 0, -2.0), std::invalid_argument);
  EXPECT_NO_THROW(b.set_pair_energy(1, 1, 0, 0, -1.0));
  EXPECT_THROW(b.build(), std::invalid_argument);
}

TEST(problem_builder, energy_sums_tables) {
  ProblemBuilder b({2, 2}, true);
  b.set_self_energy(0, 0, 1).set_self_energy(0, 1, 2).set_self_energy(1, 0, 3).set_self_energy(1, 1, 4);
  b.set_pair_energy(1, 0, 0, 1, 0.5);
  const auto p = b.build();
  EXPECT_DOUBLE_EQ(p.energy({1, 0}), 2 + 3 + 0.5);
  EXPECT_DOUBLE_EQ(p.pair_energy(0, 1, 1, 0), 0.5);
  EXPECT_DOUBLE_EQ(p.energy({0, 0}), 4);
}

TEST(qubo, nearest_neighbor_sparsity) {
  Rng rng(3);
  const auto p = random_problem(rng, 4, 2);
  const auto q = build_qubo(p);
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const int ba = a / 2, bb = b / 2;
      if (std::abs(ba - bb) > 1) EXPECT_EQ(q.q(a, b), 0.0) << a << "," << b;
      if (ba == bb && a != b) EXPECT_EQ(q.q(a, b), 0.0);
    }
  }
  EXPECT_TRUE(q.q.isApprox(q.q.transpose()));
}

TEST(qubo, zero_problem_pairwise_penalty) {
  const auto q = build_qubo(zero_problem(2, 3), Penalty{1.0, PenaltyForm::pairwise});
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      const double want = (a != b && a / 3 == b / 3) ? 1.0 : 0.0;
      EXPECT_EQ(q.q(a, b), want);
    }
  }
  EXPECT_EQ(q.constant, 0.0);
}

TEST(qubo, rejects_nonpositive_lambda) {
  EXPECT_THROW(build_qubo(zero_problem(1, 2), Penalty{0.0}), std::invalid_argument);
}

TEST(qubo, matches_tables_on_every_string) {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_problem(rng, {2, 3, 2}, trial % 2 == 0);
    const double lambda = 1.7;
    const auto plain = build_qubo(p);
    const auto pen = build_qubo(p, Penalty{lambda, PenaltyForm::one_hot});
    for (std::uint64_t x = 0; x < (1u << 7); ++x) {
      const auto bits = Bitstring::from_index(x, 7);
      EXPECT_NEAR(pen.energy(bits), table_energy(p, bits, lambda), 1e-12);
      if (is_valid(bits, p.layout())) {
        EXPECT_NEAR(plain.energy(bits), p.energy(decode(bits, p).rotamers), 1e-12);
      }
    }
  }
}

TEST(qubo, default_penalty_keeps_ground_valid) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_problem(rng, 3, 3);
    const auto q = build_qubo(p, Penalty{default_penalty(p)});
    double best_valid = 1e300, best_invalid = 1e300;
    for (std::uint64_t x = 0; x < (1u << 9); ++x) {
      const auto bits = Bitstring::from_index(x, 9);
      double& slot = is_valid(bits, p.layout()) ? best_valid : best_invalid;
      slot = std::min(slot, q.energy(bits));
    }
    EXPECT_LT(best_valid, best_invalid);
  }
}

TEST(qubo, separation_above_energy_gap) {
  // lambda > max_valid - min_all puts every invalid string above every valid one.
  Rng rng(8);
  for (auto form : {PenaltyForm::pairwise, PenaltyForm::one_hot}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto p = random_problem(rng, 2, 3);
      const auto plain = build_qubo(p);
      double max_valid = -1e300, min_all = 1e300;
      for (std::uint64_t x = 0; x < 64; ++x) {
        const auto bits = Bitstring::from_index(x, 6);
        const double e = plain.energy(bits);
        min_all = std::min(min_all, e);
        if (is_valid(bits, p.layout())) max_valid = std::max(max_valid, e);
      }
      const auto q = build_qubo(p, Penalty{max_valid - min_all + 0.01, form});
      double worst_valid = -1e300, best_invalid = 1e300;
      for (std::uint64_t x = 0; x < 64; ++x) {
        const auto bits = Bitstring::from_index(x, 6);
        // The pairwise form cannot lift an empty block; only check strings it penalizes.
        const auto w = block_weights(bits, p.layout());
        const bool has_empty = std::find(w.begin(), w.end(), 0) != w.end();
        if (is_valid(bits, p.layout())) {
          worst_valid = std::max(worst_valid, q.energy(bits));
        } else if (form == PenaltyForm::one_hot || !has_empty) {
          best_invalid = std::min(best_invalid, q.energy(bits));
        }
      }
      EXPECT_GT(best_invalid, worst_valid);
    }
  }
}

TEST(ising, zero_and_single_variable) {
  QuboMatrix zero{Eigen::MatrixXd::Zero(3, 3), BlockLayout::uniform(1, 3), 0.0};
  const auto h0 = qubo_to_ising(zero);
  EXPECT_EQ(h0.couplings.norm(), 0.0);
  EXPECT_EQ(h0.fields.norm(), 0.0);
  EXPECT_EQ(h0.constant, 0.0);

  QuboMatrix one{Eigen::MatrixXd::Ones(1, 1), BlockLayout::uniform(1, 1), 0.0};
  const auto h1 = qubo_to_ising(one);
  EXPECT_DOUBLE_EQ(h1.energy(Bitstring::from_string("0")), 0.0);
  EXPECT_DOUBLE_EQ(h1.energy(Bitstring::from_string("1")), 1.0);
}

TEST(ising, identity_against_direct_spin_sum) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_problem(rng, {2, 2, 3}, trial % 3 == 0);
    const auto q = build_qubo(p, Penalty{1.3});
    const auto h = qubo_to_ising(q);
    const auto diag = diagonal_energies(h);
    for (std::uint64_t x = 0; x < 128; ++x) {
      const auto bits = Bitstring::from_index(x, 7);
      double e = h.constant;
      for (int i = 0; i < 7; ++i) {
        const double zi = bits[static_cast<std::size_t>(i)] ? -1.0 : 1.0;
        e -= h.fields(i) * zi;
        for (int j = i + 1; j < 7; ++j) e += h.couplings(i, j) * zi * (bits[static_cast<std::size_t>(j)] ? -1.0 : 1.0);
      }
      EXPECT_NEAR(e, q.energy(bits), 1e-12);
      EXPECT_NEAR(diag(static_cast<Eigen::Index>(x)), q.energy(bits), 1e-12);
      EXPECT_NEAR(h.energy(x), q.energy(bits), 1e-12);
    }
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j <= i; ++j) EXPECT_EQ(h.couplings(i, j), 0.0);
    }
  }
}

TEST(ising, rejects_asymmetric) {
  QuboMatrix q{Eigen::MatrixXd::Zero(2, 2), BlockLayout::uniform(1, 2), 0.0};
  q.q(0, 1) = 1.0;
  EXPECT_THROW(qubo_to_ising(q), std::invalid_argument);
}

TEST(problem_io, json_round_trip) {
  Rng rng(2);
  const auto p = random_problem(rng, {2, 3, 2}, false);
  const auto back = problem_from_json(problem_to_json(p));
  EXPECT_EQ(back.layout(), p.layout());
  EXPECT_EQ(back.nearest_neighbor_only(), p.nearest_neighbor_only());
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 2; ++c) EXPECT_DOUBLE_EQ(back.energy({a, b, c}), p.energy({a, b, c}));
    }
  }
}

TEST(problem_io, csv_round_trip_and_index_base) {
  Rng rng(4);
  const auto p = random_problem(rng, 3, 2);
  std::stringstream s;
  problem_to_csv(p, s);
  const auto back = problem_from_csv(s);
  EXPECT_DOUBLE_EQ(back.energy({1, 0, 1}), p.energy({1, 0, 1}));

  std::istringstream one_based(
      "# tiny\nnum_residues,2\nrotamers_per_residue,1,1\nindex_base,1\n"
      "self,1,1,-1\nself,2,1,0.5\npair,1,1,2,1,0.25\n");
  EXPECT_DOUBLE_EQ(problem_from_csv(one_based).energy({0, 0}), -0.25);
}

TEST(problem_io, zero_file_and_symmetry_error) {
  auto doc = nlohmann::json::parse(R"({"num_residues": 2, "rotamers_per_residue": [2, 2],
    "self_energy": [{"residue":0,"rotamer":0,"energy":0},{"residue":0,"rotamer":1,"energy":0},
                    {"residue":1,"rotamer":0,"energy":0},{"residue":1,"rotamer":1,"energy":0}],
    "pair_energy": []})");
  const auto p = problem_from_json(doc);
  EXPECT_EQ(p.num_variables(), 4);
  EXPECT_EQ(build_qubo(p).q.norm(), 0.0);

  doc["pair_energy"] = nlohmann::json::parse(
      R"([{"res_i":0,"rot_i":0,"res_j":1,"rot_j":0,"energy":-1.0},
          {"res_i":1,"rot_i":0,"res_j":0,"rot_j":0,"energy":-2.0}])");
  EXPECT_THROW(problem_from_json(doc), std::invalid_argument);
}

TEST(generator, seeded_round_trip) {
  const auto p = generate_problem(GeneratorOptions::uniform(4, 4, 7));
  EXPECT_EQ(p.num_variables(), 16);
  const auto offs = p.layout().offsets();
  EXPECT_EQ(std::vector<int>(offs.begin(), offs.end()), (std::vector<int>{0, 4, 8, 12}));
  const auto again = problem_from_json(problem_to_json(p));
  EXPECT_DOUBLE_EQ(again.energy({0, 1, 2, 3}), p.energy({0, 1, 2, 3}));
  const auto same = generate_problem(GeneratorOptions::uniform(4, 4, 7));
  EXPECT_DOUBLE_EQ(same.energy({3, 2, 1, 0}), p.energy({3, 2, 1, 0}));
}

TEST(interaction_profile, zero_and_decay) {
  ProblemBuilder b({2, 2, 2, 2}, false);
  for (int i = 0; i < 4; ++i) {
    for (int a = 0; a < 2; ++a) b.set_self_energy(i, a, 0);
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      for (int a = 0; a < 2; ++a) {
        for (int c = 0; c < 2; ++c) b.set_pair_energy(i, a, j, c, std::pow(10.0, -(j - i)));
      }
    }
  }
  const auto prof = interaction_profile(b.build());
  ASSERT_EQ(prof.size(), 3u);
  EXPECT_NEAR(prof[0].mean_abs, 0.1, 1e-15);
  EXPECT_NEAR(prof[1].mean_abs, 0.01, 1e-15);
  EXPECT_NEAR(prof[2].mean_abs, 0.001, 1e-15);

  Rng rng(1);
  const auto nn = interaction_profile(random_problem(rng, 4, 3));
  EXPECT_EQ(nn[1].max_abs, 0.0);
  EXPECT_EQ(nn[2].max_abs, 0.0);
}

TEST(generator, decay_bounds_long_range) {
  auto o = GeneratorOptions::uniform(6, 3, 11);
  o.decay = 0.05;
  const auto prof = interaction_profile(generate_problem(o));
  for (std::size_t d = 1; d < prof.size(); ++d) EXPECT_LE(prof[d].max_abs, 0.05 * prof[0].max_abs + 1e-15);
  EXPECT_GT(prof[1].max_abs, 0.0);
}
