#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "sidechain/circuit/ansatz.hpp"
#include "sidechain/energy/ising.hpp"
#include "sidechain/sim/mps.hpp"
#include "sidechain/sim/simulator.hpp"
#include "sidechain/sim/statevector.hpp"
#include "sidechain/sim/subspace.hpp"
#include "support/oracles.hpp"

using namespace sidechain;
namespace t = sidechain::testing;
using std::numbers::pi;

namespace {

// Random circuit over every gate kind, two-qubit gates on arbitrary pairs.
Circuit random_circuit(Rng& rng, int m, int gates) {
  Circuit c(m);
  for (int k = 0; k < gates; ++k) {
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
    int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(m - 1)));
    if (b >= a) ++b;
    const double th = rng.uniform(-pi, pi), ph = rng.uniform(-pi, pi);
    switch (rng.below(8)) {
      case 0: c.add(Gate::x(a)); break;
      case 1: c.add(Gate::rz(a, th)); break;
      case 2: c.add(Gate::rx(a, th)); break;
      case 3: c.add(Gate::ry(a, th)); break;
      case 4: c.add(Gate::rzz(a, b, th)); break;
      case 5: c.add(Gate::xy(a, b, th)); break;
      case 6: c.add(Gate::a_gate(a, b, th, ph)); break;
      default: c.add(Gate::cx(a, b)); break;
    }
  }
  c.add_global_phase(0.3);
  return c;
}

Circuit xy_ansatz(Rng& rng, const RotamerProblem& p, int layers) {
  const auto spec = make_ansatz_spec(p, Regime::xy, layers);
  std::vector<double> params;
  for (std::size_t k = 0; k < spec.num_params(); ++k) params.push_back(rng.uniform(-1, 1));
  return assemble_ansatz(spec, params);
}

}  // namespace

TEST(statevector, x_flips_zero) {
  StateVector s(1);
  s.apply(Gate::x(0));
  EXPECT_EQ(s.amplitude(1), t::cd(1, 0));
}

TEST(statevector, matches_dense_reference) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + trial % 5;
    const auto c = random_circuit(rng, m, 40);
    StateVector s(m);
    s.run(c);
    EXPECT_LT((s.amplitudes() - t::reference_run(c)).norm(), 1e-10);
    EXPECT_NEAR(s.norm(), 1.0, 1e-10);
  }
}

TEST(statevector, a_gate_stays_single_excitation) {
  StateVector s(2);
  s.apply(Gate::x(1));
  s.apply(Gate::a_gate(0, 1, pi / 4, 0));
  EXPECT_NEAR(std::norm(s.amplitude(1)) + std::norm(s.amplitude(2)), 1.0, 1e-12);
}

TEST(statevector, sampling_statistics) {
  StateVector zero(4);
  for (const auto& b : zero.sample(100, 3)) EXPECT_EQ(b.to_string(), "0000");

  StateVector u(2);
  u.apply(Gate::ry(0, pi / 2));
  u.apply(Gate::ry(1, pi / 2));
  const auto samples = u.sample(100000, 9);
  const auto freq = t::empirical(samples, 2);
  const double sigma = std::sqrt(0.25 * 0.75 / 100000.0);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(freq(i), 0.25, 4 * sigma);
  EXPECT_EQ(u.sample(50, 4), u.sample(50, 4));
}

TEST(statevector, xy_state_distribution) {
  StateVector s(2);
  s.apply(Gate::x(0));
  s.apply(Gate::xy(0, 1, 0.6));
  const auto freq = t::empirical(s.sample(100000, 2), 2);
  EXPECT_LT(t::total_variation(freq, s.probabilities()), 0.02);
}

TEST(statevector, expectation_against_summation) {
  Rng rng(5);
  const int m = 10;
  Eigen::VectorXcd amp(1 << m);
  for (int i = 0; i < (1 << m); ++i) amp(i) = t::cd(rng.normal(), rng.normal());
  amp.normalize();
  const auto s = StateVector::from_amplitudes(amp);
  IsingHamiltonian h{Eigen::MatrixXd::Zero(m, m), Eigen::VectorXd::Zero(m), 0.7};
  for (int i = 0; i < m; ++i) {
    h.fields(i) = rng.uniform(-1, 1);
    for (int j = i + 1; j < m; ++j) h.couplings(i, j) = rng.uniform(-1, 1);
  }
  double want = 0;
  for (std::uint64_t x = 0; x < (1u << m); ++x) want += std::norm(amp(static_cast<Eigen::Index>(x))) * h.energy(x);
  EXPECT_NEAR(s.expectation(h), want, 1e-10);

  StateVector basis(3);
  basis.apply(Gate::x(1));
  IsingHamiltonian h3{Eigen::MatrixXd::Zero(3, 3), Eigen::VectorXd::Zero(3), 0.0};
  h3.couplings(0, 1) = 2.0;
  h3.fields(1) = 0.5;
  EXPECT_NEAR(basis.expectation(h3), h3.energy(Bitstring::from_string("010")), 1e-14);

  StateVector uniform(2);
  uniform.apply(Gate::ry(0, pi / 2));
  uniform.apply(Gate::ry(1, pi / 2));
  IsingHamiltonian h0{Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Unit(2, 0), 0.0};
  EXPECT_NEAR(uniform.expectation(h0), 0.0, 1e-14);
}

TEST(statevector, dump_is_complex64) {
  StateVector s(2);
  std::ostringstream out;
  s.dump(out);
  EXPECT_EQ(out.str().size(), 4u * 8u);
}

TEST(subspace, matches_statevector_on_xy_ansatz) {
  Rng rng(12);
  for (auto sizes : {std::vector<int>{2, 2}, std::vector<int>{3, 2, 3}, std::vector<int>{4, 4}}) {
    const auto p = t::random_problem(rng, sizes);
    const auto c = xy_ansatz(rng, p, 3);
    StateVector sv(p.num_variables());
    sv.run(c);
    BlockSubspaceState sub(p.layout());
    sub.run(c);
    EXPECT_LT((sub.to_statevector() - sv.amplitudes()).norm(), 1e-10);
    EXPECT_LT(sub.invalid_mass(), 1e-12);
  }
}

TEST(subspace, index_round_trip_and_rejections) {
  BlockSubspaceState s(BlockLayout({2, 3}));
  EXPECT_EQ(s.dimension(), 12u);
  for (std::size_t i = 0; i < s.dimension(); ++i) EXPECT_EQ(s.index_of(s.bitstring_of(i)), static_cast<long long>(i));
  EXPECT_EQ(s.index_of(Bitstring::from_string("11000")), -1);
  EXPECT_THROW(s.apply(Gate::rx(0, 0.1)), std::domain_error);
  EXPECT_THROW(s.apply(Gate::xy(1, 2, 0.1)), std::domain_error);
  s.apply(Gate::x(0));
  EXPECT_THROW(s.apply(Gate::x(1)), std::domain_error);
}

TEST(mps, product_state_stays_bond_one) {
  MpsState m(5);
  m.apply(Gate::rx(2, 0.4));
  m.apply(Gate::x(0));
  EXPECT_EQ(m.max_bond_dimension(), 1);
  for (const auto& b : MpsState(4).sample(20, 1)) EXPECT_EQ(b.to_string(), "0000");
}

TEST(mps, exact_when_unbounded) {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 3 + trial % 8;
    const auto c = random_circuit(rng, m, 60);
    MpsState mps(m, MpsOptions{0, 0.0});
    mps.run(c);
    EXPECT_LT((mps.to_statevector() - t::reference_run(c)).norm(), 1e-8) << "M=" << m;
    EXPECT_NEAR(mps.norm(), 1.0, 1e-8);
    EXPECT_LE(mps.max_bond_dimension(), 1 << (m / 2));
  }
}

TEST(mps, truncation_reports_discarded_weight) {
  Rng rng(8);
  const auto c = random_circuit(rng, 6, 80);
  MpsState m(6, MpsOptions{2, 0.0});
  double last = 0;
  for (const auto& g : c.gates()) {
    m.apply(g);
    EXPECT_GE(m.discarded_weight(), last);
    last = m.discarded_weight();
    EXPECT_NEAR(m.norm(), 1.0, 1e-8);
  }
  EXPECT_GT(m.discarded_weight(), 0.0);
  EXPECT_LE(m.max_bond_dimension(), 2);
}

TEST(mps, ghz_support) {
  MpsState m(6, MpsOptions{0, 0.0});
  m.apply(Gate::ry(0, pi / 2));
  for (int q = 0; q + 1 < 6; ++q) m.apply(Gate::cx(q, q + 1));
  EXPECT_EQ(m.max_bond_dimension(), 2);
  for (const auto& b : m.sample(500, 5)) EXPECT_TRUE(b.to_string() == "000000" || b.to_string() == "111111");
}

TEST(mps, marginals_match_statevector) {
  Rng rng(6);
  const int m = 10;
  const auto c = random_circuit(rng, m, 50);
  StateVector sv(m);
  sv.run(c);
  MpsState mps(m, MpsOptions{0, 0.0});
  mps.run(c);
  const std::size_t shots = 100000;
  const auto samples = mps.sample(shots, 17);
  const auto probs = sv.probabilities();
  for (int q = 0; q < m; ++q) {
    double want = 0;
    for (Eigen::Index x = 0; x < probs.size(); ++x) {
      if ((x >> q) & 1) want += probs(x);
    }
    double got = 0;
    for (const auto& s : samples) got += s[static_cast<std::size_t>(q)] ? 1.0 : 0.0;
    got /= static_cast<double>(shots);
    const double sigma = std::sqrt(std::max(want * (1 - want), 1e-12) / static_cast<double>(shots));
    EXPECT_NEAR(got, want, 4 * sigma + 1e-9) << "qubit " << q;
  }
}

TEST(mps, truncation_keeps_xy_state_in_subspace) {
  // Singular vectors of a weight-conserving state sit in fixed-weight
  // sectors, so cutting bonds loses weight but does not leak.
  Rng rng(9);
  const auto p = t::random_problem(rng, 3, 3);
  const auto c = xy_ansatz(rng, p, 2);
  MpsState mps(p.num_variables(), MpsOptions{4, 1e-10});
  mps.run(c);
  EXPECT_GT(mps.discarded_weight(), 1e-3);
  Eigen::VectorXcd v = mps.to_statevector();
  v /= v.norm();
  double invalid_mass = 0;
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    if (!is_valid(Bitstring::from_index(static_cast<std::uint64_t>(x), p.num_variables()), p.layout())) {
      invalid_mass += std::norm(v(x));
    }
  }
  EXPECT_LT(invalid_mass, 1e-10);
  for (const auto& s : mps.sample(2000, 3)) EXPECT_TRUE(is_valid(s, p.layout()));
}

TEST(simulator, backends_agree) {
  Rng rng(3);
  const auto p = t::random_problem(rng, 2, 3);
  const auto c = xy_ansatz(rng, p, 2);
  std::vector<Eigen::VectorXd> freqs;
  for (auto kind : {BackendKind::statevector, BackendKind::subspace, BackendKind::mps}) {
    BackendOptions o;
    o.kind = kind;
    o.mps.max_bond = 0;
    auto sim = make_simulator(o, p.layout());
    EXPECT_EQ(sim->kind(), kind);
    sim->run(c);
    Rng r(5);
    freqs.push_back(t::empirical(sim->sample(50000, r), p.num_variables()));
  }
  EXPECT_LT(t::total_variation(freqs[0], freqs[1]), 0.02);
  EXPECT_LT(t::total_variation(freqs[0], freqs[2]), 0.02);
  EXPECT_EQ(backend_from_string("sv"), BackendKind::statevector);
}
