#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "sidechain/util/parallel.hpp"
#include "sidechain/util/rng.hpp"

using namespace sidechain;

TEST(rng, deterministic_and_distinct_streams) {
  Rng a(5), b(5), c(derive_seed(5, 1));
  for (int k = 0; k < 10; ++k) EXPECT_EQ(a(), b());
  EXPECT_NE(Rng(5)(), c());
  EXPECT_NE(derive_seed(5, 1), derive_seed(5, 2));
}

TEST(rng, uniform_and_normal_moments) {
  Rng r(1);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int k = 0; k < n; ++k) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = r.normal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sn / n, 0.0, 4 / std::sqrt(n));
  EXPECT_NEAR(sn2 / n, 1.0, 0.02);
  for (int k = 0; k < 1000; ++k) EXPECT_LT(r.below(7), 7u);
}

TEST(parallel, covers_every_index_and_rethrows) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 3) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(parallel, bench_workers_caps) {
  ::setenv("BENCH_WORKERS", "1", 1);
  EXPECT_EQ(worker_count(100), 1);
  ::unsetenv("BENCH_WORKERS");
  EXPECT_GE(worker_count(100), 1);
  EXPECT_EQ(worker_count(0), 1);
}
