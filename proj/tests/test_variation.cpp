#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "radonlab/variation.hpp"

using namespace radonlab;
using C = std::complex<double>;

TEST(JumpCount, Examples) {
  EXPECT_EQ(jump_count(SampledPath::from_real({0, 1, 0, 1}), 1.0), 3);
  EXPECT_EQ(jump_count(SampledPath::from_real({2, 2, 2}), 0.1), 0);
  EXPECT_EQ(jump_count(SampledPath::from_real({0, 0.4, 1.0}), 1.0), 1);
  EXPECT_THROW(jump_count(SampledPath::from_real({0, 1}), 0.0), PreconditionError);
}

TEST(JumpCount, AnchorGreedyIsNotOptimal) {
  // Advancing from the first anchor takes 0 -> 1 and then gets stuck; the
  // chain 0 -> 1.5 -> 0.5 has two jumps of size >= 1.
  const std::vector<C> v = {0.0, 1.0, 1.5, 0.5};
  EXPECT_EQ(oracle::jump_count(v, 1.0), 2);
  EXPECT_EQ(jump_count(SampledPath::from_values(v), 1.0), 2);
}

TEST(RVariation, Examples) {
  const auto p = SampledPath::from_real({0, 1, 0, 1});
  EXPECT_DOUBLE_EQ(r_variation(p, 1.0), 3.0);
  EXPECT_DOUBLE_EQ(r_variation(p, INFINITY), 1.0);
  EXPECT_NEAR(r_variation(p, 2.0), std::sqrt(3.0), 1e-15);
  EXPECT_EQ(r_variation(SampledPath::from_real({5}), 2.0), 0.0);
}

TEST(RVariation, MatchesBruteForce) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 9)(rng);
    std::vector<C> v(static_cast<std::size_t>(n));
    for (auto& z : v) z = {g(rng), g(rng)};
    const auto p = SampledPath::from_values(v);
    for (double r : {0.5, 1.0, 1.5, 2.0, 3.0}) EXPECT_NEAR(r_variation(p, r), oracle::r_variation(v, r), 1e-9);
    const double lam = std::exp(g(rng));
    EXPECT_EQ(jump_count(p, lam), oracle::jump_count(v, lam));
  }
}

TEST(RVariation, MonotoneInRAndLambda) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<C> v(12);
    for (auto& z : v) z = {g(rng), g(rng)};
    const auto p = SampledPath::from_values(v);
    double prev = INFINITY;
    for (double r : {1.0, 1.5, 2.0, 4.0, 8.0}) {
      const double cur = r_variation(p, r);
      EXPECT_LE(cur, prev * (1 + 1e-12));
      EXPECT_GE(cur * (1 + 1e-12), r_variation(p, INFINITY));
      prev = cur;
    }
    std::int64_t prev_n = std::numeric_limits<std::int64_t>::max();
    for (double lam : {0.1, 0.5, 1.0, 2.0, 4.0}) {
      const auto n = jump_count(p, lam);
      EXPECT_LE(n, prev_n);
      EXPECT_LE(lam * std::sqrt(static_cast<double>(n)), r_variation(p, 2.0) * (1 + 1e-12));
      prev_n = n;
    }
  }
}

TEST(JumpSeminorm, Examples) {
  const PathField one({0, 1}, {{0}}, {{0.0, 1.0}});
  EXPECT_DOUBLE_EQ(jump_seminorm(one, 2.0), 1.0);
  const PathField flat({0, 1, 2}, {{0}, {1}}, {{3.0, 3.0, 3.0}, {C(1, 1), C(1, 1), C(1, 1)}});
  EXPECT_EQ(jump_seminorm(flat, 2.0), 0.0);
  EXPECT_THROW(jump_seminorm(one, 1.0), PreconditionError);
}

TEST(JumpSeminorm, DominatesEveryLambda) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const int sites = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<double> times = {0, 1, 2, 3, 4, 5};
    std::vector<std::vector<std::int64_t>> ids;
    std::vector<std::vector<C>> vals;
    for (int s = 0; s < sites; ++s) {
      ids.push_back({s});
      std::vector<C> row(times.size());
      for (auto& z : row) z = {g(rng), g(rng)};
      vals.push_back(row);
    }
    const PathField field(times, ids, vals);
    for (double p : {1.5, 2.0, 4.0}) {
      const double J = jump_seminorm(field, p);
      for (double lam : {0.05, 0.3, 1.0, 2.0, 3.5}) EXPECT_LE(jump_functional(field, p, lam), J * (1 + 1e-12) + 1e-15);
      // Homogeneity under scaling of the data.
      std::vector<std::vector<C>> scaled = vals;
      for (auto& row : scaled)
        for (auto& z : row) z *= C(0, -3);
      EXPECT_NEAR(jump_seminorm(PathField(times, ids, scaled), p), 3 * J, 1e-9 * (1 + J));
    }
  }
}

TEST(JumpSeminorm, RefiningTheGridDoesNotDecrease) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g;
  std::vector<double> fine = {0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<C> row(fine.size());
  for (auto& z : row) z = g(rng);
  std::vector<double> coarse_t;
  std::vector<C> coarse_v;
  for (std::size_t i = 0; i < fine.size(); i += 2) {
    coarse_t.push_back(fine[i]);
    coarse_v.push_back(row[i]);
  }
  const double Jf = jump_seminorm(PathField(fine, {{0}}, {row}), 2.0);
  const double Jc = jump_seminorm(PathField(coarse_t, {{0}}, {coarse_v}), 2.0);
  EXPECT_GE(Jf, Jc);
}

TEST(BlockVariation, UnitBlocksOnIntegerGrid) {
  const std::vector<double> times = {1, 2, 3, 4, 5};
  const std::vector<C> v = {0.0, 1.0, 3.0, 2.0, 2.5};
  const PathField f(times, {{0}}, {v});
  // Blocks [n, n+1] each hold one gap.
  const double expect = std::sqrt(1.0 + 4.0 + 1.0 + 0.25);
  EXPECT_NEAR(block_variation(f, 1.0, 2.0)[0], expect, 1e-12);
  const PathField flat(times, {{0}}, {std::vector<C>(5, C(1, 0))});
  EXPECT_EQ(block_variation(flat, 0.5, 1.0)[0], 0.0);
}

TEST(BlockVariation, ROneSumsConsecutiveGaps) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::vector<double> times;
  for (int i = 0; i <= 40; ++i) times.push_back(1.0 + 0.25 * i);
  std::vector<C> v(times.size());
  for (auto& z : v) z = {g(rng), g(rng)};
  const double got = block_variation(PathField(times, {{0}}, {v}), 0.5, 1.0)[0];
  // Blocks [n^{1/2}, (n+1)^{1/2}]: sum the gaps of the grid points inside each.
  double sq = 0.0;
  for (int n = 1;; ++n) {
    const double a = std::sqrt(n), b = std::sqrt(n + 1.0);
    if (a > times.back()) break;
    double s = 0.0;
    std::size_t prev = times.size();
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (times[i] < a || times[i] > b) continue;
      if (prev != times.size()) s += std::abs(v[i] - v[prev]);
      prev = i;
    }
    sq += s * s;
  }
  EXPECT_NEAR(got, std::sqrt(sq), 1e-12);
}
