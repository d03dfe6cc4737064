/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/rng.hpp"

#include <gtest/gtest.h>

#include <set>
#include <vector>

using namespace dafsim;

TEST(Rng, DegenerateInterval)
{
  RngStream r(1, "x");
  EXPECT_EQ(r.Uniform(2.0, 2.0), 2.0);
  EXPECT_THROW(r.Uniform(3.0, 1.0), std::invalid_argument);
  EXPECT_THROW(r.UniformInt(3, 1), std::invalid_argument);
}

TEST(Rng, SameSeedAndStreamReplays)
{
  RngStream a(42, "app-start"), b(42, "app-start");
  for (int i = 0; i < 10; ++i)
    EXPECT_EQ(a.Uniform(1.0, 3.0), b.Uniform(1.0, 3.0));
}

TEST(Rng, StreamsAreIndependent)
{
  RngStream a(42, "app-start"), b(42, "placement"), c(43, "app-start");
  int sameB = 0, sameC = 0;
  for (int i = 0; i < 100; ++i)
    {
      const auto x = a.Next32();
      sameB += x == b.Next32();
      sameC += x == c.Next32();
    }
  EXPECT_LT(sameB, 3);
  EXPECT_LT(sameC, 3);

  // Drawing from one stream must not shift another.
  RngStream p(7, "p"), q1(7, "q"), q2(7, "q");
  for (int i = 0; i < 1000; ++i)
    p.Next32();
  EXPECT_EQ(q1.Next32(), q2.Next32());
}

TEST(Rng, UniformMatchesOracle)
{
  RngStream r(9, "stat");
  double sum = 0, sumSq = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i)
    {
      const double v = r.Uniform(1.0, 3.0);
      ASSERT_GE(v, 1.0);
      ASSERT_LT(v, 3.0);
      sum += v;
      sumSq += v * v;
    }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 2.0, 0.05);
  // Var of U(1,3) is 4/12.
  EXPECT_NEAR(sumSq / n - mean * mean, 4.0 / 12.0, 0.02);
}

TEST(Rng, UniformIntCoversRangeInclusively)
{
  RngStream r(3, "int");
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i)
    {
      const auto v = r.UniformInt(5, 9);
      ASSERT_GE(v, 5u);
      ASSERT_LE(v, 9u);
      seen.insert(v);
    }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(Rng, RunSeedsDiffer)
{
  std::set<std::uint64_t> seeds;
  for (std::uint64_t run = 0; run < 100; ++run)
    seeds.insert(DeriveRunSeed(42, run));
  EXPECT_EQ(seeds.size(), 100u);
  EXPECT_EQ(DeriveRunSeed(42, 3), DeriveRunSeed(42, 3));
  EXPECT_NE(DeriveRunSeed(42, 3), DeriveRunSeed(43, 3));
}
