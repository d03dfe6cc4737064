/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/content_store.hpp"
#include "dafsim/fib.hpp"
#include "dafsim/pit.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <list>
#include <random>
#include <set>

using namespace dafsim;

namespace {

Data
D(const std::string& uri)
{
  Data d;
  d.name = Name::Parse(uri);
  return d;
}

Interest
I(const std::string& uri, std::uint32_t nonce)
{
  Interest i;
  i.name = Name::Parse(uri);
  i.nonce = nonce;
  return i;
}

// Reference LRU: a plain list, front = most recent.
class LruOracle
{
public:
  explicit LruOracle(std::size_t cap)
    : m_cap(cap)
  {
  }
  bool Lookup(const std::string& k)
  {
    auto it = std::find(m_order.begin(), m_order.end(), k);
    if (it == m_order.end())
      return false;
    m_order.erase(it);
    m_order.push_front(k);
    return true;
  }
  void Insert(const std::string& k)
  {
    if (m_cap == 0)
      return;
    auto it = std::find(m_order.begin(), m_order.end(), k);
    if (it != m_order.end())
      m_order.erase(it);
    m_order.push_front(k);
    if (m_order.size() > m_cap)
      m_order.pop_back();
  }
  std::vector<std::string> Order() const { return {m_order.begin(), m_order.end()}; }

private:
  std::size_t m_cap;
  std::list<std::string> m_order;
};

} // namespace

TEST(ContentStore, ZeroCapacityAlwaysMisses)
{
  ContentStore cs(0);
  EXPECT_FALSE(cs.Insert(D("/A/1"), 0).has_value());
  EXPECT_EQ(cs.Size(), 0u);
  EXPECT_EQ(cs.Lookup(Name::Parse("/A/1")), nullptr);
}

TEST(ContentStore, LookupRefreshesRecency)
{
  ContentStore cs(2);
  cs.Insert(D("/A"), 0);
  cs.Insert(D("/B"), 1);
  ASSERT_NE(cs.Lookup(Name::Parse("/A")), nullptr);
  auto evicted = cs.Insert(D("/C"), 2);
  ASSERT_TRUE(evicted.has_value());
  EXPECT_EQ(*evicted, Name::Parse("/B"));
  EXPECT_TRUE(cs.Contains(Name::Parse("/A")));
  EXPECT_FALSE(cs.Contains(Name::Parse("/B")));
}

TEST(ContentStore, HitReturnsCachedData)
{
  ContentStore cs(5);
  cs.Insert(D("/A/7"), 0);
  const Data* hit = cs.Lookup(Name::Parse("/A/7"));
  ASSERT_NE(hit, nullptr);
  EXPECT_EQ(hit->name.ToUri(), "/A/7");
  EXPECT_EQ(hit->payloadSize, 512u);
}

TEST(ContentStore, SixInsertsEvictTheFirst)
{
  ContentStore cs(5);
  for (int i = 1; i <= 6; ++i)
    cs.Insert(D("/A/" + std::to_string(i)), i);
  EXPECT_EQ(cs.Size(), 5u);
  EXPECT_FALSE(cs.Contains(Name::Parse("/A/1")));
  for (int i = 2; i <= 6; ++i)
    EXPECT_TRUE(cs.Contains(Name::Parse("/A/" + std::to_string(i))));
}

TEST(ContentStore, MatchesLruOracle)
{
  for (std::size_t cap : {0u, 5u, 200u})
    {
      std::mt19937_64 g(cap + 11);
      ContentStore cs(cap);
      LruOracle oracle(cap);
      // Key space a bit larger than the cache so evictions and hits both happen.
      std::uniform_int_distribution<int> key(0, static_cast<int>(cap * 3 / 2 + 3));
      for (int op = 0; op < 10000; ++op)
        {
          const std::string k = "/k/" + std::to_string(key(g));
          if (g() % 2)
            {
              ASSERT_EQ(cs.Lookup(Name::Parse(k)) != nullptr, oracle.Lookup(k)) << "op " << op;
            }
          else
            {
              cs.Insert(D(k), op);
              oracle.Insert(k);
            }
          ASSERT_LE(cs.Size(), cap);
        }
      std::vector<std::string> got;
      for (const auto& n : cs.RecencyOrder())
        got.push_back(n.ToUri());
      EXPECT_EQ(got, oracle.Order()) << "capacity " << cap;
    }
}

TEST(Pit, Verdicts)
{
  Pit pit;
  EXPECT_EQ(pit.ProcessInterest(I("/A/1", 1), 10, 0.0), InterestVerdict::New);
  EXPECT_EQ(pit.ProcessInterest(I("/A/1", 2), 11, 0.1), InterestVerdict::Aggregated);
  EXPECT_EQ(pit.ProcessInterest(I("/A/1", 1), 12, 0.2), InterestVerdict::DuplicateNonce);
  EXPECT_EQ(pit.Size(), 1u);
}

TEST(Pit, EntryExpiresAfterLifetime)
{
  Pit pit;
  pit.ProcessInterest(I("/A/1", 1), 10, 0.0);
  EXPECT_NE(pit.Find(Name::Parse("/A/1"), 1.9), nullptr);
  EXPECT_EQ(pit.Find(Name::Parse("/A/1"), 2.0), nullptr);
  // The nonce outlives the entry.
  EXPECT_TRUE(pit.IsDuplicate(Name::Parse("/A/1"), 1, 3.0));
  pit.Purge(7.0);
  EXPECT_FALSE(pit.IsDuplicate(Name::Parse("/A/1"), 1, 7.0));
}

TEST(Pit, SatisfyDecisionExhaustive)
{
  for (int eps = 0; eps <= 4; ++eps)
    for (bool local : {false, true})
      {
        Pit pit;
        std::uint32_t nonce = 1;
        if (local)
          pit.ProcessInterest(I("/A/1", nonce++), kLocalFace, 0.0);
        for (int e = 0; e < eps; ++e)
          pit.ProcessInterest(I("/A/1", nonce++), 100 + e, 0.0);
        PitSatisfaction s = pit.Satisfy(Name::Parse("/A/1"), 0.5);
        EXPECT_EQ(s.local, local);
        EXPECT_EQ(s.eps.size(), static_cast<std::size_t>(eps));
        if (eps == 0)
          EXPECT_EQ(s.decision, Downstream::NoEntry);
        else if (eps == 1)
          {
            EXPECT_EQ(s.decision, Downstream::Unicast);
            EXPECT_EQ(s.ep, 100u);
          }
        else
          EXPECT_EQ(s.decision, Downstream::Broadcast);
        // Consumed.
        EXPECT_EQ(pit.Satisfy(Name::Parse("/A/1"), 0.5).decision, Downstream::NoEntry);
      }
}

TEST(Pit, RepeatedEpCountsOnce)
{
  Pit pit;
  pit.ProcessInterest(I("/A/1", 1), 7, 0.0);
  EXPECT_EQ(pit.ProcessInterest(I("/A/1", 2), 7, 0.1), InterestVerdict::New);
  EXPECT_EQ(pit.Satisfy(Name::Parse("/A/1"), 0.2).decision, Downstream::Unicast);
}

TEST(Pit, NeverForwardsADuplicateNonce)
{
  std::mt19937_64 g(99);
  for (int seqs = 0; seqs < 200; ++seqs)
    {
      Pit pit;
      std::set<std::pair<std::string, std::uint32_t>> forwarded;
      Time now = 0.0;
      for (int op = 0; op < 200; ++op)
        {
          // Keep the whole sequence inside the dead-nonce lifetime.
          now += 0.02;
          const std::string name = "/A/" + std::to_string(g() % 4);
          if (g() % 5 == 0)
            {
              pit.Satisfy(Name::Parse(name), now);
              continue;
            }
          const auto nonce = static_cast<std::uint32_t>(g() % 6);
          const NodeId ep = static_cast<NodeId>(g() % 4);
          if (pit.ProcessInterest(I(name, nonce), ep, now) != InterestVerdict::New)
            continue;
          ASSERT_TRUE(forwarded.insert({name, nonce}).second) << name << " nonce " << nonce;
        }
    }
}

TEST(Fib, PicksClosestNextHop)
{
  Fib fib;
  auto& a = fib.Upsert(Name::Parse("/A"), 1);
  a.hc = 2;
  auto& b = fib.Upsert(Name::Parse("/A"), 2);
  b.hc = 3;
  FibNextHop* hit = fib.Lookup(Name::Parse("/A/5"), 0.0);
  ASSERT_NE(hit, nullptr);
  EXPECT_EQ(hit->nh, 1u);
  EXPECT_EQ(fib.Lookup(Name::Parse("/B/5"), 0.0), nullptr);
  EXPECT_EQ(Fib().Lookup(Name::Parse("/A/5"), 0.0), nullptr);
}

TEST(Fib, TieBreaksOnFreshestData)
{
  Fib fib;
  auto& a = fib.Upsert(Name::Parse("/A"), 1);
  a.hc = 2;
  a.tData = 10.0;
  auto& b = fib.Upsert(Name::Parse("/A"), 2);
  b.hc = 2;
  b.tData = 12.0;
  EXPECT_EQ(fib.Lookup(Name::Parse("/A/1"), 13.0)->nh, 2u);
}

TEST(Fib, ExcludesIncomingFace)
{
  Fib fib;
  fib.Upsert(Name::Parse("/A"), 1).hc = 1;
  fib.Upsert(Name::Parse("/A"), 2).hc = 4;
  EXPECT_EQ(fib.Lookup(Name::Parse("/A/1"), 0.0, 1)->nh, 2u);
  EXPECT_EQ(fib.Lookup(Name::Parse("/A/1"), 0.0, 2)->nh, 1u);
}

TEST(Fib, LookupMatchesMinHopOracle)
{
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 2000; ++trial)
    {
      Fib fib;
      const int n = 1 + static_cast<int>(g() % 6);
      std::vector<FibNextHop> hops;
      for (int i = 0; i < n; ++i)
        {
          auto& h = fib.Upsert(Name::Parse("/A"), static_cast<NodeId>(i));
          h.hc = static_cast<std::uint32_t>(g() % 4);
          h.tData = static_cast<double>(g() % 3);
          hops.push_back(h);
        }
      const auto best = std::min_element(hops.begin(), hops.end(), [](const auto& x, const auto& y) {
        return std::make_tuple(x.hc, -x.tData, x.nh) < std::make_tuple(y.hc, -y.tData, y.nh);
      });
      ASSERT_EQ(fib.Lookup(Name::Parse("/A/9"), 0.0)->nh, best->nh);
    }
}

TEST(Fib, LongestPrefixWins)
{
  Fib fib;
  fib.Upsert(Name::Parse("/A"), 1);
  fib.Upsert(Name::Parse("/A/x"), 2);
  EXPECT_EQ(fib.Lookup(Name::Parse("/A/x/1"), 0.0)->nh, 2u);
  EXPECT_EQ(fib.Lookup(Name::Parse("/A/y"), 0.0)->nh, 1u);
}

TEST(Fib, RemoveDropsEmptyEntry)
{
  Fib fib;
  fib.Upsert(Name::Parse("/A"), 1);
  fib.Upsert(Name::Parse("/A"), 2);
  EXPECT_TRUE(fib.Remove(Name::Parse("/A"), 1));
  EXPECT_FALSE(fib.Remove(Name::Parse("/A"), 1));
  EXPECT_EQ(fib.EntryCount(), 1u);
  EXPECT_TRUE(fib.Remove(Name::Parse("/A"), 2));
  EXPECT_EQ(fib.EntryCount(), 0u);
}

TEST(Fib, StalePurge)
{
  Simulator sim;
  Fib fib;
  auto& unused = fib.Upsert(Name::Parse("/A"), 1);
  unused.tData = 10.0;
  auto& recent = fib.Upsert(Name::Parse("/A"), 2);
  recent.tData = 10.0;
  recent.lastUse = 11.3;
  auto& armed = fib.Upsert(Name::Parse("/A"), 3);
  armed.tData = 5.0;
  armed.pendingTimer = sim.ScheduleAt(20.0, [] {});

  auto removed = fib.PurgeStale(11.5, 1.0, sim);
  ASSERT_EQ(removed.size(), 1u);
  EXPECT_EQ(removed[0].second, 1u);
  EXPECT_NE(fib.FindNextHop(Name::Parse("/A"), 2), nullptr);
  EXPECT_NE(fib.FindNextHop(Name::Parse("/A"), 3), nullptr);
}
