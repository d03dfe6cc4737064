/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/network.hpp"
#include "dafsim/strategies.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

using namespace dafsim;

namespace {

// Hand-placed NDN network with trace capture.
struct Net
{
  Net(const std::string& scheme, std::vector<std::pair<double, double>> xy, std::size_t cs = 200)
    : mobility(Positions(xy), AreaSpec::Preset50(), 1),
      medium(sim, mobility, MacParams{}, 1)
  {
    sink = [this](const TraceRecord& r) { trace.push_back(r); };
    NdnNodeConfig cfg;
    cfg.csCapacity = cs;
    for (NodeId n = 0; n < xy.size(); ++n)
      {
        nodes.push_back(std::make_unique<NdnNode>(n, sim, medium, MakeStrategy(scheme), cfg, 1, &sink));
        NdnNode* node = nodes.back().get();
        medium.SetReceiveHandler(n, [node](const Frame& f, bool a) { node->OnFrame(f, a); });
        node->SetAppSink([this, n](const Data& d, std::uint32_t hops) {
          delivered.push_back({n, d.name.ToUri(), hops});
        });
      }
  }

  static std::vector<NodePosition> Positions(const std::vector<std::pair<double, double>>& xy)
  {
    std::vector<NodePosition> out(xy.size());
    for (NodeId n = 0; n < xy.size(); ++n)
      {
        out[n].node = n;
        out[n].x = xy[n].first + 500;
        out[n].y = xy[n].second + 500;
      }
    return out;
  }

  std::size_t Count(NodeId node, const std::string& action) const
  {
    std::size_t c = 0;
    for (const auto& r : trace)
      c += r.node == node && r.action == action;
    return c;
  }

  std::size_t CountAny(const std::string& action) const
  {
    std::size_t c = 0;
    for (const auto& r : trace)
      c += r.action == action;
    return c;
  }

  struct Delivery
  {
    NodeId node;
    std::string name;
    std::uint32_t hops;
  };

  Simulator sim;
  MobilityModel mobility;
  Medium medium;
  TraceSink sink;
  std::vector<TraceRecord> trace;
  std::vector<std::unique_ptr<NdnNode>> nodes;
  std::vector<Delivery> delivered;
};

std::vector<std::pair<double, double>>
LineOf(int n)
{
  std::vector<std::pair<double, double>> xy;
  for (int i = 0; i < n; ++i)
    xy.emplace_back(100.0 * i, 0.0);
  return xy;
}

// Center 0, leaves 1..3 mutually out of range, relay 4 and producer 5 below.
std::vector<std::pair<double, double>>
Star()
{
  return {{0, 0}, {100, 0}, {-100, 0}, {0, 100}, {0, -100}, {0, -200}};
}

// Feeds node 0 Interests from leaves 1..3, then the Data from node 4, with
// every other station deaf. Returns the destinations of node 0's Data frames.
std::vector<NodeId>
AggregateAtCenter(Net& net, bool discovery)
{
  for (NodeId n = 1; n < net.nodes.size(); ++n)
    net.medium.SetReceiveHandler(n, {});
  std::vector<NodeId> dataDests;
  net.medium.SetTxObserver([&](const Frame& f) {
    if (f.sender == 0 && std::holds_alternative<Data>(*f.packet))
      dataDests.push_back(f.dest);
  });
  NdnNode& center = *net.nodes[0];
  for (NodeId leaf = 1; leaf <= 3; ++leaf)
    {
      Interest i;
      i.name = Name::Parse("/p/1");
      i.nonce = 100 + leaf;
      i.discovery = discovery;
      Frame f;
      f.sender = leaf;
      f.packet = std::make_shared<Packet>(i);
      center.OnFrame(f, true);
    }
  net.sim.Run(0.5);
  Data d;
  d.name = Name::Parse("/p/1");
  d.announcedPrefix = Name::Parse("/p");
  Frame f;
  f.sender = 4;
  f.dest = 0;
  f.packet = std::make_shared<Packet>(d);
  center.OnFrame(f, true);
  net.sim.Run(1.0);
  std::sort(dataDests.begin(), dataDests.end());
  return dataDests;
}

} // namespace

TEST(Daf, FloodsOnMissThenUnicastsOnHit)
{
  Net net("daf", LineOf(4));
  net.nodes[3]->AddProducerPrefix(Name::Parse("/p"));
  net.nodes[0]->ExpressInterest(Name::Parse("/p/1"), false);
  net.sim.Run(1.0);
  ASSERT_EQ(net.delivered.size(), 1u);
  EXPECT_EQ(net.delivered[0].hops, 3u);
  EXPECT_EQ(net.Count(0, "interest-bcast"), 1u);

  const FibNextHop* hop = net.nodes[0]->GetFib().FindNextHop(Name::Parse("/p"), 1);
  ASSERT_NE(hop, nullptr);
  EXPECT_EQ(hop->hc, 3u);
  EXPECT_TRUE(hop->rtt.HasSample());
  EXPECT_EQ(net.nodes[1]->GetFib().FindNextHop(Name::Parse("/p"), 2)->hc, 2u);
  EXPECT_EQ(net.nodes[2]->GetFib().FindNextHop(Name::Parse("/p"), 3)->hc, 1u);

  net.nodes[0]->ExpressInterest(Name::Parse("/p/2"), false);
  net.sim.Run(2.0);
  ASSERT_EQ(net.delivered.size(), 2u);
  EXPECT_EQ(net.Count(0, "interest-ucast"), 1u);
  EXPECT_EQ(net.Count(1, "interest-ucast"), 1u);
  EXPECT_EQ(net.Count(2, "interest-ucast"), 1u);
  // A unicast answer cancels the timer so the hop survives.
  EXPECT_NE(net.nodes[0]->GetFib().FindNextHop(Name::Parse("/p"), 1), nullptr);
  EXPECT_EQ(net.CountAny("fib-timeout"), 0u);
}

TEST(Daf, CachedNameIsAnsweredLocally)
{
  Net net("daf", LineOf(3));
  net.nodes[2]->AddProducerPrefix(Name::Parse("/p"));
  Data d;
  d.name = Name::Parse("/p/9");
  net.nodes[1]->Cs().Insert(d, 0.0);
  net.nodes[0]->ExpressInterest(Name::Parse("/p/9"), false);
  net.sim.Run(1.0);
  ASSERT_EQ(net.delivered.size(), 1u);
  EXPECT_EQ(net.delivered[0].hops, 1u);
  EXPECT_EQ(net.Count(1, "cs-hit"), 1u);
  EXPECT_EQ(net.Count(1, "interest-bcast") + net.Count(1, "interest-ucast"), 0u);
  EXPECT_EQ(net.Count(2, "produce"), 0u);
}

TEST(Daf, AggregatedDownstreamsShareOneBroadcast)
{
  Net net("daf", Star());
  EXPECT_EQ(AggregateAtCenter(net, false), (std::vector<NodeId>{kBroadcast}));
  EXPECT_EQ(net.Count(0, "pit-aggregate"), 2u);
}

TEST(Daf, UnsolicitedDataIsCachedNotForwarded)
{
  Net net("daf", LineOf(3));
  Data d;
  d.name = Name::Parse("/q/1");
  net.medium.Send(0, 1, std::make_shared<Packet>(d));
  net.sim.Run(1.0);
  EXPECT_TRUE(net.nodes[1]->Cs().Contains(d.name));
  EXPECT_EQ(net.Count(1, "data-unsolicited"), 1u);
  EXPECT_EQ(net.medium.TxEvents(), 1u);
}

TEST(Daf, NextHopExpiresWithoutFeedback)
{
  Net net("daf", LineOf(2));
  NdnNode& n = *net.nodes[0];
  FibNextHop& hop = n.GetFib().Upsert(Name::Parse("/p"), 1);
  hop.rtt.srtt = 0.090;
  hop.rtt.rttv = 0.035;
  hop.rtt.samples = 2;
  n.ArmNextHopTimer(Name::Parse("/p"), 1);
  net.sim.Run(0.229);
  EXPECT_NE(n.GetFib().FindNextHop(Name::Parse("/p"), 1), nullptr);
  net.sim.Run(0.231);
  EXPECT_EQ(n.GetFib().FindNextHop(Name::Parse("/p"), 1), nullptr);
  EXPECT_EQ(net.Count(0, "fib-timeout"), 1u);
}

TEST(Daf, StaleHopsArePurgedByTheChecker)
{
  Net net("daf", LineOf(2));
  NdnNode& n = *net.nodes[0];
  n.Start();
  FibNextHop& hop = n.GetFib().Upsert(Name::Parse("/p"), 1);
  hop.tData = 0.0;
  net.sim.Run(1.5);
  EXPECT_NE(n.GetFib().FindNextHop(Name::Parse("/p"), 1), nullptr);
  net.sim.Run(2.5);
  EXPECT_EQ(n.GetFib().FindNextHop(Name::Parse("/p"), 1), nullptr);
}

TEST(Flooding, EverythingIsBroadcast)
{
  Net net("flooding", LineOf(4));
  net.nodes[3]->AddProducerPrefix(Name::Parse("/p"));
  for (int s = 1; s <= 3; ++s)
    net.sim.ScheduleAt(0.2 * s, [&net, s] { net.nodes[0]->ExpressInterest(Name::Parse("/p/" + std::to_string(s)), false); });
  net.sim.Run(2.0);
  EXPECT_EQ(net.delivered.size(), 3u);
  EXPECT_EQ(net.CountAny("interest-ucast") + net.CountAny("data-ucast"), 0u);
  EXPECT_EQ(net.Count(0, "interest-bcast"), 3u);
  for (NodeId n = 0; n < 4; ++n)
    EXPECT_EQ(net.nodes[n]->GetFib().EntryCount(), 0u);
}

TEST(Flooding, DuplicateDataIsDropped)
{
  // Two relays between consumer and producer: each rebroadcasts the Data once.
  Net net("flooding", {{0, 0}, {100, 50}, {100, -50}, {200, 0}});
  net.nodes[3]->AddProducerPrefix(Name::Parse("/p"));
  net.nodes[0]->ExpressInterest(Name::Parse("/p/1"), false);
  net.sim.Run(1.0);
  EXPECT_EQ(net.delivered.size(), 1u);
  EXPECT_LE(net.Count(1, "data-bcast"), 1u);
  EXPECT_LE(net.Count(2, "data-bcast"), 1u);
  EXPECT_GE(net.Count(1, "data-bcast") + net.Count(2, "data-bcast"), 1u);
}

TEST(SelfLearning, DiscoveryTeachesEveryRelay)
{
  Net net("self-learning", LineOf(4));
  net.nodes[3]->AddProducerPrefix(Name::Parse("/p"));
  net.nodes[0]->ExpressInterest(Name::Parse("/p/1"), false);
  net.sim.Run(1.0);
  ASSERT_EQ(net.delivered.size(), 1u);
  EXPECT_EQ(net.delivered[0].hops, 3u);
  for (NodeId n = 0; n < 3; ++n)
    EXPECT_NE(net.nodes[n]->GetFib().FindNextHop(Name::Parse("/p"), n + 1), nullptr) << n;
  EXPECT_EQ(net.CountAny("data-bcast"), 0u);

  net.nodes[0]->ExpressInterest(Name::Parse("/p/2"), false);
  net.sim.Run(2.0);
  EXPECT_EQ(net.delivered.size(), 2u);
  EXPECT_EQ(net.Count(0, "interest-ucast"), 1u);
}

TEST(SelfLearning, PlainInterestWithoutRouteIsDropped)
{
  Net net("self-learning", LineOf(3));
  net.nodes[2]->AddProducerPrefix(Name::Parse("/p"));
  Interest i;
  i.name = Name::Parse("/p/1");
  i.nonce = 5;
  net.medium.Send(0, 1, std::make_shared<Packet>(i));
  net.sim.Run(1.0);
  EXPECT_EQ(net.Count(1, "drop-fib-miss"), 1u);
  EXPECT_EQ(net.medium.TxEvents(), 1u);
}

TEST(SelfLearning, DiscoveryFlagRules)
{
  Net net("self-learning", LineOf(2));
  NdnNode& n = *net.nodes[0];
  Strategy& s = n.GetStrategy();
  EXPECT_TRUE(s.WantsDiscovery(n, Name::Parse("/p/1"), false));
  n.GetFib().Upsert(Name::Parse("/p"), 1);
  EXPECT_FALSE(s.WantsDiscovery(n, Name::Parse("/p/1"), false));
  EXPECT_TRUE(s.WantsDiscovery(n, Name::Parse("/p/1"), true));
}

TEST(SelfLearning, AggregatedDownstreamsGetSeparateUnicasts)
{
  Net net("self-learning", Star());
  EXPECT_EQ(AggregateAtCenter(net, true), (std::vector<NodeId>{1, 2, 3}));
  EXPECT_EQ(net.Count(0, "pit-aggregate"), 2u);
}

TEST(Strategy, UnknownSchemeThrows)
{
  EXPECT_THROW(MakeStrategy("aodv"), std::invalid_argument);
  EXPECT_STREQ(MakeStrategy("daf")->SchemeName(), "daf");
}

// Loop freedom over a full run: at most one Interest transmission per (node, name, nonce).
class LoopFreedom : public ::testing::TestWithParam<std::string>
{
};

TEST_P(LoopFreedom, OneTransmissionPerNonce)
{
  ScenarioConfig cfg;
  cfg.scheme = GetParam();
  cfg.speed = 2.0;
  cfg.requestsPerConsumer = 60;
  cfg.rtxMax = 2;
  SimulationSetup setup = MakeSetup(cfg, 11);
  std::set<std::tuple<NodeId, std::string>> seen;
  std::size_t dupes = 0, interests = 0;
  RunOptions opt;
  opt.trace = [&](const TraceRecord& r) {
    if (r.action != "interest-bcast" && r.action != "interest-ucast")
      return;
    ++interests;
    // detail: "<name> nonce=<n>[ to=<id>]"
    const std::string key = r.detail.substr(0, r.detail.find(" to="));
    dupes += !seen.insert({r.node, key}).second;
  };
  RunResult res = RunSimulation(setup, opt);
  EXPECT_GT(interests, 0u);
  EXPECT_EQ(dupes, 0u);
  EXPECT_GT(res.metrics.totalRetrieved, 0u);
}

INSTANTIATE_TEST_SUITE_P(Ndn, LoopFreedom, ::testing::Values("daf", "flooding", "self-learning"));

TEST(Strategy, FloodingCostsMoreThanDafOnStaticGrid)
{
  ScenarioConfig cfg;
  cfg.requestsPerConsumer = 100;
  cfg.scheme = "daf";
  RunResult daf = RunSimulation(MakeSetup(cfg, 3));
  cfg.scheme = "flooding";
  RunResult flood = RunSimulation(MakeSetup(cfg, 3));
  ASSERT_TRUE(daf.metrics.txEventsPerData && flood.metrics.txEventsPerData);
  EXPECT_GT(*flood.metrics.txEventsPerData, *daf.metrics.txEventsPerData);
}
