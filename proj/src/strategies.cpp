/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/strategies.hpp"

#include <stdexcept>
#include <string>

namespace dafsim {

namespace {

Name
PrefixOf(const Data& data)
{
  return data.announcedPrefix ? *data.announcedPrefix : data.name.Prefix(1);
}

} // namespace

// ---------------------------------------------------------------- DAF

void
DafStrategy::OnInterest(NdnNode& node, Interest interest, NodeId ep, bool viaBroadcast)
{
  if (!node.InterestPrologue(interest, ep, viaBroadcast, DataDispatch::UnicastOrBroadcast))
    return;

  const Time now = node.Sim().Now();
  Fib& fib = node.GetFib();
  if (FibNextHop* hop = fib.Lookup(interest.name, now, ep))
    {
      const NodeId nh = hop->nh;
      const Name prefix = fib.Match(interest.name)->prefix;
      node.SendInterest(interest, nh);
      node.GetPit().MarkForwarded(interest.name, now);
      node.ArmNextHopTimer(prefix, nh);
      return;
    }
  node.SendInterest(interest, kBroadcast);
  node.GetPit().MarkForwarded(interest.name, now);
}

void
DafStrategy::OnData(NdnNode& node, Data data, NodeId from, bool /*viaBroadcast*/)
{
  const Time now = node.Sim().Now();
  const Name prefix = PrefixOf(data);
  const std::uint32_t hc = data.hcFromSource + 1;

  std::optional<Time> forwardedAt;
  if (const PitEntry* pending = node.GetPit().Find(data.name, now))
    forwardedAt = pending->forwardedAt;

  FibNextHop& hop = node.GetFib().Upsert(prefix, from);
  if (forwardedAt && now > *forwardedAt)
    {
      hop.lastRtt = now - *forwardedAt;
      hop.rtt = UpdateRttEstimate(hop.rtt, hop.lastRtt);
    }
  hop.hc = hc;
  hop.tData = now;
  node.CancelNextHopTimer(hop);

  node.Cs().Insert(data, now);
  PitSatisfaction where = node.GetPit().Satisfy(data.name, now);
  if (where.decision == Downstream::NoEntry && !where.local)
    {
      if (node.Tracing())
        node.Trace("data-unsolicited", data.name.ToUri());
      return;
    }
  data.hcFromSource = hc;
  node.DispatchData(data, where, DataDispatch::UnicastOrBroadcast);
}

// ----------------------------------------------------------- flooding

void
FloodingStrategy::OnInterest(NdnNode& node, Interest interest, NodeId ep, bool /*viaBroadcast*/)
{
  if (!node.InterestPrologue(interest, ep, false, DataDispatch::AlwaysBroadcast))
    return;
  node.SendInterest(interest, kBroadcast);
  node.GetPit().MarkForwarded(interest.name, node.Sim().Now());
}

void
FloodingStrategy::OnData(NdnNode& node, Data data, NodeId /*from*/, bool /*viaBroadcast*/)
{
  const Time now = node.Sim().Now();
  node.Cs().Insert(data, now);
  PitSatisfaction where = node.GetPit().Satisfy(data.name, now);
  if (where.decision == Downstream::NoEntry && !where.local)
    return;
  data.hcFromSource += 1;
  node.DispatchData(data, where, DataDispatch::AlwaysBroadcast);
}

// ------------------------------------------------------- self-learning

void
SelfLearningStrategy::OnInterest(NdnNode& node, Interest interest, NodeId ep, bool /*viaBroadcast*/)
{
  if (!node.InterestPrologue(interest, ep, interest.discovery, DataDispatch::UnicastPerDownstream))
    return;

  const Time now = node.Sim().Now();
  if (interest.discovery)
    {
      node.SendInterest(interest, kBroadcast);
      node.GetPit().MarkForwarded(interest.name, now);
      return;
    }
  if (FibNextHop* hop = node.GetFib().Lookup(interest.name, now, ep))
    {
      node.SendInterest(interest, hop->nh);
      node.GetPit().MarkForwarded(interest.name, now);
      return;
    }
  if (node.Tracing())
    node.Trace("drop-fib-miss", interest.name.ToUri());
}

void
SelfLearningStrategy::OnData(NdnNode& node, Data data, NodeId from, bool /*viaBroadcast*/)
{
  const Time now = node.Sim().Now();
  const Name prefix = PrefixOf(data);
  const std::uint32_t hc = data.hcFromSource + 1;
  Fib& fib = node.GetFib();

  const bool solicited = node.GetPit().Find(data.name, now) != nullptr;
  if (data.announcedPrefix && solicited)
    {
      // A fresh announcement replaces whatever was learned before.
      fib.RemoveEntry(prefix);
      FibNextHop& hop = fib.Upsert(prefix, from);
      hop.hc = hc;
      hop.tData = now;
    }
  else if (FibNextHop* hop = fib.FindNextHop(prefix, from))
    {
      hop->hc = hc;
      hop->tData = now;
    }

  node.Cs().Insert(data, now);
  PitSatisfaction where = node.GetPit().Satisfy(data.name, now);
  if (where.decision == Downstream::NoEntry && !where.local)
    return;
  data.hcFromSource = hc;
  node.DispatchData(data, where, DataDispatch::UnicastPerDownstream);
}

bool
SelfLearningStrategy::WantsDiscovery(NdnNode& node, const Name& name, bool afterTimeout)
{
  return afterTimeout || node.GetFib().Match(name) == nullptr;
}

std::unique_ptr<Strategy>
MakeStrategy(std::string_view scheme)
{
  if (scheme == "daf")
    return std::make_unique<DafStrategy>();
  if (scheme == "flooding")
    return std::make_unique<FloodingStrategy>();
  if (scheme == "self-learning")
    return std::make_unique<SelfLearningStrategy>();
  throw std::invalid_argument("unknown NDN scheme: " + std::string(scheme));
}

} // namespace dafsim
