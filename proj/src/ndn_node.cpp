/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/ndn_node.hpp"

#include <string>

namespace dafsim {

NdnNode::NdnNode(NodeId id, Simulator& sim, Medium& medium, std::unique_ptr<Strategy> strategy,
                 NdnNodeConfig config, std::uint64_t seed, const TraceSink* trace)
  : m_id(id),
    m_sim(sim),
    m_medium(medium),
    m_strategy(std::move(strategy)),
    m_config(config),
    m_cs(config.csCapacity),
    m_pit(config.deadNonceLifetime),
    m_nonces(seed, "nonce/" + std::to_string(id)),
    m_trace(trace)
{
}

void
NdnNode::Start()
{
  m_sim.Schedule(m_config.checkerPeriod, [this] { RunChecker(); });
}

void
NdnNode::RunChecker()
{
  const Time now = m_sim.Now();
  if (m_strategy->PurgesStaleNextHops())
    {
      for (const auto& [prefix, nh] : m_fib.PurgeStale(now, m_config.staleLifetime, m_sim))
        if (Tracing())
          Trace("fib-stale", prefix.ToUri() + " nh=" + std::to_string(nh));
    }
  m_pit.Purge(now);
  m_sim.Schedule(m_config.checkerPeriod, [this] { RunChecker(); });
}

void
NdnNode::ExpressInterest(const Name& name, bool afterTimeout)
{
  Interest interest;
  interest.name = name;
  interest.nonce = m_nonces.Next32();
  interest.discovery = m_strategy->WantsDiscovery(*this, name, afterTimeout);
  if (Tracing())
    Trace("app-interest", name.ToUri() + " nonce=" + std::to_string(interest.nonce));
  m_strategy->OnInterest(*this, std::move(interest), kLocalFace, false);
}

void
NdnNode::OnFrame(const Frame& frame, bool addressed)
{
  if (!addressed)
    return;
  if (const auto* interest = std::get_if<Interest>(frame.packet.get()))
    m_strategy->OnInterest(*this, *interest, frame.sender, frame.IsBroadcast());
  else if (const auto* data = std::get_if<Data>(frame.packet.get()))
    m_strategy->OnData(*this, *data, frame.sender, frame.IsBroadcast());
}

std::optional<Name>
NdnNode::ProducedPrefix(const Name& name) const
{
  for (const auto& p : m_producerPrefixes)
    if (p.IsPrefixOf(name))
      return p;
  return std::nullopt;
}

bool
NdnNode::InterestPrologue(const Interest& interest, NodeId ep, bool announce, DataDispatch replyMode)
{
  const Time now = m_sim.Now();
  if (m_pit.IsDuplicate(interest.name, interest.nonce, now))
    {
      if (Tracing())
        Trace("drop-duplicate", interest.name.ToUri() + " nonce=" + std::to_string(interest.nonce));
      return false;
    }

  if (const Data* cached = m_cs.Lookup(interest.name))
    {
      m_pit.RememberNonce(interest.name, interest.nonce, now);
      Data reply = *cached;
      reply.hcFromSource = 0;
      reply.announcedPrefix.reset();
      if (announce)
        reply.announcedPrefix = interest.name.Prefix(1);
      PitSatisfaction where;
      if (ep == kLocalFace)
        where.local = true;
      else
        {
          where.decision = Downstream::Unicast;
          where.ep = ep;
          where.eps = {ep};
        }
      if (Tracing())
        Trace("cs-hit", interest.name.ToUri());
      DispatchData(reply, where, replyMode);
      return false;
    }

  const InterestVerdict verdict = m_pit.ProcessInterest(interest, ep, now);
  if (verdict == InterestVerdict::Aggregated)
    {
      if (Tracing())
        Trace("pit-aggregate", interest.name.ToUri());
      return false;
    }
  if (verdict == InterestVerdict::DuplicateNonce)
    return false;

  if (auto prefix = ProducedPrefix(interest.name))
    {
      Data produced;
      produced.name = interest.name;
      produced.hcFromSource = 0;
      if (announce)
        produced.announcedPrefix = *prefix;
      m_cs.Insert(produced, now);
      if (Tracing())
        Trace("produce", interest.name.ToUri());
      DispatchData(produced, m_pit.Satisfy(interest.name, now), replyMode);
      return false;
    }
  return true;
}

void
NdnNode::DispatchData(const Data& data, const PitSatisfaction& where, DataDispatch mode)
{
  if (where.local && m_appSink)
    m_appSink(data, data.hcFromSource);
  if (where.eps.empty())
    return;
  switch (mode)
    {
    case DataDispatch::UnicastOrBroadcast:
      SendData(data, where.eps.size() == 1 ? where.eps.front() : kBroadcast);
      break;
    case DataDispatch::AlwaysBroadcast:
      SendData(data, kBroadcast);
      break;
    case DataDispatch::UnicastPerDownstream:
      for (NodeId ep : where.eps)
        SendData(data, ep);
      break;
    }
}

void
NdnNode::SendInterest(const Interest& interest, NodeId dest)
{
  auto out = std::make_shared<Packet>(interest);
  std::get<Interest>(*out).hopCount += 1;
  if (Tracing())
    Trace(dest == kBroadcast ? "interest-bcast" : "interest-ucast",
          interest.name.ToUri() + " nonce=" + std::to_string(interest.nonce) +
            (dest == kBroadcast ? std::string() : " to=" + std::to_string(dest)));
  m_medium.Send(m_id, dest, std::move(out));
}

void
NdnNode::SendData(const Data& data, NodeId dest)
{
  if (Tracing())
    Trace(dest == kBroadcast ? "data-bcast" : "data-ucast",
          data.name.ToUri() + " hc=" + std::to_string(data.hcFromSource) +
            (dest == kBroadcast ? std::string() : " to=" + std::to_string(dest)));
  m_medium.Send(m_id, dest, std::make_shared<Packet>(data));
}

void
NdnNode::ArmNextHopTimer(const Name& prefix, NodeId nh)
{
  FibNextHop* hop = m_fib.FindNextHop(prefix, nh);
  if (hop == nullptr || m_sim.IsPending(hop->pendingTimer))
    return;
  const Time timeout = NextHopTimeout(hop->rtt);
  hop->pendingTimer = m_sim.Schedule(timeout, [this, prefix, nh] {
    if (m_fib.Remove(prefix, nh) && Tracing())
      Trace("fib-timeout", prefix.ToUri() + " nh=" + std::to_string(nh));
  });
}

void
NdnNode::CancelNextHopTimer(FibNextHop& hop)
{
  m_sim.Cancel(hop.pendingTimer);
  hop.pendingTimer = EventId{};
}

void
NdnNode::Trace(const char* action, const std::string& detail) const
{
  if (Tracing())
    (*m_trace)(TraceRecord{m_sim.Now(), m_id, action, detail});
}

} // namespace dafsim
