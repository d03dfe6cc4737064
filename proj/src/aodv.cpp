/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/aodv.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace dafsim {

AodvNode::AodvNode(NodeId id, Simulator& sim, Medium& medium, AodvParams params,
                   std::uint64_t seed, const TraceSink* trace)
  : m_id(id),
    m_sim(sim),
    m_medium(medium),
    m_params(params),
    m_rng(seed, "aodv/" + std::to_string(id)),
    m_trace(trace)
{
}

void
AodvNode::Start()
{
  // Random phase so neighbors' HELLOs are not synchronized.
  m_sim.Schedule(m_rng.Uniform(0.0, m_params.helloInterval), [this] { HelloTick(); });
}

const RouteEntry*
AodvNode::FindRoute(NodeId dest) const
{
  auto it = m_routes.find(dest);
  return it == m_routes.end() ? nullptr : &it->second;
}

bool
AodvNode::HasActiveRoute(NodeId dest) const
{
  const RouteEntry* r = FindRoute(dest);
  return r != nullptr && r->Usable(m_sim.Now());
}

std::size_t
AodvNode::BufferedFor(NodeId dest) const
{
  auto it = m_buffer.find(dest);
  return it == m_buffer.end() ? 0 : it->second.size();
}

void
AodvNode::Trace(const char* action, const std::string& detail) const
{
  if (m_trace != nullptr && *m_trace)
    (*m_trace)(TraceRecord{m_sim.Now(), m_id, action, detail});
}

void
AodvNode::Transmit(NodeId dest, Packet packet, const char* action)
{
  if (dest == kBroadcast)
    m_lastBroadcast = m_sim.Now();
  if (m_trace != nullptr && *m_trace)
    Trace(action, dest == kBroadcast ? std::string("bcast") : "to=" + std::to_string(dest));
  m_medium.Send(m_id, dest, std::make_shared<Packet>(std::move(packet)));
}

// ------------------------------------------------------------ data path

void
AodvNode::SendFromApp(IpDatagram datagram)
{
  datagram.src = m_id;
  datagram.hops = 0;
  SendOrDiscover(std::move(datagram));
}

void
AodvNode::SendOrDiscover(IpDatagram datagram)
{
  const Time now = m_sim.Now();
  auto it = m_routes.find(datagram.dst);
  if (it != m_routes.end() && it->second.Usable(now) && !NeighborAlive(it->second.nextHop))
    BreakLink(it->second.nextHop);

  it = m_routes.find(datagram.dst);
  if (it != m_routes.end() && it->second.Usable(now))
    {
      const NodeId nh = it->second.nextHop;
      Refresh(datagram.dst, m_params.activeRouteTimeout);
      Refresh(nh, m_params.activeRouteTimeout);
      const NodeId dst = datagram.dst;
      if (m_trace != nullptr && *m_trace)
        Trace("data-tx", "dst=" + std::to_string(dst) + " to=" + std::to_string(nh) +
                           " seq=" + std::to_string(datagram.seq));
      m_medium.Send(m_id, nh, std::make_shared<Packet>(std::move(datagram)));
      return;
    }

  const NodeId dst = datagram.dst;
  auto& queue = m_buffer[dst];
  if (queue.size() >= m_params.bufferCapacity)
    {
      queue.pop_front();
      ++m_dataDrops;
    }
  queue.push_back(std::move(datagram));
  StartDiscovery(dst);
}

void
AodvNode::HandleDatagram(IpDatagram datagram, NodeId from)
{
  datagram.hops += 1;
  Refresh(datagram.src, m_params.activeRouteTimeout);
  if (datagram.dst != m_id)
    {
      auto it = m_routes.find(datagram.dst);
      if (it == m_routes.end() || !it->second.Usable(m_sim.Now()))
        {
          ++m_dataDrops;
          Trace("data-drop-noroute", "dst=" + std::to_string(datagram.dst));
          return;
        }
      AddPrecursor(datagram.dst, from);
      SendOrDiscover(std::move(datagram));
      return;
    }

  if (datagram.kind == IpDatagram::Kind::Request)
    {
      if (!m_responder)
        return;
      IpDatagram response;
      response.kind = IpDatagram::Kind::Response;
      response.src = m_id;
      response.dst = datagram.src;
      response.seq = datagram.seq;
      response.timestamp = datagram.timestamp;
      response.echoedHops = datagram.hops;
      response.payloadSize = kDataPayloadBytes;
      SendOrDiscover(std::move(response));
      return;
    }
  if (m_appSink)
    m_appSink(datagram);
}

// ------------------------------------------------------ route discovery

void
AodvNode::StartDiscovery(NodeId dest)
{
  if (m_discoveries.count(dest) != 0)
    return;
  m_discoveries[dest] = Discovery{};
  BroadcastRreq(dest);
}

void
AodvNode::BroadcastRreq(NodeId dest)
{
  Discovery& d = m_discoveries[dest];
  ++m_seq;
  Rreq rreq;
  rreq.rreqId = ++m_rreqId;
  rreq.originator = m_id;
  rreq.originatorSeq = m_seq;
  rreq.destination = dest;
  if (const RouteEntry* r = FindRoute(dest); r != nullptr && r->validSeq)
    {
      rreq.destinationSeq = r->destSeq;
      rreq.unknownSeq = false;
    }
  m_rreqSeen[{m_id, rreq.rreqId}] = m_sim.Now() + m_params.rreqIdCacheLifetime;
  Transmit(kBroadcast, rreq, "rreq-tx");
  const Time wait = m_params.NetTraversalTime() * std::pow(2.0, d.retries);
  d.timer = m_sim.Schedule(wait, [this, dest] { OnDiscoveryTimeout(dest); });
}

void
AodvNode::OnDiscoveryTimeout(NodeId dest)
{
  auto it = m_discoveries.find(dest);
  if (it == m_discoveries.end())
    return;
  if (HasActiveRoute(dest))
    {
      m_discoveries.erase(it);
      DrainBuffer(dest);
      return;
    }
  if (it->second.retries < m_params.rreqRetries)
    {
      ++it->second.retries;
      BroadcastRreq(dest);
      return;
    }
  m_discoveries.erase(it);
  auto buf = m_buffer.find(dest);
  if (buf != m_buffer.end())
    {
      m_dataDrops += buf->second.size();
      Trace("rreq-fail", "dst=" + std::to_string(dest) +
                           " dropped=" + std::to_string(buf->second.size()));
      m_buffer.erase(buf);
    }
}

void
AodvNode::DrainBuffer(NodeId dest)
{
  auto it = m_buffer.find(dest);
  if (it == m_buffer.end())
    return;
  std::deque<IpDatagram> pending = std::move(it->second);
  m_buffer.erase(it);
  for (auto& d : pending)
    SendOrDiscover(std::move(d));
}

void
AodvNode::HandleRreq(Rreq rreq, NodeId from)
{
  const Time now = m_sim.Now();
  RefreshNeighborRoute(from);
  if (rreq.originator == m_id)
    return;
  const auto key = std::make_pair(rreq.originator, rreq.rreqId);
  auto seen = m_rreqSeen.find(key);
  if (seen != m_rreqSeen.end() && seen->second > now)
    return;
  m_rreqSeen[key] = now + m_params.rreqIdCacheLifetime;
  if (m_rreqSeen.size() > 4096)
    std::erase_if(m_rreqSeen, [now](const auto& kv) { return kv.second <= now; });

  const std::uint32_t hops = rreq.hopCount + 1;
  const Time minimalLifetime =
    now + 2.0 * m_params.NetTraversalTime() - 2.0 * hops * m_params.nodeTraversalTime;
  RouteEntry& reverse = m_routes[rreq.originator];
  const bool replace = !reverse.validSeq || !reverse.Usable(now) ||
                       rreq.originatorSeq > reverse.destSeq ||
                       (rreq.originatorSeq == reverse.destSeq && hops < reverse.hopCount);
  if (replace)
    {
      reverse.dest = rreq.originator;
      reverse.nextHop = from;
      reverse.hopCount = hops;
      reverse.destSeq = rreq.originatorSeq;
      reverse.validSeq = true;
      reverse.active = true;
    }
  reverse.expiry = std::max(reverse.expiry, minimalLifetime);

  if (rreq.destination == m_id)
    {
      if (!rreq.unknownSeq && rreq.destinationSeq == m_seq + 1)
        ++m_seq;
      Rrep rrep;
      rrep.originator = rreq.originator;
      rrep.destination = m_id;
      rrep.destinationSeq = m_seq;
      rrep.hopCount = 0;
      rrep.lifetime = m_params.MyRouteTimeout();
      Transmit(reverse.nextHop, rrep, "rrep-tx");
      return;
    }

  const RouteEntry* known = FindRoute(rreq.destination);
  if (known != nullptr && known->Usable(now) && known->validSeq &&
      (rreq.unknownSeq || known->destSeq >= rreq.destinationSeq) &&
      known->nextHop != from)
    {
      Rrep rrep;
      rrep.originator = rreq.originator;
      rrep.destination = rreq.destination;
      rrep.destinationSeq = known->destSeq;
      rrep.hopCount = known->hopCount;
      rrep.lifetime = known->expiry - now;
      Transmit(reverse.nextHop, rrep, "rrep-tx");
      return;
    }

  if (known != nullptr && known->validSeq &&
      (rreq.unknownSeq || known->destSeq > rreq.destinationSeq))
    {
      rreq.destinationSeq = known->destSeq;
      rreq.unknownSeq = false;
    }
  rreq.hopCount = hops;
  Transmit(kBroadcast, rreq, "rreq-fwd");
}

void
AodvNode::HandleRrep(const Rrep& rrep, NodeId from)
{
  const Time now = m_sim.Now();
  RefreshNeighborRoute(from);
  if (rrep.destination == m_id)
    return;
  const std::uint32_t hops = rrep.hopCount + 1;
  RouteEntry& fwd = m_routes[rrep.destination];
  const bool update = !fwd.validSeq || !fwd.Usable(now) || rrep.destinationSeq > fwd.destSeq ||
                      (rrep.destinationSeq == fwd.destSeq && hops < fwd.hopCount);
  if (update)
    {
      fwd.dest = rrep.destination;
      fwd.nextHop = from;
      fwd.hopCount = hops;
      fwd.destSeq = rrep.destinationSeq;
      fwd.validSeq = true;
      fwd.active = true;
      fwd.expiry = now + rrep.lifetime;
      if (m_trace != nullptr && *m_trace)
        Trace("route-install", "dst=" + std::to_string(rrep.destination) +
                                 " nh=" + std::to_string(from) + " hops=" + std::to_string(hops));
    }

  if (rrep.originator == m_id)
    {
      auto d = m_discoveries.find(rrep.destination);
      if (d != m_discoveries.end())
        {
          m_sim.Cancel(d->second.timer);
          m_discoveries.erase(d);
        }
      DrainBuffer(rrep.destination);
      return;
    }
  if (!update)
    return;

  auto reverse = m_routes.find(rrep.originator);
  if (reverse == m_routes.end() || !reverse->second.Usable(now))
    {
      Trace("rrep-drop-noreverse", "orig=" + std::to_string(rrep.originator));
      return;
    }
  reverse->second.expiry = std::max(reverse->second.expiry, now + m_params.activeRouteTimeout);
  AddPrecursor(rrep.destination, reverse->second.nextHop);
  Rrep next = rrep;
  next.hopCount = hops;
  Transmit(reverse->second.nextHop, next, "rrep-fwd");
}

// --------------------------------------------------- route maintenance

void
AodvNode::HandleHello(const Hello& hello, NodeId from)
{
  RouteEntry& r = m_routes[from];
  r.dest = from;
  r.nextHop = from;
  r.hopCount = 1;
  r.destSeq = std::max(r.destSeq, hello.seq);
  r.validSeq = true;
  r.active = true;
  r.expiry = std::max(r.expiry, m_sim.Now() + m_params.NeighborLifetime());
}

void
AodvNode::HandleRerr(const Rerr& rerr, NodeId from)
{
  const Time now = m_sim.Now();
  Rerr onward;
  for (const auto& u : rerr.destinations)
    {
      auto it = m_routes.find(u.destination);
      if (it == m_routes.end() || !it->second.Usable(now) || it->second.nextHop != from)
        continue;
      it->second.active = false;
      it->second.destSeq = std::max(it->second.destSeq, u.seq);
      onward.destinations.push_back({u.destination, it->second.destSeq});
    }
  if (!onward.destinations.empty())
    Transmit(kBroadcast, onward, "rerr-fwd");
}

void
AodvNode::HelloTick()
{
  const Time now = m_sim.Now();
  CheckLinks();
  const bool onActiveRoute =
    std::any_of(m_routes.begin(), m_routes.end(), [&](const auto& kv) {
      return kv.second.Usable(now) && kv.second.hopCount > 1;
    }) ||
    !m_buffer.empty();
  if (onActiveRoute && now - m_lastBroadcast >= m_params.helloInterval)
    Transmit(kBroadcast, Hello{m_id, m_seq}, "hello-tx");
  m_sim.Schedule(m_params.helloInterval, [this] { HelloTick(); });
}

bool
AodvNode::NeighborAlive(NodeId neighbor) const
{
  auto it = m_lastHeard.find(neighbor);
  return it != m_lastHeard.end() && m_sim.Now() - it->second <= m_params.NeighborLifetime();
}

void
AodvNode::CheckLinks()
{
  const Time now = m_sim.Now();
  std::vector<NodeId> lost;
  for (const auto& [dest, r] : m_routes)
    if (r.Usable(now) && !NeighborAlive(r.nextHop) &&
        std::find(lost.begin(), lost.end(), r.nextHop) == lost.end())
      lost.push_back(r.nextHop);
  for (NodeId n : lost)
    BreakLink(n);
}

void
AodvNode::BreakLink(NodeId neighbor)
{
  const Time now = m_sim.Now();
  Trace("link-break", "nh=" + std::to_string(neighbor));
  Rerr rerr;
  for (auto& [dest, r] : m_routes)
    {
      if (!r.Usable(now) || r.nextHop != neighbor)
        continue;
      r.active = false;
      ++r.destSeq;
      // The neighbor itself only matters to nodes relaying through us.
      if (dest != neighbor || !r.precursors.empty())
        rerr.destinations.push_back({dest, r.destSeq});
    }
  if (!rerr.destinations.empty())
    Transmit(kBroadcast, rerr, "rerr-tx");
}

void
AodvNode::RefreshNeighborRoute(NodeId neighbor)
{
  RouteEntry& r = m_routes[neighbor];
  const Time now = m_sim.Now();
  if (!r.Usable(now) || r.hopCount != 1)
    {
      r.dest = neighbor;
      r.nextHop = neighbor;
      r.hopCount = 1;
      r.active = true;
    }
  r.expiry = std::max(r.expiry, now + m_params.activeRouteTimeout);
}

void
AodvNode::Refresh(NodeId dest, Time lifetime)
{
  auto it = m_routes.find(dest);
  if (it != m_routes.end() && it->second.Usable(m_sim.Now()))
    it->second.expiry = std::max(it->second.expiry, m_sim.Now() + lifetime);
}

void
AodvNode::AddPrecursor(NodeId dest, NodeId upstream)
{
  auto it = m_routes.find(dest);
  if (it == m_routes.end())
    return;
  auto& pre = it->second.precursors;
  if (std::find(pre.begin(), pre.end(), upstream) == pre.end())
    pre.push_back(upstream);
}

// ------------------------------------------------------------ reception

void
AodvNode::OnFrame(const Frame& frame, bool addressed)
{
  m_lastHeard[frame.sender] = m_sim.Now();
  if (!addressed)
    return;
  const Packet& p = *frame.packet;
  if (const auto* d = std::get_if<IpDatagram>(&p))
    {
      RefreshNeighborRoute(frame.sender);
      HandleDatagram(*d, frame.sender);
    }
  else if (const auto* rreq = std::get_if<Rreq>(&p))
    HandleRreq(*rreq, frame.sender);
  else if (const auto* rrep = std::get_if<Rrep>(&p))
    HandleRrep(*rrep, frame.sender);
  else if (const auto* rerr = std::get_if<Rerr>(&p))
    HandleRerr(*rerr, frame.sender);
  else if (const auto* hello = std::get_if<Hello>(&p))
    HandleHello(*hello, frame.sender);
}

} // namespace dafsim
