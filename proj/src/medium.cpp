/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/medium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dafsim {

namespace {
// Tolerance for comparing slot boundaries computed along different paths.
constexpr double kSlotEps = 1e-9;
} // namespace

Medium::Medium(Simulator& sim, MobilityModel& mobility, MacParams params, std::uint64_t seed)
  : m_sim(sim),
    m_mobility(mobility),
    m_params(params)
{
  const std::uint32_t n = mobility.NodeCount();
  m_stations.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i)
    m_stations.emplace_back(RngStream(seed, "mac/" + std::to_string(i)));

  if (mobility.IsStatic())
    {
      const double r = mobility.Area().radioRadius;
      m_staticNeighbors.resize(n);
      for (NodeId a = 0; a < n; ++a)
        for (NodeId b = 0; b < n; ++b)
          if (a != b && InRange(mobility.PositionAt(a, 0.0), mobility.PositionAt(b, 0.0), r))
            m_staticNeighbors[a].push_back(b);
      if (m_params.carrierSense == CarrierSense::Neighborhood)
        {
          m_staticSensing.resize(n);
          for (NodeId a = 0; a < n; ++a)
            {
              std::vector<char> mark(n, 0);
              for (NodeId b : m_staticNeighbors[a])
                {
                  mark[b] = 1;
                  for (NodeId c : m_staticNeighbors[b])
                    mark[c] = 1;
                }
              mark[a] = 0;
              for (NodeId i = 0; i < n; ++i)
                if (mark[i])
                  m_staticSensing[a].push_back(i);
            }
        }
    }
}

void
Medium::SensingSet(NodeId sender, const std::vector<NodeId>& audience, std::vector<NodeId>& out)
{
  out.clear();
  if (m_params.carrierSense == CarrierSense::Sender)
    {
      out = audience;
      return;
    }
  if (!m_staticSensing.empty())
    {
      out = m_staticSensing[sender];
      return;
    }
  // Everyone in range of a node that hears the sender, sorted for a stable event order.
  const std::vector<NodeId> direct = audience;
  m_mark.assign(m_stations.size(), 0);
  m_mark[sender] = 1;
  for (NodeId a : direct)
    {
      m_mark[a] = 1;
      for (NodeId b : Neighbors(a))
        m_mark[b] = 1;
    }
  m_mark[sender] = 0;
  for (NodeId i = 0; i < m_mark.size(); ++i)
    if (m_mark[i])
      out.push_back(i);
}

void
Medium::SetReceiveHandler(NodeId node, ReceiveHandler handler)
{
  m_stations.at(node).handler = std::move(handler);
}

const std::vector<NodeId>&
Medium::Neighbors(NodeId node)
{
  if (!m_staticNeighbors.empty())
    return m_staticNeighbors[node];
  const Time now = m_sim.Now();
  const double r = m_mobility.Area().radioRadius;
  m_scratch.clear();
  const NodePosition self = m_mobility.PositionAt(node, now);
  for (NodeId other = 0; other < m_stations.size(); ++other)
    if (other != node && InRange(self, m_mobility.PositionAt(other, now), r))
      m_scratch.push_back(other);
  return m_scratch;
}

bool
Medium::Send(NodeId sender, NodeId dest, PacketPtr packet)
{
  Station& st = m_stations.at(sender);
  if (st.queue.size() >= m_params.queueCapacity)
    {
      ++m_queueDrops;
      return false;
    }
  st.queue.push_back(Queued{dest, std::move(packet), m_sim.Now()});
  if (st.phase == Phase::Idle)
    StartAccess(sender);
  return true;
}

void
Medium::StartAccess(NodeId node)
{
  Station& st = m_stations[node];
  const Time now = m_sim.Now();
  while (!st.queue.empty() && now - st.queue.front().enqueuedAt > m_params.maxQueueDelay)
    {
      st.queue.pop_front();
      ++m_queueDrops;
    }
  if (st.queue.empty())
    {
      st.phase = Phase::Idle;
      return;
    }
  st.cw = m_params.cwMin;
  // Medium idle for at least DIFS: access immediately.
  if (st.busyUntil <= now - m_params.difs)
    {
      Transmit(node);
      return;
    }
  st.attempts = 1;
  st.remainingSlots = static_cast<std::uint32_t>(st.rng.UniformInt(0, st.cw));
  PlanCountdown(node);
}

void
Medium::PlanCountdown(NodeId node)
{
  Station& st = m_stations[node];
  const Time now = m_sim.Now();
  st.phase = Phase::Contending;
  st.countdownStart = std::max(now, st.busyUntil + m_params.difs);
  st.fireAt = st.countdownStart + st.remainingSlots * m_params.slot;
  st.access = m_sim.ScheduleAt(st.fireAt, [this, node] { Transmit(node); });
}

void
Medium::OnCarrier(NodeId node, Time at)
{
  Station& st = m_stations[node];
  if (st.phase != Phase::Contending)
    return;
  // A carrier that starts within the final slot is not sensed in time.
  if (st.fireAt - at < m_params.slot - kSlotEps)
    return;
  if (at > st.countdownStart)
    {
      const auto consumed =
        static_cast<std::uint32_t>(std::floor((at - st.countdownStart) / m_params.slot + kSlotEps));
      st.remainingSlots -= std::min(consumed, st.remainingSlots);
    }
  if (st.queue.front().dest != kBroadcast && st.attempts < m_params.unicastAttempts)
    {
      ++st.attempts;
      st.cw = st.cw * 2 + 1;
      st.remainingSlots = static_cast<std::uint32_t>(st.rng.UniformInt(0, st.cw));
    }
  m_sim.Cancel(st.access);
  PlanCountdown(node);
}

void
Medium::Transmit(NodeId node)
{
  Station& st = m_stations[node];
  const Time now = m_sim.Now();
  const Queued& head = st.queue.front();

  Frame frame;
  frame.id = m_nextFrameId++;
  frame.sender = node;
  frame.dest = head.dest;
  frame.packet = head.packet;
  frame.size = WireSize(*head.packet);
  frame.txStart = now;
  frame.txEnd = now + Airtime(frame.size);

  st.phase = Phase::Transmitting;
  st.busyUntil = std::max(st.busyUntil, frame.txEnd);
  for (auto& rx : st.incoming)
    rx.intact = false; // half duplex

  ++m_txEvents;
  m_txBytes += frame.size;
  if (m_txObserver)
    m_txObserver(frame);

  InFlight flight{frame, Neighbors(node)};
  for (NodeId r : flight.audience)
    {
      Station& rs = m_stations[r];
      bool intact = rs.phase != Phase::Transmitting;
      if (!rs.incoming.empty())
        {
          intact = false;
          for (auto& rx : rs.incoming)
            rx.intact = false;
        }
      rs.incoming.push_back(Reception{frame.id, intact});
    }
  SensingSet(node, flight.audience, m_sensingScratch);
  for (NodeId r : m_sensingScratch)
    {
      m_stations[r].busyUntil = std::max(m_stations[r].busyUntil, frame.txEnd);
      OnCarrier(r, now);
    }
  const std::uint64_t id = frame.id;
  m_inFlight.emplace(id, std::move(flight));
  m_sim.ScheduleAt(frame.txEnd, [this, id] { FinishTransmission(id); });
}

void
Medium::FinishTransmission(std::uint64_t frameId)
{
  auto node = m_inFlight.extract(frameId);
  InFlight& flight = node.mapped();
  const Frame& frame = flight.frame;
  const Time now = m_sim.Now();
  const double radius = m_mobility.Area().radioRadius;

  std::vector<NodeId> delivered;
  delivered.reserve(flight.audience.size());
  const NodePosition senderPos = m_mobility.PositionAt(frame.sender, now);
  for (NodeId r : flight.audience)
    {
      auto& incoming = m_stations[r].incoming;
      auto it = std::find_if(incoming.begin(), incoming.end(),
                             [&](const Reception& rx) { return rx.frameId == frameId; });
      bool intact = false;
      if (it != incoming.end())
        {
          intact = it->intact;
          incoming.erase(it);
        }
      if (!intact)
        {
          ++m_collisionLosses;
          continue;
        }
      if (m_staticNeighbors.empty() &&
          !InRange(senderPos, m_mobility.PositionAt(r, now), radius))
        continue;
      delivered.push_back(r);
    }

  Station& st = m_stations[frame.sender];
  const bool acked = frame.IsBroadcast() ||
                     std::find(delivered.begin(), delivered.end(), frame.dest) != delivered.end();
  if (!acked && st.linkRetries < m_params.linkRetryLimit)
    {
      ++st.linkRetries;
      st.cw = std::min(st.cw * 2 + 1, m_params.cwMax);
      st.remainingSlots = static_cast<std::uint32_t>(st.rng.UniformInt(0, st.cw));
      PlanCountdown(frame.sender);
    }
  else
    {
      st.linkRetries = 0;
      st.queue.pop_front();
      st.phase = Phase::Idle;
      StartAccess(frame.sender);
    }

  for (NodeId r : delivered)
    {
      const auto& handler = m_stations[r].handler;
      if (handler)
        handler(frame, frame.IsBroadcast() || frame.dest == r);
    }
}

} // namespace dafsim
