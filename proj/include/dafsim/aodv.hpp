/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/medium.hpp"
#include "dafsim/rng.hpp"
#include "dafsim/trace.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

namespace dafsim {

/// RFC 3561 defaults for the constants the comparison needs.
struct AodvParams
{
  Time helloInterval = 1.0;
  std::uint32_t allowedHelloLoss = 2;
  Time activeRouteTimeout = 3.0;
  std::uint32_t rreqRetries = 2;
  Time nodeTraversalTime = 0.04;
  std::uint32_t netDiameter = 35;
  Time rreqIdCacheLifetime = 6.0;
  std::size_t bufferCapacity = 64;

  Time NetTraversalTime() const { return 2.0 * nodeTraversalTime * netDiameter; }
  Time MyRouteTimeout() const { return 2.0 * activeRouteTimeout; }
  Time NeighborLifetime() const { return allowedHelloLoss * helloInterval; }
};

struct RouteEntry
{
  NodeId dest = 0;
  NodeId nextHop = 0;
  std::uint32_t hopCount = 0;
  std::uint32_t destSeq = 0;
  bool validSeq = false;
  Time expiry = 0.0;
  bool active = false;
  std::vector<NodeId> precursors; // upstream neighbors that forward through this route

  bool Usable(Time now) const { return active && expiry > now; }
};

/**
 * IP forwarding with AODV route discovery and maintenance: network-wide
 * RREQ flood (no expanding ring), unicast RREP along the reverse path,
 * HELLO-based liveness and RERR on link loss. No local repair.
 */
class AodvNode : public NetworkLayer
{
public:
  using AppSink = std::function<void(const IpDatagram& datagram)>;

  AodvNode(NodeId id, Simulator& sim, Medium& medium, AodvParams params, std::uint64_t seed,
           const TraceSink* trace = nullptr);

  void SetAppSink(AppSink sink) { m_appSink = std::move(sink); }
  /// Answer requests addressed to this node with a 512-byte response.
  void SetResponder(bool responder) { m_responder = responder; }

  /// Sends over an active route, or buffers and starts route discovery.
  void SendFromApp(IpDatagram datagram);

  void OnFrame(const Frame& frame, bool addressed) override;
  void Start() override;

  NodeId Id() const { return m_id; }
  const RouteEntry* FindRoute(NodeId dest) const;
  bool HasActiveRoute(NodeId dest) const;
  const std::map<NodeId, RouteEntry>& Routes() const { return m_routes; }
  std::size_t BufferedFor(NodeId dest) const;
  std::uint64_t DataDrops() const { return m_dataDrops; }

private:
  struct Discovery
  {
    std::uint32_t retries = 0;
    EventId timer;
  };

  void SendOrDiscover(IpDatagram datagram);
  void StartDiscovery(NodeId dest);
  void BroadcastRreq(NodeId dest);
  void OnDiscoveryTimeout(NodeId dest);
  void DrainBuffer(NodeId dest);

  void HandleDatagram(IpDatagram datagram, NodeId from);
  void HandleRreq(Rreq rreq, NodeId from);
  void HandleRrep(const Rrep& rrep, NodeId from);
  void HandleRerr(const Rerr& rerr, NodeId from);
  void HandleHello(const Hello& hello, NodeId from);

  void HelloTick();
  void CheckLinks();
  /// Invalidates every route through @p neighbor and floods a RERR if any was active.
  void BreakLink(NodeId neighbor);
  bool NeighborAlive(NodeId neighbor) const;
  void RefreshNeighborRoute(NodeId neighbor);
  void Refresh(NodeId dest, Time lifetime);
  void AddPrecursor(NodeId dest, NodeId upstream);

  void Transmit(NodeId dest, Packet packet, const char* action);
  void Trace(const char* action, const std::string& detail) const;

  NodeId m_id;
  Simulator& m_sim;
  Medium& m_medium;
  AodvParams m_params;
  RngStream m_rng;
  const TraceSink* m_trace;
  AppSink m_appSink;
  bool m_responder = false;

  std::uint32_t m_seq = 0;
  std::uint32_t m_rreqId = 0;
  Time m_lastBroadcast = -1e9;
  std::map<NodeId, RouteEntry> m_routes;
  std::map<std::pair<NodeId, std::uint32_t>, Time> m_rreqSeen;
  std::unordered_map<NodeId, Time> m_lastHeard;
  std::map<NodeId, std::deque<IpDatagram>> m_buffer;
  std::map<NodeId, Discovery> m_discoveries;
  std::uint64_t m_dataDrops = 0;
};

} // namespace dafsim
