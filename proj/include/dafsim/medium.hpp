/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/packet.hpp"
#include "dafsim/radio.hpp"
#include "dafsim/rng.hpp"
#include "dafsim/simulator.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <unordered_map>
#include <vector>

namespace dafsim {

struct Frame
{
  std::uint64_t id = 0;
  NodeId sender = 0;
  NodeId dest = kBroadcast;
  std::uint32_t size = 0;
  PacketPtr packet;
  Time txStart = 0.0;
  Time txEnd = 0.0;

  bool IsBroadcast() const { return dest == kBroadcast; }
};

enum class CarrierSense
{
  /// Busy while any node within range of the sender transmits.
  Sender,
  /// Busy while any node within range of the sender hears a transmission.
  Neighborhood
};

struct MacParams
{
  CarrierSense carrierSense = CarrierSense::Neighborhood;
  double bitRate = 11e6;
  Time phyOverhead = 192e-6;
  Time difs = 50e-6;
  Time slot = 20e-6;
  std::uint32_t cwMin = 31;
  /// Backoff draws for a unicast frame whose countdown keeps getting interrupted.
  std::uint32_t unicastAttempts = 3;
  /// Link-layer retransmissions of an unacknowledged unicast frame (0: no ACKs).
  std::uint32_t linkRetryLimit = 0;
  std::uint32_t cwMax = 1023;
  std::size_t queueCapacity = 500;
  Time maxQueueDelay = 0.5;
};

/**
 * Shared single-channel medium with a simplified CSMA/CA access scheme.
 *
 * Carrier sense and reception both use the unit-disk model. With
 * Neighborhood sensing a node also defers while any of its neighbors is
 * receiving, which keeps hidden senders off a common receiver; Sender
 * sensing only hears transmitters in range. A frame is lost at a receiver
 * whenever another audible frame overlaps it there, or the receiver itself
 * transmits during it. Unicast frames are retried up to linkRetryLimit
 * times when they were lost at the addressee (an idealized ACK).
 */
class Medium
{
public:
  /// @p addressed is true for broadcasts and for unicasts to this node.
  using ReceiveHandler = std::function<void(const Frame& frame, bool addressed)>;
  using TxObserver = std::function<void(const Frame& frame)>;

  Medium(Simulator& sim, MobilityModel& mobility, MacParams params, std::uint64_t seed);

  void SetReceiveHandler(NodeId node, ReceiveHandler handler);
  void SetTxObserver(TxObserver observer) { m_txObserver = std::move(observer); }

  /// Queues a frame for transmission. Returns false on a tail drop.
  bool Send(NodeId sender, NodeId dest, PacketPtr packet);

  Time Airtime(std::uint32_t bytes) const
  {
    return static_cast<double>(bytes) * 8.0 / m_params.bitRate + m_params.phyOverhead;
  }

  /// Nodes within range of @p node at the current instant.
  const std::vector<NodeId>& Neighbors(NodeId node);

  const MacParams& Params() const { return m_params; }
  std::uint64_t TxEvents() const { return m_txEvents; }
  std::uint64_t TxBytes() const { return m_txBytes; }
  std::uint64_t QueueDrops() const { return m_queueDrops; }
  std::uint64_t CollisionLosses() const { return m_collisionLosses; }

private:
  enum class Phase
  {
    Idle,
    Contending,
    Transmitting
  };

  struct Queued
  {
    NodeId dest;
    PacketPtr packet;
    Time enqueuedAt;
  };

  struct Reception
  {
    std::uint64_t frameId;
    bool intact;
  };

  struct Station
  {
    explicit Station(RngStream r)
      : rng(std::move(r))
    {
    }

    std::deque<Queued> queue;
    Phase phase = Phase::Idle;
    Time busyUntil = -1.0;
    Time countdownStart = 0.0;
    Time fireAt = 0.0;
    std::uint32_t remainingSlots = 0;
    std::uint32_t cw = 0;
    std::uint32_t attempts = 0;
    std::uint32_t linkRetries = 0;
    EventId access;
    std::vector<Reception> incoming;
    RngStream rng;
    ReceiveHandler handler;
  };

  struct InFlight
  {
    Frame frame;
    std::vector<NodeId> audience;
  };

  /// Stations whose carrier sense a transmission by @p sender with @p audience triggers.
  void SensingSet(NodeId sender, const std::vector<NodeId>& audience, std::vector<NodeId>& out);
  void StartAccess(NodeId node);
  void PlanCountdown(NodeId node);
  void OnCarrier(NodeId node, Time at);
  void Transmit(NodeId node);
  void FinishTransmission(std::uint64_t frameId);

  Simulator& m_sim;
  MobilityModel& m_mobility;
  MacParams m_params;
  std::vector<Station> m_stations;
  std::unordered_map<std::uint64_t, InFlight> m_inFlight;
  std::vector<std::vector<NodeId>> m_staticNeighbors;
  std::vector<std::vector<NodeId>> m_staticSensing;
  std::vector<NodeId> m_sensingScratch;
  std::vector<char> m_mark;
  std::vector<NodeId> m_scratch;
  TxObserver m_txObserver;
  std::uint64_t m_nextFrameId = 1;
  std::uint64_t m_txEvents = 0;
  std::uint64_t m_txBytes = 0;
  std::uint64_t m_queueDrops = 0;
  std::uint64_t m_collisionLosses = 0;
};

} // namespace dafsim
