/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/content_store.hpp"
#include "dafsim/fib.hpp"
#include "dafsim/medium.hpp"
#include "dafsim/pit.hpp"
#include "dafsim/rng.hpp"
#include "dafsim/trace.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace dafsim {

class NdnNode;

/// How Data leaves a node once the PIT says where it is wanted.
enum class DataDispatch
{
  /// One downstream: unicast. Several: one broadcast.
  UnicastOrBroadcast,
  /// Any downstream: one broadcast.
  AlwaysBroadcast,
  /// One unicast per downstream.
  UnicastPerDownstream
};

class Strategy
{
public:
  virtual ~Strategy() = default;

  virtual const char* SchemeName() const = 0;

  /// @p ep is the previous hop, or kLocalFace for the node's own application.
  virtual void OnInterest(NdnNode& node, Interest interest, NodeId ep, bool viaBroadcast) = 0;

  virtual void OnData(NdnNode& node, Data data, NodeId from, bool viaBroadcast) = 0;

  /// Whether the local consumer should flag its next Interest as discovery.
  virtual bool WantsDiscovery(NdnNode& /*node*/, const Name& /*name*/, bool /*afterTimeout*/)
  {
    return false;
  }

  /// Run the periodic stale next-hop checker on this node's FIB.
  virtual bool PurgesStaleNextHops() const { return false; }
};

struct NdnNodeConfig
{
  std::size_t csCapacity = 200;
  Time checkerPeriod = 1.0;
  Time staleLifetime = 1.0;
  Time deadNonceLifetime = 6.0;
};

/**
 * NDN forwarder of one node: Content Store, PIT and FIB plus the plumbing
 * strategies use to move packets. Forwarding decisions live in Strategy.
 */
class NdnNode : public NetworkLayer
{
public:
  using AppSink = std::function<void(const Data& data, std::uint32_t hops)>;

  NdnNode(NodeId id, Simulator& sim, Medium& medium, std::unique_ptr<Strategy> strategy,
          NdnNodeConfig config, std::uint64_t seed, const TraceSink* trace = nullptr);

  void AddProducerPrefix(Name prefix) { m_producerPrefixes.push_back(std::move(prefix)); }
  void SetAppSink(AppSink sink) { m_appSink = std::move(sink); }

  /// Entry point for the local consumer application.
  void ExpressInterest(const Name& name, bool afterTimeout);

  void OnFrame(const Frame& frame, bool addressed) override;
  void Start() override;

  NodeId Id() const { return m_id; }
  Simulator& Sim() { return m_sim; }
  ContentStore& Cs() { return m_cs; }
  Pit& GetPit() { return m_pit; }
  Fib& GetFib() { return m_fib; }
  Strategy& GetStrategy() { return *m_strategy; }

  // --- pipeline pieces shared by the strategies ---

  /**
   * Loop check, Content Store, PIT insertion and local production. Returns
   * true when the Interest is new here and still needs forwarding.
   * Replies (cache hit or produced Data) go out with @p replyMode; they
   * carry the producer prefix when @p announce is set.
   */
  bool InterestPrologue(const Interest& interest, NodeId ep, bool announce, DataDispatch replyMode);

  /// Sends Data to the downstreams in @p where; data.hcFromSource is this node's distance.
  void DispatchData(const Data& data, const PitSatisfaction& where, DataDispatch mode);

  void SendInterest(const Interest& interest, NodeId dest);
  void SendData(const Data& data, NodeId dest);

  /// Starts the next-hop lifetime timer (srtt + 4 rttv) unless one is armed.
  void ArmNextHopTimer(const Name& prefix, NodeId nh);
  void CancelNextHopTimer(FibNextHop& hop);

  std::optional<Name> ProducedPrefix(const Name& name) const;

  void Trace(const char* action, const std::string& detail) const;
  bool Tracing() const { return m_trace != nullptr && *m_trace; }

private:
  void RunChecker();

  NodeId m_id;
  Simulator& m_sim;
  Medium& m_medium;
  std::unique_ptr<Strategy> m_strategy;
  NdnNodeConfig m_config;
  ContentStore m_cs;
  Pit m_pit;
  Fib m_fib;
  RngStream m_nonces;
  std::vector<Name> m_producerPrefixes;
  AppSink m_appSink;
  const TraceSink* m_trace;
};

} // namespace dafsim
