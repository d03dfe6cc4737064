/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/ndn_node.hpp"

#include <memory>
#include <string_view>

namespace dafsim {

/**
 * Data-centric ad-hoc forwarding.
 *
 * Interest: FIB hit -> unicast to the closest next-hop and arm its lifetime
 * timer; FIB miss -> broadcast. Data from a neighbor is positive feedback
 * (creates or refreshes the next-hop and its RTT estimate); a lifetime
 * expiry is negative feedback and silently removes the next-hop.
 */
class DafStrategy : public Strategy
{
public:
  const char* SchemeName() const override { return "daf"; }
  void OnInterest(NdnNode& node, Interest interest, NodeId ep, bool viaBroadcast) override;
  void OnData(NdnNode& node, Data data, NodeId from, bool viaBroadcast) override;
  bool PurgesStaleNextHops() const override { return true; }
};

/// Broadcasts every Interest and every Data; the FIB is never consulted.
class FloodingStrategy : public Strategy
{
public:
  const char* SchemeName() const override { return "flooding"; }
  void OnInterest(NdnNode& node, Interest interest, NodeId ep, bool viaBroadcast) override;
  void OnData(NdnNode& node, Data data, NodeId from, bool viaBroadcast) override;
};

/**
 * Self-learning: only consumers originate discovery (broadcast) Interests;
 * relays flood discovery Interests and drop plain Interests on a FIB miss.
 * Data comes back hop by hop as unicast and teaches the prefix to every
 * relay it crosses.
 */
class SelfLearningStrategy : public Strategy
{
public:
  const char* SchemeName() const override { return "self-learning"; }
  void OnInterest(NdnNode& node, Interest interest, NodeId ep, bool viaBroadcast) override;
  void OnData(NdnNode& node, Data data, NodeId from, bool viaBroadcast) override;
  bool WantsDiscovery(NdnNode& node, const Name& name, bool afterTimeout) override;
};

/// "daf", "flooding" or "self-learning"; throws std::invalid_argument otherwise.
std::unique_ptr<Strategy> MakeStrategy(std::string_view scheme);

} // namespace dafsim
