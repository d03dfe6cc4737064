/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/name.hpp"
#include "dafsim/packet.hpp"
#include "dafsim/rtt_estimator.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace dafsim {

/// <nh_p, hc, T(D_i), RTT_i, SRTT(nh_p), RTTV(nh_p)> plus timer bookkeeping.
struct FibNextHop
{
  NodeId nh = 0;
  std::uint32_t hc = 0;
  Time tData = 0.0;
  Time lastRtt = 0.0;
  RttEstimate rtt;
  /// Armed while a unicast Interest through this hop awaits Data.
  EventId pendingTimer;
  Time lastUse = 0.0;
};

struct FibEntry
{
  Name prefix;
  std::vector<FibNextHop> nexthops;
};

class Fib
{
public:
  /**
   * Longest-prefix match on @p name, then the closest next-hop (minimum hc;
   * ties go to the most recent tData, then the lower address). Hops equal to
   * @p exclude are skipped. Records lastUse on the chosen hop.
   */
  FibNextHop* Lookup(const Name& name, Time now, NodeId exclude = kBroadcast);

  /// Longest matching entry, without touching any hop.
  FibEntry* Match(const Name& name);

  FibEntry* FindEntry(const Name& prefix);
  FibNextHop* FindNextHop(const Name& prefix, NodeId nh);

  /// Returns the hop for (prefix, nh), creating it if needed.
  FibNextHop& Upsert(const Name& prefix, NodeId nh, bool* created = nullptr);

  bool Remove(const Name& prefix, NodeId nh);
  void RemoveEntry(const Name& prefix) { m_entries.erase(prefix); }

  /**
   * Drops hops with no armed timer that have been neither refreshed by Data
   * nor used for longer than @p staleLifetime. Empty entries are deleted.
   */
  std::vector<std::pair<Name, NodeId>> PurgeStale(Time now, Time staleLifetime,
                                                  const Simulator& sim);

  std::size_t EntryCount() const { return m_entries.size(); }
  const std::map<Name, FibEntry>& Entries() const { return m_entries; }

private:
  std::map<Name, FibEntry> m_entries;
};

} // namespace dafsim
