/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/fib.hpp"

#include <algorithm>

namespace dafsim {

FibEntry*
Fib::Match(const Name& name)
{
  for (std::size_t len = name.Size(); len >= 1; --len)
    {
      auto it = m_entries.find(name.Prefix(len));
      if (it != m_entries.end())
        return &it->second;
    }
  return nullptr;
}

FibNextHop*
Fib::Lookup(const Name& name, Time now, NodeId exclude)
{
  FibEntry* entry = Match(name);
  if (entry == nullptr)
    return nullptr;
  FibNextHop* best = nullptr;
  for (auto& hop : entry->nexthops)
    {
      if (hop.nh == exclude)
        continue;
      if (best == nullptr || hop.hc < best->hc ||
          (hop.hc == best->hc &&
           (hop.tData > best->tData || (hop.tData == best->tData && hop.nh < best->nh))))
        best = &hop;
    }
  if (best != nullptr)
    best->lastUse = now;
  return best;
}

FibEntry*
Fib::FindEntry(const Name& prefix)
{
  auto it = m_entries.find(prefix);
  return it == m_entries.end() ? nullptr : &it->second;
}

FibNextHop*
Fib::FindNextHop(const Name& prefix, NodeId nh)
{
  FibEntry* entry = FindEntry(prefix);
  if (entry == nullptr)
    return nullptr;
  auto it = std::find_if(entry->nexthops.begin(), entry->nexthops.end(),
                         [nh](const FibNextHop& h) { return h.nh == nh; });
  return it == entry->nexthops.end() ? nullptr : &*it;
}

FibNextHop&
Fib::Upsert(const Name& prefix, NodeId nh, bool* created)
{
  auto [it, inserted] = m_entries.try_emplace(prefix);
  FibEntry& entry = it->second;
  if (inserted)
    entry.prefix = prefix;
  auto hop = std::find_if(entry.nexthops.begin(), entry.nexthops.end(),
                          [nh](const FibNextHop& h) { return h.nh == nh; });
  if (created != nullptr)
    *created = hop == entry.nexthops.end();
  if (hop != entry.nexthops.end())
    return *hop;
  FibNextHop fresh;
  fresh.nh = nh;
  entry.nexthops.push_back(fresh);
  return entry.nexthops.back();
}

bool
Fib::Remove(const Name& prefix, NodeId nh)
{
  auto it = m_entries.find(prefix);
  if (it == m_entries.end())
    return false;
  auto& hops = it->second.nexthops;
  const auto before = hops.size();
  std::erase_if(hops, [nh](const FibNextHop& h) { return h.nh == nh; });
  const bool removed = hops.size() != before;
  if (hops.empty())
    m_entries.erase(it);
  return removed;
}

std::vector<std::pair<Name, NodeId>>
Fib::PurgeStale(Time now, Time staleLifetime, const Simulator& sim)
{
  std::vector<std::pair<Name, NodeId>> removed;
  for (auto it = m_entries.begin(); it != m_entries.end();)
    {
      auto& hops = it->second.nexthops;
      std::erase_if(hops, [&](const FibNextHop& h) {
        const bool stale = !sim.IsPending(h.pendingTimer) &&
                           now - std::max(h.tData, h.lastUse) > staleLifetime;
        if (stale)
          removed.emplace_back(it->first, h.nh);
        return stale;
      });
      if (hops.empty())
        it = m_entries.erase(it);
      else
        ++it;
    }
  return removed;
}

} // namespace dafsim
