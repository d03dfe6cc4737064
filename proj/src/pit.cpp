/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/pit.hpp"

#include <algorithm>

namespace dafsim {

InterestVerdict
Pit::ProcessInterest(const Interest& interest, NodeId ep, Time now)
{
  if (IsDuplicate(interest.name, interest.nonce, now))
    return InterestVerdict::DuplicateNonce;
  RememberNonce(interest.name, interest.nonce, now);

  const Time expiry = now + interest.lifetime;
  PitEntry* entry = Find(interest.name, now);
  if (entry == nullptr)
    {
      PitEntry fresh;
      fresh.name = interest.name;
      fresh.records.push_back(PitRecord{interest.nonce, ep, now});
      fresh.expiry = expiry;
      m_entries.insert_or_assign(interest.name, std::move(fresh));
      return InterestVerdict::New;
    }

  entry->expiry = std::max(entry->expiry, expiry);
  auto same = std::find_if(entry->records.begin(), entry->records.end(),
                           [ep](const PitRecord& r) { return r.ep == ep; });
  if (same != entry->records.end())
    {
      same->nonce = interest.nonce;
      same->arrival = now;
      return InterestVerdict::New;
    }
  entry->records.push_back(PitRecord{interest.nonce, ep, now});
  return InterestVerdict::Aggregated;
}

bool
Pit::IsDuplicate(const Name& name, std::uint32_t nonce, Time now) const
{
  auto it = m_deadNonces.find(NonceKey{name, nonce});
  return it != m_deadNonces.end() && it->second > now;
}

void
Pit::RememberNonce(const Name& name, std::uint32_t nonce, Time now)
{
  NonceKey key{name, nonce};
  const Time until = now + m_deadNonceLifetime;
  m_deadNonces.insert_or_assign(key, until);
  m_deadNonceOrder.emplace_back(until, std::move(key));
}

PitEntry*
Pit::Find(const Name& name, Time now)
{
  auto it = m_entries.find(name);
  if (it == m_entries.end())
    return nullptr;
  if (it->second.expiry <= now)
    {
      m_entries.erase(it);
      return nullptr;
    }
  return &it->second;
}

void
Pit::MarkForwarded(const Name& name, Time now)
{
  if (PitEntry* e = Find(name, now))
    e->forwardedAt = now;
}

PitSatisfaction
Pit::Satisfy(const Name& name, Time now)
{
  PitSatisfaction out;
  PitEntry* entry = Find(name, now);
  if (entry == nullptr)
    return out;
  out.forwardedAt = entry->forwardedAt;
  for (const auto& r : entry->records)
    {
      if (r.ep == kLocalFace)
        out.local = true;
      else if (std::find(out.eps.begin(), out.eps.end(), r.ep) == out.eps.end())
        out.eps.push_back(r.ep);
    }
  if (out.eps.size() == 1)
    {
      out.decision = Downstream::Unicast;
      out.ep = out.eps.front();
    }
  else if (out.eps.size() >= 2)
    out.decision = Downstream::Broadcast;
  m_entries.erase(name);
  return out;
}

void
Pit::Purge(Time now)
{
  std::erase_if(m_entries, [now](const auto& kv) { return kv.second.expiry <= now; });
  while (!m_deadNonceOrder.empty() && m_deadNonceOrder.front().first <= now)
    {
      auto& [until, key] = m_deadNonceOrder.front();
      auto it = m_deadNonces.find(key);
      if (it != m_deadNonces.end() && it->second <= now)
        m_deadNonces.erase(it);
      m_deadNonceOrder.pop_front();
    }
}

} // namespace dafsim
