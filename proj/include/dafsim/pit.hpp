/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/name.hpp"
#include "dafsim/packet.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <vector>

namespace dafsim {

/// One downstream request: <nonce, ep, T(R_i)>.
struct PitRecord
{
  std::uint32_t nonce = 0;
  NodeId ep = 0;
  Time arrival = 0.0;
};

struct PitEntry
{
  Name name;
  std::vector<PitRecord> records;
  Time expiry = 0.0;
  /// When this node last sent the Interest upstream; the RTT sample origin.
  std::optional<Time> forwardedAt;
};

enum class InterestVerdict
{
  New,
  Aggregated,
  DuplicateNonce
};

enum class Downstream
{
  Unicast,
  Broadcast,
  NoEntry
};

struct PitSatisfaction
{
  Downstream decision = Downstream::NoEntry;
  /// Valid when decision == Unicast.
  NodeId ep = 0;
  /// Distinct remote downstreams, in arrival order.
  std::vector<NodeId> eps;
  /// The local application face asked for this name too.
  bool local = false;
  std::optional<Time> forwardedAt;
};

/**
 * Pending Interest Table with nonce-based loop suppression.
 *
 * Nonces of satisfied, expired, and answered Interests are remembered for
 * a fixed window so echoes arriving after the entry is gone are still
 * recognised as duplicates.
 */
class Pit
{
public:
  explicit Pit(Time deadNonceLifetime = 6.0)
    : m_deadNonceLifetime(deadNonceLifetime)
  {
  }

  /**
   * New: entry created, or a downstream that already had a record sent a
   * fresh nonce (a retransmission); the caller forwards.
   * Aggregated: another downstream's record appended; the caller stops.
   * DuplicateNonce: (name, nonce) already seen; the caller drops.
   */
  InterestVerdict ProcessInterest(const Interest& interest, NodeId ep, Time now);

  bool IsDuplicate(const Name& name, std::uint32_t nonce, Time now) const;
  void RememberNonce(const Name& name, std::uint32_t nonce, Time now);

  /// Unexpired entry for @p name, or nullptr.
  PitEntry* Find(const Name& name, Time now);

  void MarkForwarded(const Name& name, Time now);

  /// Consumes the entry for @p name and reports where Data should go.
  PitSatisfaction Satisfy(const Name& name, Time now);

  /// Drops expired entries and forgotten nonces.
  void Purge(Time now);

  std::size_t Size() const { return m_entries.size(); }

private:
  struct NonceKey
  {
    Name name;
    std::uint32_t nonce;
    friend bool operator==(const NonceKey&, const NonceKey&) = default;
  };
  struct NonceKeyHash
  {
    std::size_t operator()(const NonceKey& k) const
    {
      return NameHash{}(k.name) ^ (static_cast<std::size_t>(k.nonce) * 0x9e3779b97f4a7c15ULL);
    }
  };

  void Retire(const PitEntry& entry, Time now);

  Time m_deadNonceLifetime;
  std::unordered_map<Name, PitEntry, NameHash> m_entries;
  std::unordered_map<NonceKey, Time, NonceKeyHash> m_deadNonces;
  std::deque<std::pair<Time, NonceKey>> m_deadNonceOrder;
};

} // namespace dafsim
