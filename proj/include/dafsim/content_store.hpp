/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/name.hpp"
#include "dafsim/packet.hpp"

#include <cstddef>
#include <list>
#include <optional>
#include <unordered_map>
#include <vector>

namespace dafsim {

/// Exact-name packet cache with least-recently-used eviction.
class ContentStore
{
public:
  explicit ContentStore(std::size_t capacity)
    : m_capacity(capacity)
  {
  }

  /// Returns the cached Data on an exact match and marks it most recently used.
  const Data* Lookup(const Name& name);

  /**
   * Caches @p data (solicited or not). Re-inserting a cached name refreshes
   * it. Returns the evicted name, if any. No-op when capacity is zero.
   */
  std::optional<Name> Insert(const Data& data, Time now);

  std::size_t Size() const { return m_entries.size(); }
  std::size_t Capacity() const { return m_capacity; }
  bool Contains(const Name& name) const { return m_index.count(name) != 0; }

  /// Cached names from most to least recently used.
  std::vector<Name> RecencyOrder() const;

private:
  struct Entry
  {
    Data data;
    Time insertedAt;
  };

  std::size_t m_capacity;
  std::list<Entry> m_entries; // front = most recent
  std::unordered_map<Name, std::list<Entry>::iterator, NameHash> m_index;
};

} // namespace dafsim
