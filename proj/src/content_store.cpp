/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/content_store.hpp"

namespace dafsim {

const Data*
ContentStore::Lookup(const Name& name)
{
  auto it = m_index.find(name);
  if (it == m_index.end())
    return nullptr;
  m_entries.splice(m_entries.begin(), m_entries, it->second);
  return &it->second->data;
}

std::optional<Name>
ContentStore::Insert(const Data& data, Time now)
{
  if (m_capacity == 0)
    return std::nullopt;
  auto it = m_index.find(data.name);
  if (it != m_index.end())
    {
      it->second->data = data;
      it->second->insertedAt = now;
      m_entries.splice(m_entries.begin(), m_entries, it->second);
      return std::nullopt;
    }
  m_entries.push_front(Entry{data, now});
  m_index.emplace(data.name, m_entries.begin());
  if (m_entries.size() <= m_capacity)
    return std::nullopt;
  Name victim = std::move(m_entries.back().data.name);
  m_index.erase(victim);
  m_entries.pop_back();
  return victim;
}

std::vector<Name>
ContentStore::RecencyOrder() const
{
  std::vector<Name> out;
  out.reserve(m_entries.size());
  for (const auto& e : m_entries)
    out.push_back(e.data.name);
  return out;
}

} // namespace dafsim
