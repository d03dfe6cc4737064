/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/name.hpp"

namespace dafsim {

Name::Name(std::initializer_list<std::string> components)
  : m_components(components)
{
  RebuildUri();
}

Name::Name(std::vector<std::string> components)
  : m_components(std::move(components))
{
  RebuildUri();
}

Name
Name::Parse(std::string_view uri)
{
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= uri.size())
    {
      const std::size_t next = uri.find('/', pos);
      const std::size_t end = next == std::string_view::npos ? uri.size() : next;
      if (end > pos)
        parts.emplace_back(uri.substr(pos, end - pos));
      if (next == std::string_view::npos)
        break;
      pos = next + 1;
    }
  return Name(std::move(parts));
}

Name
Name::Prefix(std::size_t n) const
{
  if (n >= m_components.size())
    return *this;
  return Name(std::vector<std::string>(m_components.begin(), m_components.begin() + n));
}

Name
Name::Append(std::string component) const
{
  auto parts = m_components;
  parts.push_back(std::move(component));
  return Name(std::move(parts));
}

bool
Name::IsPrefixOf(const Name& other) const
{
  if (m_components.size() > other.m_components.size())
    return false;
  for (std::size_t i = 0; i < m_components.size(); ++i)
    if (m_components[i] != other.m_components[i])
      return false;
  return true;
}

std::size_t
Name::WireLength() const
{
  std::size_t len = 0;
  for (const auto& c : m_components)
    len += c.size() + 1;
  return len;
}

void
Name::RebuildUri()
{
  if (m_components.empty())
    {
      m_uri = "/";
      return;
    }
  m_uri.clear();
  for (const auto& c : m_components)
    {
      m_uri += '/';
      m_uri += c;
    }
}

} // namespace dafsim
