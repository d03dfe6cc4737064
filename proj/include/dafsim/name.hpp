/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace dafsim {

/**
 * Hierarchical content name, e.g. /A/seq42 = {"A", "seq42"}.
 *
 * The URI form is cached because names are hashed on every table lookup.
 */
class Name
{
public:
  Name() = default;
  Name(std::initializer_list<std::string> components);
  explicit Name(std::vector<std::string> components);

  /// Parses "/a/b/c". Empty components are skipped.
  static Name Parse(std::string_view uri);

  std::size_t Size() const { return m_components.size(); }
  bool Empty() const { return m_components.empty(); }
  const std::string& At(std::size_t i) const { return m_components.at(i); }
  const std::vector<std::string>& Components() const { return m_components; }

  /// First @p n components (all of them if n >= Size()).
  Name Prefix(std::size_t n) const;

  Name Append(std::string component) const;

  bool IsPrefixOf(const Name& other) const;

  const std::string& ToUri() const { return m_uri; }

  /// Encoded size: one length byte per component plus the bytes themselves.
  std::size_t WireLength() const;

  friend bool operator==(const Name& a, const Name& b) { return a.m_uri == b.m_uri; }
  friend std::strong_ordering operator<=>(const Name& a, const Name& b)
  {
    return a.m_components <=> b.m_components;
  }

private:
  void RebuildUri();

  std::vector<std::string> m_components;
  std::string m_uri = "/";
};

struct NameHash
{
  std::size_t operator()(const Name& n) const { return std::hash<std::string>{}(n.ToUri()); }
};

} // namespace dafsim
