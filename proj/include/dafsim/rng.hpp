/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace dafsim {

/// SplitMix64 finalizer; used to derive independent seeds.
constexpr std::uint64_t
Mix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a over the bytes of @p s.
constexpr std::uint64_t
HashLabel(std::string_view s)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s)
    {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
  return h;
}

/// Seed for run @p runIndex of an experiment with master seed @p masterSeed.
constexpr std::uint64_t
DeriveRunSeed(std::uint64_t masterSeed, std::uint64_t runIndex)
{
  return Mix64(Mix64(masterSeed) ^ Mix64(runIndex + 0x5bd1e995ULL));
}

/**
 * A named pseudo-random stream. The state depends only on
 * (masterSeed, streamId), so adding a stream never perturbs another.
 *
 * Draws are mapped from raw mt19937_64 output by hand because the
 * standard distributions are not specified bit-for-bit across
 * library implementations.
 */
class RngStream
{
public:
  RngStream(std::uint64_t masterSeed, std::string_view streamId)
    : m_id(streamId),
      m_engine(Mix64(masterSeed ^ Mix64(HashLabel(streamId))))
  {
  }

  const std::string& Id() const { return m_id; }

  /// Uniform real in [lo, hi); returns lo when lo == hi. Throws on lo > hi.
  double Uniform(double lo, double hi);

  /// Uniform integer in [lo, hi] inclusive.
  std::uint64_t UniformInt(std::uint64_t lo, std::uint64_t hi);

  std::uint32_t Next32() { return static_cast<std::uint32_t>(m_engine() >> 32); }

private:
  std::string m_id;
  std::mt19937_64 m_engine;
};

} // namespace dafsim
