/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace dafsim {

double
RngStream::Uniform(double lo, double hi)
{
  if (lo > hi)
    throw std::invalid_argument("RngStream::Uniform: lo > hi");
  if (lo == hi)
    return lo;
  const double unit = static_cast<double>(m_engine() >> 11) * 0x1.0p-53;
  double v = lo + (hi - lo) * unit;
  if (v >= hi)
    v = std::nextafter(hi, lo);
  return v;
}

std::uint64_t
RngStream::UniformInt(std::uint64_t lo, std::uint64_t hi)
{
  if (lo > hi)
    throw std::invalid_argument("RngStream::UniformInt: lo > hi");
  const std::uint64_t span = hi - lo;
  if (span == UINT64_MAX)
    return m_engine();
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
  std::uint64_t x;
  do
    {
      x = m_engine();
    }
  while (x >= limit);
  return lo + x % range;
}

} // namespace dafsim
