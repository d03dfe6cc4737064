/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/radio.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dafsim {

AreaSpec
AreaSpec::Preset50()
{
  return AreaSpec{10, 5, 100.0, 1500.0, 1000.0, 125.0};
}

AreaSpec
AreaSpec::Preset100()
{
  return AreaSpec{10, 10, 100.0, 1500.0, 1500.0, 125.0};
}

AreaSpec
AreaSpec::ForNodeCount(std::uint32_t nodes)
{
  if (nodes == 50)
    return Preset50();
  if (nodes == 100)
    return Preset100();
  throw PlacementError("no preset area for " + std::to_string(nodes) + " nodes");
}

std::vector<NodePosition>
PlaceGrid(std::uint32_t count, const AreaSpec& area, RngStream& rng)
{
  const std::uint32_t capacity = area.Capacity();
  if (count > capacity)
    throw PlacementError("grid holds " + std::to_string(capacity) + " nodes, asked for " +
                         std::to_string(count));
  std::vector<std::uint32_t> slots(capacity);
  for (std::uint32_t i = 0; i < capacity; ++i)
    slots[i] = i;
  // Fisher-Yates with the stream's own integer draws.
  for (std::uint32_t i = capacity; i > 1; --i)
    {
      const auto j = static_cast<std::uint32_t>(rng.UniformInt(0, i - 1));
      std::swap(slots[i - 1], slots[j]);
    }
  std::vector<NodePosition> out(count);
  for (std::uint32_t n = 0; n < count; ++n)
    {
      const std::uint32_t slot = slots[n];
      out[n].node = n;
      out[n].x = (slot % area.gridCols) * area.spacing;
      out[n].y = (slot / area.gridCols) * area.spacing;
    }
  return out;
}

namespace {

// Maps an unfolded coordinate into [0, extent]; reports whether the
// direction is mirrored after an odd number of wall hits.
double
Fold(double u, double extent, bool& mirrored)
{
  if (extent <= 0.0)
    {
      mirrored = false;
      return 0.0;
    }
  const double period = 2.0 * extent;
  double m = std::fmod(u, period);
  if (m < 0.0)
    m += period;
  if (m <= extent)
    {
      mirrored = false;
      return m;
    }
  mirrored = true;
  return period - m;
}

void
Advance(NodePosition& pos, Time to, const AreaSpec& area)
{
  const double dt = to - pos.at;
  if (dt <= 0.0)
    return;
  double vx = pos.speed * std::cos(pos.heading);
  double vy = pos.speed * std::sin(pos.heading);
  bool flipX = false;
  bool flipY = false;
  pos.x = Fold(pos.x + vx * dt, area.areaWidth, flipX);
  pos.y = Fold(pos.y + vy * dt, area.areaHeight, flipY);
  if (flipX)
    vx = -vx;
  if (flipY)
    vy = -vy;
  if (flipX || flipY)
    pos.heading = std::atan2(vy, vx);
  pos.at = to;
}

} // namespace

NodePosition
StepMobility(NodePosition pos, Time now, const AreaSpec& area, RngStream& rng)
{
  if (pos.speed <= 0.0 || now <= pos.at)
    {
      if (pos.speed <= 0.0)
        pos.at = std::max(pos.at, now);
      return pos;
    }
  while (now >= pos.legEnd)
    {
      Advance(pos, pos.legEnd, area);
      pos.heading = rng.Uniform(0.0, 2.0 * std::numbers::pi);
      pos.legEnd += kMobilityLeg;
    }
  Advance(pos, now, area);
  return pos;
}

MobilityModel::MobilityModel(std::vector<NodePosition> initial, AreaSpec area, std::uint64_t seed)
  : m_area(area),
    m_positions(std::move(initial))
{
  m_streams.reserve(m_positions.size());
  for (std::size_t i = 0; i < m_positions.size(); ++i)
    {
      m_streams.emplace_back(seed, "mobility/" + std::to_string(i));
      auto& p = m_positions[i];
      if (p.speed > 0.0)
        {
          m_static = false;
          p.heading = m_streams.back().Uniform(0.0, 2.0 * std::numbers::pi);
          p.legEnd = p.at + kMobilityLeg;
        }
    }
}

const NodePosition&
MobilityModel::PositionAt(NodeId node, Time t)
{
  auto& p = m_positions.at(node);
  if (!m_static && t > p.at)
    p = StepMobility(p, t, m_area, m_streams[node]);
  return p;
}

} // namespace dafsim
