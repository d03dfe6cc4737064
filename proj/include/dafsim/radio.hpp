/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/packet.hpp"
#include "dafsim/rng.hpp"
#include "dafsim/simulator.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dafsim {

/// Grid layout and deployment area. The grid is anchored at (0, 0).
struct AreaSpec
{
  std::uint32_t gridCols = 10;
  std::uint32_t gridRows = 5;
  double spacing = 100.0;
  double areaWidth = 1500.0;
  double areaHeight = 1000.0;
  double radioRadius = 125.0;

  std::uint32_t Capacity() const { return gridCols * gridRows; }

  /// 10x5 grid (900 m x 400 m) in a 1500 m x 1000 m area.
  static AreaSpec Preset50();
  /// 10x10 grid (900 m x 900 m) in a 1500 m x 1500 m area.
  static AreaSpec Preset100();
  /// Preset50/Preset100 by node count; throws for other counts.
  static AreaSpec ForNodeCount(std::uint32_t nodes);
};

constexpr Time kMobilityLeg = 5.0;

struct NodePosition
{
  NodeId node = 0;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0; // radians
  double speed = 0.0;   // m/s
  Time legEnd = kMobilityLeg;
  /// Instant at which (x, y) is valid.
  Time at = 0.0;
};

class PlacementError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/**
 * Puts @p count nodes on distinct grid intersections. The node-to-
 * intersection assignment is a random permutation drawn from @p rng.
 */
std::vector<NodePosition> PlaceGrid(std::uint32_t count, const AreaSpec& area, RngStream& rng);

/**
 * Advances a random-walk node to @p now. Headings are redrawn uniformly
 * at every leg boundary; the walk reflects off the area edges.
 * A speed of zero never moves the node and never consumes draws.
 */
NodePosition StepMobility(NodePosition pos, Time now, const AreaSpec& area, RngStream& rng);

/// Closed unit-disk test: distance <= radius.
inline bool
InRange(const NodePosition& a, const NodePosition& b, double radius)
{
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy <= radius * radius;
}

/// Owns every node's trajectory. Queries must be nondecreasing in time per node.
class MobilityModel
{
public:
  MobilityModel(std::vector<NodePosition> initial, AreaSpec area, std::uint64_t seed);

  const NodePosition& PositionAt(NodeId node, Time t);
  std::uint32_t NodeCount() const { return static_cast<std::uint32_t>(m_positions.size()); }
  const AreaSpec& Area() const { return m_area; }
  bool IsStatic() const { return m_static; }

private:
  AreaSpec m_area;
  std::vector<NodePosition> m_positions;
  std::vector<RngStream> m_streams;
  bool m_static = true;
};

} // namespace dafsim
