/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/medium.hpp"

#include <functional>
#include <string>

namespace dafsim {

/// One (time, node, action) triple of the protocol trace.
struct TraceRecord
{
  Time time = 0.0;
  NodeId node = 0;
  std::string action;
  std::string detail;
};

using TraceSink = std::function<void(const TraceRecord&)>;

/// Per-node network layer attached to the medium.
class NetworkLayer
{
public:
  virtual ~NetworkLayer() = default;

  virtual void OnFrame(const Frame& frame, bool addressed) = 0;

  /// Schedules the node's periodic timers.
  virtual void Start() {}
};

} // namespace dafsim
