/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/aodv.hpp"
#include "dafsim/medium.hpp"
#include "dafsim/metrics.hpp"
#include "dafsim/radio.hpp"
#include "dafsim/scenario.hpp"
#include "dafsim/trace.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dafsim {

struct ConsumerSpec
{
  NodeId node = 0;
  /// NDN prefix the consumer asks for, e.g. "/A".
  std::string prefix;
  /// Responder address under IP.
  NodeId responder = 0;
  Time startTime = 1.0;
};

struct ProducerSpec
{
  NodeId node = 0;
  std::string prefix;
};

/// A fully resolved run: placement, roles and parameters.
struct SimulationSetup
{
  std::string scheme = "daf";
  AreaSpec area;
  std::vector<NodePosition> positions;
  std::vector<ConsumerSpec> consumers;
  std::vector<ProducerSpec> producers;
  std::uint32_t csCapacity = 200;
  std::uint32_t rtxMax = 0;
  double requestRate = 5.0;
  std::uint32_t requestsPerConsumer = 500;
  Time durationCap = 600.0;
  std::uint64_t seed = 1;
  MacParams mac;
  AodvParams aodv;
};

/// Draws placement, roles and start times for one run of @p config.
SimulationSetup MakeSetup(const ScenarioConfig& config, std::uint64_t runSeed);

struct RunOptions
{
  TraceSink trace;
  std::ostream* eventLog = nullptr;
  /// CSV time,node,x,y sampled every positionPeriod seconds.
  std::ostream* positionTrace = nullptr;
  Time positionPeriod = 1.0;
};

struct RunResult
{
  RunLog log;
  RunMetrics metrics;
  Time endTime = 0.0;
  bool hitCap = false;
  std::uint64_t events = 0;
  std::uint64_t collisions = 0;
  std::uint64_t queueDrops = 0;
};

/// Executes one run; stops once every consumer is done or at the duration cap.
RunResult RunSimulation(const SimulationSetup& setup, const RunOptions& options = {});

} // namespace dafsim
