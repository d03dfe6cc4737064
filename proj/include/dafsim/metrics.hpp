/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/packet.hpp"
#include "dafsim/simulator.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dafsim {

struct Retrieval
{
  NodeId consumer = 0;
  std::uint32_t seq = 0;
  Time firstSend = 0.0;
  Time arrival = 0.0;
  std::uint32_t hops = 0;

  Time Latency() const { return arrival - firstSend; }
};

/// Everything the metrics are computed from. Filled in while a run executes.
struct RunLog
{
  std::uint32_t consumers = 0;
  std::uint32_t requestsPerConsumer = 0;
  std::uint64_t totalTx = 0;
  std::uint64_t totalTxBytes = 0;
  std::vector<Retrieval> retrievals;
  std::uint64_t anomalies = 0;
};

struct RunMetrics
{
  double esr = 0.0;
  std::optional<double> avgLatency;
  std::optional<double> txEventsPerData;
  std::optional<double> avgHops;
  std::optional<double> txBytesPerData;
  std::uint64_t totalTx = 0;
  std::uint64_t totalTxBytes = 0;
  std::uint64_t totalRetrieved = 0;
};

/// Pure function of the log. Ratios are absent when nothing was retrieved.
RunMetrics ComputeMetrics(const RunLog& log);

/**
 * Per-run event log, one CSV row per event:
 *   time,node,event,name/addr,size,hops
 * Events: "consumer" (size = unique requests it will issue), "tx" (one
 * per frame transmission), "request" (first send of a seq) and
 * "retrieve" (first arrival of a seq). Times use 17 significant digits so
 * that re-reading the file reproduces the in-run metrics exactly.
 */
class EventLogWriter
{
public:
  explicit EventLogWriter(std::ostream& out);

  void Consumer(NodeId node, const std::string& target, std::uint32_t requests);
  void Tx(Time t, NodeId node, const std::string& what, std::uint32_t bytes);
  void Request(Time t, NodeId node, const std::string& target, std::uint32_t seq);
  void Retrieve(Time t, NodeId node, const std::string& target, std::uint32_t seq, std::uint32_t hops);

private:
  void Row(Time t, NodeId node, const char* event, const std::string& what, std::uint64_t size,
           std::uint32_t hops);

  std::ostream& m_out;
};

/// Rebuilds a RunLog from an event log; throws std::runtime_error on malformed input.
RunLog ParseEventLog(std::istream& in);

} // namespace dafsim
