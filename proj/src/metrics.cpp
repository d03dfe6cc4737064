/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/metrics.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace dafsim {

namespace {
constexpr const char* kEventLogHeader = "time,node,event,name/addr,size,hops";
}

RunMetrics
ComputeMetrics(const RunLog& log)
{
  RunMetrics m;
  m.totalTx = log.totalTx;
  m.totalTxBytes = log.totalTxBytes;
  m.totalRetrieved = log.retrievals.size();
  const double expected = static_cast<double>(log.consumers) * log.requestsPerConsumer;
  m.esr = expected > 0 ? 100.0 * static_cast<double>(m.totalRetrieved) / expected : 0.0;
  if (m.totalRetrieved == 0)
    return m;

  double latency = 0.0;
  double hops = 0.0;
  for (const auto& r : log.retrievals)
    {
      latency += r.Latency();
      hops += r.hops;
    }
  const double n = static_cast<double>(m.totalRetrieved);
  m.avgLatency = latency / n;
  m.avgHops = hops / n;
  m.txEventsPerData = static_cast<double>(m.totalTx) / n;
  m.txBytesPerData = static_cast<double>(m.totalTxBytes) / n;
  return m;
}

// ------------------------------------------------------------ event log

EventLogWriter::EventLogWriter(std::ostream& out)
  : m_out(out)
{
  m_out << kEventLogHeader << '\n';
}

void
EventLogWriter::Row(Time t, NodeId node, const char* event, const std::string& what,
                    std::uint64_t size, std::uint32_t hops)
{
  char time[32];
  std::snprintf(time, sizeof time, "%.17g", t);
  m_out << time << ',' << node << ',' << event << ',' << what << ',' << size << ',' << hops << '\n';
}

void
EventLogWriter::Consumer(NodeId node, const std::string& target, std::uint32_t requests)
{
  Row(0.0, node, "consumer", target, requests, 0);
}

void
EventLogWriter::Tx(Time t, NodeId node, const std::string& what, std::uint32_t bytes)
{
  Row(t, node, "tx", what, bytes, 0);
}

void
EventLogWriter::Request(Time t, NodeId node, const std::string& target, std::uint32_t seq)
{
  Row(t, node, "request", target + "#" + std::to_string(seq), 0, 0);
}

void
EventLogWriter::Retrieve(Time t, NodeId node, const std::string& target, std::uint32_t seq,
                         std::uint32_t hops)
{
  Row(t, node, "retrieve", target + "#" + std::to_string(seq), 0, hops);
}

namespace {

std::pair<std::string, std::uint32_t>
SplitKey(const std::string& what)
{
  const auto pos = what.rfind('#');
  if (pos == std::string::npos)
    throw std::runtime_error("event log: missing sequence in '" + what + "'");
  return {what.substr(0, pos), static_cast<std::uint32_t>(std::stoul(what.substr(pos + 1)))};
}

} // namespace

RunLog
ParseEventLog(std::istream& in)
{
  RunLog log;
  std::map<std::pair<NodeId, std::uint32_t>, Time> firstSend;
  std::string line;
  std::size_t lineNo = 0;
  std::uint32_t requests = 0;
  bool sawConsumer = false;
  while (std::getline(in, line))
    {
      ++lineNo;
      if (lineNo == 1)
        {
          if (line != kEventLogHeader)
            throw std::runtime_error("event log: unexpected header '" + line + "'");
          continue;
        }
      if (line.empty())
        continue;
      std::vector<std::string> f;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ','))
        f.push_back(cell);
      if (f.size() != 6)
        throw std::runtime_error("event log: line " + std::to_string(lineNo) + " has " +
                                 std::to_string(f.size()) + " fields");
      Time t;
      NodeId node;
      std::uint64_t size;
      std::uint32_t hops;
      try
        {
          t = std::stod(f[0]);
          node = static_cast<NodeId>(std::stoul(f[1]));
          size = std::stoull(f[4]);
          hops = static_cast<std::uint32_t>(std::stoul(f[5]));
        }
      catch (const std::logic_error&)
        {
          throw std::runtime_error("event log: bad number on line " + std::to_string(lineNo));
        }
      const std::string& event = f[2];
      if (event == "tx")
        {
          ++log.totalTx;
          log.totalTxBytes += size;
        }
      else if (event == "consumer")
        {
          if (sawConsumer && size != requests)
            throw std::runtime_error("event log: consumers disagree on request count");
          sawConsumer = true;
          requests = static_cast<std::uint32_t>(size);
          ++log.consumers;
        }
      else if (event == "request")
        firstSend[{node, SplitKey(f[3]).second}] = t;
      else if (event == "retrieve")
        {
          const std::uint32_t seq = SplitKey(f[3]).second;
          auto it = firstSend.find({node, seq});
          if (it == firstSend.end())
            throw std::runtime_error("event log: retrieval without request on line " +
                                     std::to_string(lineNo));
          log.retrievals.push_back(Retrieval{node, seq, it->second, t, hops});
        }
      else
        throw std::runtime_error("event log: unknown event '" + event + "'");
    }
  log.requestsPerConsumer = requests;
  return log;
}

} // namespace dafsim
