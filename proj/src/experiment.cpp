/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/experiment.hpp"

#include "dafsim/network.hpp"
#include "dafsim/rng.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

namespace dafsim {

std::vector<RunRow>
RunExperiment(const ScenarioConfig& config, const ExperimentOptions& options)
{
  std::vector<RunRow> rows(config.runs);
  std::vector<std::exception_ptr> errors(config.runs);
  std::atomic<std::uint32_t> next{0};
  std::mutex callbackMutex;

  auto worker = [&] {
    for (std::uint32_t i = next++; i < config.runs; i = next++)
      {
        try
          {
            const SimulationSetup setup = MakeSetup(config, DeriveRunSeed(config.masterSeed, i));
            RunOptions runOptions;
            std::ofstream events;
            if (!options.eventLogDir.empty())
              {
                const std::string path = options.eventLogDir + "/run-" + std::to_string(i) + ".events.csv";
                events.open(path);
                if (!events)
                  throw std::runtime_error("cannot write " + path);
                runOptions.eventLog = &events;
              }
            std::ofstream positions;
            if (!options.positionDir.empty())
              {
                const std::string path = options.positionDir + "/run-" + std::to_string(i) + ".positions.csv";
                positions.open(path);
                if (!positions)
                  throw std::runtime_error("cannot write " + path);
                runOptions.positionTrace = &positions;
              }
            RunResult r = RunSimulation(setup, runOptions);
            rows[i] = RunRow{config, i, r.metrics};
            if (options.onRunDone)
              {
                std::lock_guard<std::mutex> lock(callbackMutex);
                options.onRunDone(rows[i]);
              }
          }
        catch (...)
          {
            errors[i] = std::current_exception();
          }
      }
  };

  const unsigned jobs = std::max(1u, std::min(options.jobs, config.runs));
  if (jobs == 1)
    worker();
  else
    {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back(worker);
      for (auto& t : pool)
        t.join();
    }

  for (std::uint32_t i = 0; i < config.runs; ++i)
    if (errors[i])
      {
        try
          {
            std::rethrow_exception(errors[i]);
          }
        catch (const std::exception& e)
          {
            throw RunFailure(i, e.what());
          }
      }
  return rows;
}

Stat
Summarize(const std::vector<std::optional<double>>& values)
{
  Stat s;
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& v : values)
    if (v)
      {
        sum += *v;
        ++n;
      }
  if (n == 0)
    return s;
  const double mean = sum / static_cast<double>(n);
  s.mean = mean;
  if (n > 1)
    {
      double sq = 0.0;
      for (const auto& v : values)
        if (v)
          sq += (*v - mean) * (*v - mean);
      s.stddev = std::sqrt(sq / static_cast<double>(n - 1));
    }
  return s;
}

AggregateRow
Aggregate(const std::vector<RunRow>& rows)
{
  AggregateRow a;
  if (rows.empty())
    return a;
  a.config = rows.front().config;
  a.runs = static_cast<std::uint32_t>(rows.size());
  auto collect = [&](auto field) {
    std::vector<std::optional<double>> v;
    v.reserve(rows.size());
    for (const auto& r : rows)
      v.push_back(field(r.metrics));
    return Summarize(v);
  };
  a.esr = collect([](const RunMetrics& m) { return std::optional<double>(m.esr); });
  a.latency = collect([](const RunMetrics& m) { return m.avgLatency; });
  a.txEventsPerData = collect([](const RunMetrics& m) { return m.txEventsPerData; });
  a.avgHops = collect([](const RunMetrics& m) { return m.avgHops; });
  a.txBytesPerData = collect([](const RunMetrics& m) { return m.txBytesPerData; });
  a.totalTx = collect([](const RunMetrics& m) { return std::optional<double>(static_cast<double>(m.totalTx)); });
  a.totalRetrieved =
    collect([](const RunMetrics& m) { return std::optional<double>(static_cast<double>(m.totalRetrieved)); });
  return a;
}

std::vector<nlohmann::json>
ExpandSweep(const nlohmann::json& base, const std::vector<SweepAxis>& axes)
{
  std::vector<nlohmann::json> out{base};
  for (const auto& [axis, values] : axes)
    {
      const auto key = CanonicalAxis(axis);
      if (!key)
        throw ConfigError("unknown sweep axis '" + axis + "'");
      if (values.empty())
        throw ConfigError("sweep axis '" + axis + "' has no values");
      std::vector<nlohmann::json> next;
      for (const auto& partial : out)
        for (const auto& v : values)
          {
            nlohmann::json j = partial;
            j[*key] = ParseAxisValue(v);
            next.push_back(std::move(j));
          }
      out = std::move(next);
    }
  for (const auto& j : out)
    ParseScenario(j); // validate every combination up front
  return out;
}

// ------------------------------------------------------------------ CSV

const char* const kRunCsvHeader = "scheme,nodes,speed,pattern,cs,rtx,rate,run,esr,latency_s,"
                                  "tx_events_per_data,avg_hops,tx_bytes_per_data,total_tx,total_retrieved";

const char* const kAggregateCsvHeader =
  "scheme,nodes,speed,pattern,cs,rtx,rate,runs,"
  "esr_mean,esr_std,latency_s_mean,latency_s_std,tx_events_per_data_mean,tx_events_per_data_std,"
  "avg_hops_mean,avg_hops_std,tx_bytes_per_data_mean,tx_bytes_per_data_std,"
  "total_tx_mean,total_tx_std,total_retrieved_mean,total_retrieved_std";

std::string
FormatNumber(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

namespace {

std::string
Optional(const std::optional<double>& v)
{
  return v ? FormatNumber(*v) : std::string();
}

void
WriteConfigEcho(std::ostream& out, const ScenarioConfig& c)
{
  out << c.scheme << ',' << c.nodes << ',' << FormatNumber(c.speed) << ',' << PatternName(c.pattern) << ','
      << c.csCapacity << ',' << c.rtxMax << ',' << FormatNumber(c.requestRate);
}

void
WriteStat(std::ostream& out, const Stat& s)
{
  out << ',' << Optional(s.mean) << ',' << (s.mean ? FormatNumber(s.stddev) : std::string());
}

} // namespace

void
WriteRunCsvHeader(std::ostream& out)
{
  out << kRunCsvHeader << '\n';
}

void
WriteRunCsvRow(std::ostream& out, const RunRow& row)
{
  const RunMetrics& m = row.metrics;
  WriteConfigEcho(out, row.config);
  out << ',' << row.run << ',' << FormatNumber(m.esr) << ',' << Optional(m.avgLatency) << ','
      << Optional(m.txEventsPerData) << ',' << Optional(m.avgHops) << ',' << Optional(m.txBytesPerData) << ','
      << m.totalTx << ',' << m.totalRetrieved << '\n';
}

void
WriteAggregateCsvHeader(std::ostream& out)
{
  out << kAggregateCsvHeader << '\n';
}

void
WriteAggregateCsvRow(std::ostream& out, const AggregateRow& row)
{
  WriteConfigEcho(out, row.config);
  out << ',' << row.runs;
  for (const Stat* s : {&row.esr, &row.latency, &row.txEventsPerData, &row.avgHops, &row.txBytesPerData,
                        &row.totalTx, &row.totalRetrieved})
    WriteStat(out, *s);
  out << '\n';
}

} // namespace dafsim
