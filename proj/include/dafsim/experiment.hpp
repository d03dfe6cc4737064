/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/metrics.hpp"
#include "dafsim/scenario.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dafsim {

struct RunRow
{
  ScenarioConfig config;
  std::uint32_t run = 0;
  RunMetrics metrics;
};

struct Stat
{
  std::optional<double> mean;
  double stddev = 0.0;
};

struct AggregateRow
{
  ScenarioConfig config;
  std::uint32_t runs = 0;
  Stat esr, latency, txEventsPerData, avgHops, txBytesPerData, totalTx, totalRetrieved;
};

class RunFailure : public std::runtime_error
{
public:
  RunFailure(std::uint32_t run, const std::string& what)
    : std::runtime_error("run " + std::to_string(run) + ": " + what),
      m_run(run)
  {
  }
  std::uint32_t Run() const { return m_run; }

private:
  std::uint32_t m_run;
};

struct ExperimentOptions
{
  /// Worker threads; results do not depend on this.
  unsigned jobs = 1;
  /// When set, run i also writes its event log to <dir>/run-<i>.events.csv.
  std::string eventLogDir;
  /// When set, run i also writes node positions to <dir>/run-<i>.positions.csv.
  std::string positionDir;
  std::function<void(const RunRow&)> onRunDone;
};

/// Runs config.runs independent simulations; run i uses DeriveRunSeed(masterSeed, i).
std::vector<RunRow> RunExperiment(const ScenarioConfig& config, const ExperimentOptions& options = {});

/// Mean and sample standard deviation (0 for a single run) over @p rows.
AggregateRow Aggregate(const std::vector<RunRow>& rows);

/// Mean and sample standard deviation of the present values.
Stat Summarize(const std::vector<std::optional<double>>& values);

using SweepAxis = std::pair<std::string, std::vector<std::string>>;

/// Cross product of the axes applied on top of @p base, first axis outermost.
/// Throws ConfigError for unknown axes or invalid combinations.
std::vector<nlohmann::json> ExpandSweep(const nlohmann::json& base, const std::vector<SweepAxis>& axes);

// CSV writers. Column order is fixed; see README.
extern const char* const kRunCsvHeader;
extern const char* const kAggregateCsvHeader;
void WriteRunCsvHeader(std::ostream& out);
void WriteRunCsvRow(std::ostream& out, const RunRow& row);
void WriteAggregateCsvHeader(std::ostream& out);
void WriteAggregateCsvRow(std::ostream& out, const AggregateRow& row);
/// Fixed formatting used for every number in the CSV files.
std::string FormatNumber(double v);

} // namespace dafsim
