/* SPDX-License-Identifier: GPL-2.0-only */
// Command-line front end: run, sweep and report.

#include "dafsim/experiment.hpp"
#include "dafsim/scenario.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace dafsim;
namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRun = 2;

std::string
ResolveOutDir(const std::string& flag)
{
  if (const char* env = std::getenv("DAFSIM_OUT_DIR"); env != nullptr && *env != '\0')
    return env;
  if (flag.empty())
    throw ConfigError("no output directory: pass --out or set DAFSIM_OUT_DIR");
  return flag;
}

std::ofstream
OpenOut(const fs::path& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  return out;
}

void
Progress(const RunRow& row)
{
  std::fprintf(stderr, "  %s nodes=%u speed=%g %s cs=%u rtx=%u rate=%g run %u: esr=%.2f\n",
               row.config.scheme.c_str(), row.config.nodes, row.config.speed, PatternName(row.config.pattern),
               row.config.csCapacity, row.config.rtxMax, row.config.requestRate, row.run, row.metrics.esr);
}

void
WriteResults(const fs::path& dir, const std::vector<std::vector<RunRow>>& experiments)
{
  fs::create_directories(dir);
  std::ofstream runs = OpenOut(dir / "runs.csv");
  std::ofstream agg = OpenOut(dir / "aggregate.csv");
  WriteRunCsvHeader(runs);
  WriteAggregateCsvHeader(agg);
  for (const auto& rows : experiments)
    {
      for (const auto& r : rows)
        WriteRunCsvRow(runs, r);
      WriteAggregateCsvRow(agg, Aggregate(rows));
    }
}

std::vector<std::string>
SplitCsvLine(const std::string& line)
{
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ','))
    out.push_back(cell);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

int
Report(const fs::path& dir)
{
  std::ifstream in(dir / "aggregate.csv");
  if (!in)
    throw ConfigError("no aggregate.csv in " + dir.string());
  std::string line;
  std::getline(in, line);
  const auto header = SplitCsvLine(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i)
    col[header[i]] = i;
  for (const char* needed : {"scheme", "esr_mean", "latency_s_mean", "tx_events_per_data_mean", "avg_hops_mean",
                             "tx_bytes_per_data_mean"})
    if (col.count(needed) == 0)
      throw ConfigError(std::string("aggregate.csv lacks column ") + needed);

  const std::vector<std::string> keys = {"scheme", "nodes", "speed", "pattern", "cs", "rtx", "rate"};
  const std::vector<std::pair<std::string, std::string>> metrics = {{"esr", "ESR %"},
                                                                    {"latency_s", "latency s"},
                                                                    {"tx_events_per_data", "tx/data"},
                                                                    {"avg_hops", "hops"},
                                                                    {"tx_bytes_per_data", "bytes/data"}};
  std::ofstream plot = OpenOut(dir / "plot.csv");
  plot << "scheme,nodes,speed,pattern,cs,rtx,rate,metric,mean,std\n";

  std::printf("%-14s %5s %5s %-13s %4s %3s %5s | %9s %10s %9s %6s %11s\n", "scheme", "nodes", "speed", "pattern",
              "cs", "rtx", "rate", "ESR %", "latency s", "tx/data", "hops", "bytes/data");
  while (std::getline(in, line))
    {
      if (line.empty())
        continue;
      const auto f = SplitCsvLine(line);
      if (f.size() != header.size())
        throw ConfigError("malformed aggregate.csv row: " + line);
      auto cell = [&](const std::string& k) { return f[col.at(k)]; };
      auto num = [&](const std::string& k, int decimals) {
        if (cell(k).empty())
          return std::string("-");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.*f", decimals, std::stod(cell(k)));
        return std::string(buf);
      };
      std::printf("%-14s %5s %5s %-13s %4s %3s %5s | %9s %10s %9s %6s %11s\n", cell("scheme").c_str(),
                  cell("nodes").c_str(), cell("speed").c_str(), cell("pattern").c_str(), cell("cs").c_str(),
                  cell("rtx").c_str(), cell("rate").c_str(), num("esr_mean", 2).c_str(),
                  num("latency_s_mean", 4).c_str(), num("tx_events_per_data_mean", 2).c_str(),
                  num("avg_hops_mean", 2).c_str(), num("tx_bytes_per_data_mean", 1).c_str());
      for (const auto& [m, label] : metrics)
        {
          for (const auto& k : keys)
            plot << cell(k) << ',';
          plot << m << ',' << cell(m + "_mean") << ',' << cell(m + "_std") << '\n';
        }
    }
  std::printf("plot data: %s\n", (dir / "plot.csv").string().c_str());
  return 0;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Discrete-event MANET simulator comparing NDN forwarding strategies with IP/AODV"};
  app.require_subcommand(1);

  std::string scenario, outDir, inDir, eventLogs, positionLogs;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> runs;
  unsigned jobs = 1;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("--scenario", scenario, "Scenario JSON file")->required();
  run->add_option("--seed", seed, "Master seed (overrides the file)");
  run->add_option("--runs", runs, "Number of runs (overrides the file)");
  run->add_option("--out", outDir, "Output directory (DAFSIM_OUT_DIR takes precedence)");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  run->add_option("--event-logs", eventLogs, "Directory for per-run event logs");
  run->add_option("--positions", positionLogs, "Directory for per-run position traces (time,node,x,y)");
  run->add_flag("--quiet", quiet, "No per-run progress");

  std::vector<std::string> axes;
  std::vector<std::string> values;
  auto* sweep = app.add_subcommand("sweep", "Cross-product sweep over one or more axes");
  sweep->add_option("--scenario", scenario, "Base scenario JSON file")->required();
  sweep->add_option("--axis", axes, "Axis name (repeatable, paired with --values)")->required();
  sweep->add_option("--values", values, "Comma-separated values for the matching --axis")->required();
  sweep->add_option("--seed", seed, "Master seed (overrides the file)");
  sweep->add_option("--runs", runs, "Runs per point (overrides the file)");
  sweep->add_option("--out", outDir, "Output directory (DAFSIM_OUT_DIR takes precedence)");
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  sweep->add_flag("--quiet", quiet, "No per-run progress");

  auto* report = app.add_subcommand("report", "Print an aggregate table and write plot.csv");
  report->add_option("--in", inDir, "Directory holding aggregate.csv")->required();

  try
    {
      app.parse(argc, argv);
    }
  catch (const CLI::ParseError& e)
    {
      const int rc = app.exit(e);
      return rc == 0 ? 0 : kExitConfig;
    }

  try
    {
      if (report->parsed())
        return Report(inDir);

      nlohmann::json base = LoadScenarioJson(scenario);
      if (seed)
        base["master_seed"] = *seed;
      if (runs)
        base["runs"] = *runs;

      std::vector<nlohmann::json> points{base};
      if (sweep->parsed())
        {
          if (axes.size() != values.size())
            throw ConfigError("every --axis needs exactly one --values");
          std::vector<SweepAxis> spec;
          for (std::size_t i = 0; i < axes.size(); ++i)
            {
              std::vector<std::string> vs;
              std::stringstream ss(values[i]);
              std::string v;
              while (std::getline(ss, v, ','))
                if (!v.empty())
                  vs.push_back(v);
              spec.emplace_back(axes[i], vs);
            }
          points = ExpandSweep(base, spec);
        }

      std::vector<ScenarioConfig> configs;
      for (const auto& p : points)
        configs.push_back(ParseScenario(p));
      const fs::path dir = ResolveOutDir(outDir);

      ExperimentOptions options;
      options.jobs = jobs;
      if (!quiet)
        options.onRunDone = Progress;
      if (!eventLogs.empty())
        {
          fs::create_directories(eventLogs);
          options.eventLogDir = eventLogs;
        }

      if (!positionLogs.empty())
        {
          fs::create_directories(positionLogs);
          options.positionDir = positionLogs;
        }

      std::vector<std::vector<RunRow>> results;
      for (const auto& c : configs)
        {
          try
            {
              results.push_back(RunExperiment(c, options));
            }
          catch (const RunFailure& e)
            {
              std::fprintf(stderr, "error: %s\n", e.what());
              return kExitRun;
            }
        }
      WriteResults(dir, results);
      std::fprintf(stderr, "wrote %s and %s\n", (dir / "runs.csv").string().c_str(),
                   (dir / "aggregate.csv").string().c_str());
      return 0;
    }
  catch (const ConfigError& e)
    {
      std::fprintf(stderr, "config error: %s\n", e.what());
      return kExitConfig;
    }
  catch (const std::exception& e)
    {
      std::fprintf(stderr, "error: %s\n", e.what());
      return kExitRun;
    }
}
