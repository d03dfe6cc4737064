/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/experiment.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace dafsim;
using nlohmann::json;

namespace {

ScenarioConfig
Small(const std::string& scheme, std::uint32_t runs, double speed = 2.0)
{
  return ParseScenario(json{{"scheme", scheme},
                            {"speed", speed},
                            {"runs", runs},
                            {"requests_per_consumer", 30},
                            {"master_seed", 42}});
}

std::string
RunCsv(const std::vector<RunRow>& rows)
{
  std::ostringstream out;
  WriteRunCsvHeader(out);
  for (const auto& r : rows)
    WriteRunCsvRow(out, r);
  return out.str();
}

} // namespace

TEST(Summarize, MeanAndSampleDeviation)
{
  Stat s = Summarize({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(*s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.stddev, std::sqrt(5.0 / 3.0));

  Stat one = Summarize({7.0});
  EXPECT_DOUBLE_EQ(*one.mean, 7.0);
  EXPECT_EQ(one.stddev, 0.0);

  // Absent values are skipped, all-absent yields no mean.
  Stat gaps = Summarize({std::nullopt, 2.0, std::nullopt, 4.0});
  EXPECT_DOUBLE_EQ(*gaps.mean, 3.0);
  EXPECT_FALSE(Summarize({std::nullopt}).mean);
}

TEST(Experiment, ProducesOneRowPerRun)
{
  auto rows = RunExperiment(Small("daf", 4));
  ASSERT_EQ(rows.size(), 4u);
  for (std::uint32_t i = 0; i < 4; ++i)
    EXPECT_EQ(rows[i].run, i);
}

TEST(Experiment, AggregateMatchesRecomputation)
{
  auto rows = RunExperiment(Small("daf", 5));
  AggregateRow agg = Aggregate(rows);
  EXPECT_EQ(agg.runs, 5u);
  double sum = 0;
  for (const auto& r : rows)
    sum += r.metrics.esr;
  const double mean = sum / 5;
  double sq = 0;
  for (const auto& r : rows)
    sq += (r.metrics.esr - mean) * (r.metrics.esr - mean);
  EXPECT_NEAR(*agg.esr.mean, mean, 1e-12);
  EXPECT_NEAR(agg.esr.stddev, std::sqrt(sq / 4), 1e-12);
}

TEST(Experiment, SingleRunHasZeroDeviation)
{
  AggregateRow agg = Aggregate(RunExperiment(Small("daf", 1)));
  EXPECT_EQ(agg.esr.stddev, 0.0);
  EXPECT_EQ(agg.totalTx.stddev, 0.0);
}

TEST(Experiment, RunsAreIndependentOfRunCount)
{
  auto ten = RunExperiment(Small("daf", 6));
  auto three = RunExperiment(Small("daf", 3));
  ten.resize(3);
  EXPECT_EQ(RunCsv(ten), RunCsv(three));
}

TEST(Experiment, ThreadCountDoesNotChangeOutput)
{
  ExperimentOptions parallel;
  parallel.jobs = 3;
  EXPECT_EQ(RunCsv(RunExperiment(Small("aodv", 4))), RunCsv(RunExperiment(Small("aodv", 4), parallel)));
}

TEST(Experiment, RerunIsByteIdentical)
{
  for (const char* scheme : {"daf", "flooding", "self-learning", "aodv"})
    EXPECT_EQ(RunCsv(RunExperiment(Small(scheme, 2))), RunCsv(RunExperiment(Small(scheme, 2)))) << scheme;
}

TEST(Experiment, MasterSeedMatters)
{
  ScenarioConfig a = Small("daf", 2, 4.0), b = a;
  b.masterSeed = 43;
  EXPECT_NE(RunCsv(RunExperiment(a)), RunCsv(RunExperiment(b)));
}

TEST(Csv, Headers)
{
  std::ostringstream run, agg;
  WriteRunCsvHeader(run);
  WriteAggregateCsvHeader(agg);
  EXPECT_EQ(run.str(), "scheme,nodes,speed,pattern,cs,rtx,rate,run,esr,latency_s,tx_events_per_data,"
                       "avg_hops,tx_bytes_per_data,total_tx,total_retrieved\n");
  EXPECT_EQ(agg.str().rfind("scheme,nodes,speed,pattern,cs,rtx,rate,runs,esr_mean,esr_std,", 0), 0u);
}

TEST(Csv, RowLayout)
{
  RunRow row;
  row.config = ParseScenario(json{{"scheme", "daf"}, {"speed", 4}});
  row.run = 3;
  row.metrics.esr = 97.5;
  row.metrics.avgLatency = 0.25;
  row.metrics.txEventsPerData = 12;
  row.metrics.avgHops = 4.5;
  row.metrics.txBytesPerData = 3000;
  row.metrics.totalTx = 60000;
  row.metrics.totalRetrieved = 4875;
  std::ostringstream out;
  WriteRunCsvRow(out, row);
  EXPECT_EQ(out.str(), "daf,50,4,one-to-one,200,0,5,3,97.5,0.25,12,4.5,3000,60000,4875\n");

  row.metrics = RunMetrics{};
  std::ostringstream empty;
  WriteRunCsvRow(empty, row);
  EXPECT_EQ(empty.str(), "daf,50,4,one-to-one,200,0,5,3,0,,,,,0,0\n");
}

TEST(Sweep, CrossProductFirstAxisOutermost)
{
  json base{{"scheme", "daf"}, {"runs", 1}};
  auto combos = ExpandSweep(base, {{"speed", {"0", "4"}}, {"cs", {"0", "5", "200"}}});
  ASSERT_EQ(combos.size(), 6u);
  EXPECT_EQ(combos[0]["speed"], 0);
  EXPECT_EQ(combos[0]["cs_capacity"], 0);
  EXPECT_EQ(combos[2]["cs_capacity"], 200);
  EXPECT_EQ(combos[3]["speed"], 4);
}

TEST(Sweep, SchemeAxis)
{
  auto combos = ExpandSweep(json{{"scheme", "daf"}}, {{"scheme", {"daf", "aodv"}}, {"speed", {"0", "2", "4", "6", "8"}}});
  EXPECT_EQ(combos.size(), 10u);
}

TEST(Sweep, InvalidCombinationsFailUpFront)
{
  EXPECT_THROW(ExpandSweep(json{{"scheme", "daf"}}, {{"speed", {"2", "-1"}}}), ConfigError);
  EXPECT_THROW(ExpandSweep(json{{"scheme", "daf"}}, {{"seed", {"1"}}}), ConfigError);
  EXPECT_THROW(ExpandSweep(json{{"scheme", "daf"}}, {{"speed", {}}}), ConfigError);
  // An explicit cache size clashes with AODV.
  EXPECT_THROW(ExpandSweep(json{{"scheme", "daf"}, {"cs_capacity", 200}}, {{"scheme", {"daf", "aodv"}}}),
               ConfigError);
}
