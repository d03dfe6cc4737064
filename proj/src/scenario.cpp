/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>

namespace dafsim {

using nlohmann::json;

const char*
PatternName(Pattern p)
{
  switch (p)
    {
    case Pattern::OneToOne:
      return "one-to-one";
    case Pattern::ManyToMany:
      return "many-to-many";
    case Pattern::ManyToOne:
      return "many-to-one";
    }
  return "?";
}

Pattern
ParsePattern(const std::string& s)
{
  if (s == "one-to-one")
    return Pattern::OneToOne;
  if (s == "many-to-many")
    return Pattern::ManyToMany;
  if (s == "many-to-one")
    return Pattern::ManyToOne;
  throw ConfigError("pattern must be one-to-one, many-to-many or many-to-one, got '" + s + "'");
}

std::uint32_t
ScenarioConfig::ProducerCount() const
{
  return pattern == Pattern::ManyToOne ? 2 : consumers;
}

namespace {

const std::set<std::string> kKnownKeys = {
  "scheme",       "nodes",        "speed",         "pattern",      "cs_capacity",
  "rtx_max",      "request_rate", "runs",          "master_seed",  "duration_cap",
  "requests_per_consumer",        "consumers",     "allow_aodv_cs", "grid_cols",
  "grid_rows",    "grid_spacing", "area_width",    "area_height",  "radio_radius",
  "carrier_sense", "link_retry_limit"};

double
Number(const json& j, const char* key, double fallback, double lo, double hi)
{
  if (!j.contains(key))
    return fallback;
  const json& v = j.at(key);
  if (!v.is_number())
    throw ConfigError(std::string(key) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x) || x < lo || x > hi)
    throw ConfigError(std::string(key) + " out of range [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]: " + v.dump());
  return x;
}

std::uint64_t
Integer(const json& j, const char* key, std::uint64_t fallback, std::uint64_t lo, std::uint64_t hi)
{
  if (!j.contains(key))
    return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() && !(v.is_number_float() && v.get<double>() == std::floor(v.get<double>())))
    throw ConfigError(std::string(key) + " must be an integer");
  if (v.is_number_float() ? v.get<double>() < 0 : (v.is_number_integer() && v.get<std::int64_t>() < 0 && !v.is_number_unsigned()))
    throw ConfigError(std::string(key) + " must be non-negative");
  const auto x = v.is_number_float() ? static_cast<std::uint64_t>(v.get<double>()) : v.get<std::uint64_t>();
  if (x < lo || x > hi)
    throw ConfigError(std::string(key) + " out of range [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]: " + v.dump());
  return x;
}

} // namespace

ScenarioConfig
ParseScenario(const json& j)
{
  if (!j.is_object())
    throw ConfigError("scenario must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (kKnownKeys.count(key) == 0)
      throw ConfigError("unknown key '" + key + "'");
  if (!j.contains("scheme"))
    throw ConfigError("missing required key 'scheme'");
  if (!j.at("scheme").is_string())
    throw ConfigError("scheme must be a string");

  ScenarioConfig c;
  c.scheme = j.at("scheme").get<std::string>();
  if (c.scheme != "daf" && c.scheme != "flooding" && c.scheme != "self-learning" && c.scheme != "aodv")
    throw ConfigError("scheme must be daf, flooding, self-learning or aodv, got '" + c.scheme + "'");

  c.nodes = static_cast<std::uint32_t>(Integer(j, "nodes", 50, 1, 100000));
  c.speed = Number(j, "speed", 0.0, 0.0, 8.0);
  if (j.contains("pattern"))
    {
      if (!j.at("pattern").is_string())
        throw ConfigError("pattern must be a string");
      c.pattern = ParsePattern(j.at("pattern").get<std::string>());
    }

  const bool allowAodvCs = j.contains("allow_aodv_cs") && j.at("allow_aodv_cs").is_boolean() &&
                           j.at("allow_aodv_cs").get<bool>();
  if (j.contains("allow_aodv_cs") && !j.at("allow_aodv_cs").is_boolean())
    throw ConfigError("allow_aodv_cs must be a boolean");
  c.csCapacity = static_cast<std::uint32_t>(Integer(j, "cs_capacity", c.IsNdn() ? 200 : 0, 0, 1000000));
  if (!c.IsNdn() && c.csCapacity != 0 && !allowAodvCs)
    throw ConfigError("cs_capacity applies only to NDN schemes (set allow_aodv_cs to override)");

  c.rtxMax = static_cast<std::uint32_t>(Integer(j, "rtx_max", 0, 0, 2));
  c.requestRate = Number(j, "request_rate", 5.0, 1e-3, 1000.0);
  if (c.requestRate <= 0.0)
    throw ConfigError("request_rate must be positive");
  c.runs = static_cast<std::uint32_t>(Integer(j, "runs", 10, 1, 100000));
  c.masterSeed = Integer(j, "master_seed", 1, 0, UINT64_MAX);
  c.durationCap = Number(j, "duration_cap", 600.0, 1.0, 1e7);
  c.requestsPerConsumer =
    static_cast<std::uint32_t>(Integer(j, "requests_per_consumer", 500, 1, 10000000));
  c.consumers = static_cast<std::uint32_t>(Integer(j, "consumers", 10, 1, 100000));
  if (c.pattern == Pattern::ManyToOne && c.consumers < 2)
    throw ConfigError("many-to-one needs at least 2 consumers");

  const bool customGrid = j.contains("grid_cols") || j.contains("grid_rows");
  if (customGrid)
    {
      if (!j.contains("grid_cols") || !j.contains("grid_rows"))
        throw ConfigError("grid_cols and grid_rows must be given together");
      c.area.gridCols = static_cast<std::uint32_t>(Integer(j, "grid_cols", 10, 1, 10000));
      c.area.gridRows = static_cast<std::uint32_t>(Integer(j, "grid_rows", 5, 1, 10000));
      c.area.spacing = Number(j, "grid_spacing", 100.0, 1e-3, 1e6);
      c.area.areaWidth = Number(j, "area_width", (c.area.gridCols - 1) * c.area.spacing, 0.0, 1e7);
      c.area.areaHeight = Number(j, "area_height", (c.area.gridRows - 1) * c.area.spacing, 0.0, 1e7);
      if ((c.area.gridCols - 1) * c.area.spacing > c.area.areaWidth ||
          (c.area.gridRows - 1) * c.area.spacing > c.area.areaHeight)
        throw ConfigError("grid does not fit inside the area");
    }
  else
    {
      for (const char* k : {"grid_spacing", "area_width", "area_height"})
        if (j.contains(k))
          throw ConfigError(std::string(k) + " requires grid_cols and grid_rows");
      try
        {
          c.area = AreaSpec::ForNodeCount(c.nodes);
        }
      catch (const PlacementError& e)
        {
          throw ConfigError(std::string("nodes: ") + e.what() + " (give grid_cols/grid_rows for custom sizes)");
        }
    }
  c.area.radioRadius = Number(j, "radio_radius", 125.0, 1e-3, 1e6);

  if (j.contains("carrier_sense"))
    {
      const json& v = j.at("carrier_sense");
      if (v == "sender")
        c.mac.carrierSense = CarrierSense::Sender;
      else if (v == "neighborhood")
        c.mac.carrierSense = CarrierSense::Neighborhood;
      else
        throw ConfigError("carrier_sense must be \"sender\" or \"neighborhood\"");
    }
  c.mac.linkRetryLimit = static_cast<std::uint32_t>(Integer(j, "link_retry_limit", 0, 0, 16));

  if (c.nodes > c.area.Capacity())
    throw ConfigError("nodes exceeds grid capacity " + std::to_string(c.area.Capacity()));
  if (c.consumers + c.ProducerCount() > c.nodes)
    throw ConfigError("not enough nodes for " + std::to_string(c.consumers) + " consumers and " +
                      std::to_string(c.ProducerCount()) + " producers");
  return c;
}

json
LoadScenarioJson(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open scenario file '" + path + "'");
  try
    {
      return json::parse(in);
    }
  catch (const json::parse_error& e)
    {
      throw ConfigError("'" + path + "': " + e.what());
    }
}

ScenarioConfig
LoadScenario(const std::string& path)
{
  return ParseScenario(LoadScenarioJson(path));
}

std::optional<std::string>
CanonicalAxis(const std::string& axis)
{
  static const std::map<std::string, std::string> kAxes = {
    {"speed", "speed"},
    {"nodes", "nodes"},
    {"cs_capacity", "cs_capacity"},
    {"cs", "cs_capacity"},
    {"rtx_max", "rtx_max"},
    {"rtx", "rtx_max"},
    {"request_rate", "request_rate"},
    {"rate", "request_rate"},
    {"scheme", "scheme"},
    {"pattern", "pattern"}};
  auto it = kAxes.find(axis);
  if (it == kAxes.end())
    return std::nullopt;
  return it->second;
}

json
ParseAxisValue(const std::string& text)
{
  try
    {
      std::size_t used = 0;
      const long long i = std::stoll(text, &used);
      if (used == text.size())
        return i;
      const double d = std::stod(text, &used);
      if (used == text.size())
        return d;
    }
  catch (const std::exception&)
    {
    }
  return text;
}

} // namespace dafsim
