/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/medium.hpp"
#include "dafsim/radio.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dafsim {

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class Pattern
{
  OneToOne,
  ManyToMany,
  ManyToOne
};

const char* PatternName(Pattern p);
Pattern ParsePattern(const std::string& s);

struct ScenarioConfig
{
  std::string scheme;
  std::uint32_t nodes = 50;
  double speed = 0.0;
  Pattern pattern = Pattern::OneToOne;
  std::uint32_t csCapacity = 200;
  std::uint32_t rtxMax = 0;
  double requestRate = 5.0;
  std::uint32_t runs = 10;
  std::uint64_t masterSeed = 1;
  double durationCap = 600.0;
  std::uint32_t requestsPerConsumer = 500;
  std::uint32_t consumers = 10;
  AreaSpec area;
  MacParams mac;

  bool IsNdn() const { return scheme != "aodv"; }
  std::uint32_t ProducerCount() const;
};

/// Validates @p j and fills defaults. Throws ConfigError.
ScenarioConfig ParseScenario(const nlohmann::json& j);
/// Reads a JSON scenario file. Throws ConfigError.
nlohmann::json LoadScenarioJson(const std::string& path);
ScenarioConfig LoadScenario(const std::string& path);

/// Keys accepted by Sweep; short aliases map to their canonical key.
std::optional<std::string> CanonicalAxis(const std::string& axis);
/// Parses a sweep value: numbers become JSON numbers, anything else a string.
nlohmann::json ParseAxisValue(const std::string& text);

} // namespace dafsim
