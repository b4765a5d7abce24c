#pragma once

// Scenario files: JSON documents describing the world, the robots and the
// protocol/scheduler parameters of one simulation.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "paint/sim.hpp"

namespace paint {

struct Scenario {
  std::string name;
  SimConfig config;
};

/// Parses and validates; unknown fields are rejected. Errors are ConfigError
/// with the source name and, for syntax errors, the line and column.
Scenario parse_scenario(std::string_view text, std::string_view source_name = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::ordered_json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& doc, std::string_view source_name);
std::string serialize_scenario(const Scenario& scenario);

char orientation_letter(Orientation o);

}  // namespace paint
