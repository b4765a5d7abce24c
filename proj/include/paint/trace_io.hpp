#pragma once

// JSON-lines trace format. The first line is a Config record carrying the
// scenario (robot_id -1); every following line is one SimEvent. Keys appear
// in the fixed order time, robot_id, kind, payload and event floats use 9
// significant digits, so a trace serializes to the same bytes every time.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "paint/scenario.hpp"
#include "paint/sim.hpp"

namespace paint {

std::string format_float(double v);

std::string event_to_json_line(const SimEvent& ev);
std::string trace_to_jsonl(const Trace& trace, std::string_view scenario_name = "");
void write_trace(const Trace& trace, const std::filesystem::path& path, std::string_view scenario_name = "");

struct LoadedTrace {
  std::string scenario_name;
  Trace trace;
};

/// Throws ConfigError with the offending line number on malformed input.
LoadedTrace trace_from_jsonl(std::istream& in);
LoadedTrace load_trace(const std::filesystem::path& path);

/// 64-bit FNV-1a of the bytes.
std::uint64_t fnv1a(std::string_view bytes);
/// FNV-1a over the config and the exact binary content of every event.
std::uint64_t trace_hash(const Trace& trace);
std::string hex64(std::uint64_t v);

}  // namespace paint
