#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "paint/errors.hpp"
#include "paint/scenario.hpp"
#include "paint/sim.hpp"
#include "paint/trace_io.hpp"
#include "paint/verify.hpp"

namespace paint {
namespace {

Scenario scenario(const std::string& name) {
  return load_scenario(std::string(PAINT_SCENARIO_DIR) + "/" + name + ".json");
}

TEST(FormatFloat, NineSignificantDigits) {
  EXPECT_EQ(format_float(0.1), "0.1");
  EXPECT_EQ(format_float(-0.0), "0");
  EXPECT_EQ(format_float(246.875), "246.875");
  EXPECT_EQ(format_float(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_float(123456789012.0), "1.23456789e+11");
}

TEST(EventLine, FixedFieldOrder) {
  SimEvent ev{1.25, 3, EventKind::MoveStep, Vec2(-2.5, 0.1)};
  EXPECT_EQ(event_to_json_line(ev),
            R"({"time":1.25,"robot_id":3,"kind":"MoveStep","payload":{"x":-2.5,"y":0.1}})");

  SimEvent sleep{2, 0, EventKind::Sleep, Vec2(1, 1)};
  sleep.wake_time = 4.5;
  EXPECT_EQ(event_to_json_line(sleep),
            R"({"time":2,"robot_id":0,"kind":"Sleep","payload":{"x":1,"y":1,"wake_time":4.5}})");

  SimEvent cd{3, 1, EventKind::ComputeDone, Vec2(0, 0)};
  cd.compute = ComputeInfo{CycleAction::Move, DestinationKind::Secondary, Vec2(0, -3.9), 2, 1};
  EXPECT_EQ(event_to_json_line(cd),
            R"({"time":3,"robot_id":1,"kind":"ComputeDone","payload":{"x":0,"y":0,"action":"Move",)"
            R"("destination":"Secondary","target_x":0,"target_y":-3.9,"rank":2,"blocking_rank":1}})");
}

TEST(EventKind, NamesRoundTrip) {
  for (int k = 0; k <= static_cast<int>(EventKind::Sleep); ++k) {
    const auto kind = static_cast<EventKind>(k);
    EXPECT_EQ(event_kind_from_string(to_string(kind)), kind);
  }
  EXPECT_FALSE(event_kind_from_string("Teleport").has_value());
}

TEST(TraceJsonl, HeaderCarriesScenario) {
  const Scenario s = scenario("table1_instance1");
  const Trace t = run(s.config);
  const std::string text = trace_to_jsonl(t, s.name);
  const std::string first = text.substr(0, text.find('\n'));
  EXPECT_EQ(first.rfind(R"({"time":0,"robot_id":-1,"kind":"Config","payload":{"name":"table1_instance1")", 0), 0u)
      << first;
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), t.events.size() + 1);
}

TEST(TraceJsonl, ReloadReserializesToSameBytes) {
  const Scenario s = scenario("table2_instance3");
  const Trace t = run(s.config);
  const std::string text = trace_to_jsonl(t, s.name);
  std::istringstream in(text);
  const LoadedTrace back = trace_from_jsonl(in);
  EXPECT_EQ(back.scenario_name, s.name);
  ASSERT_EQ(back.trace.events.size(), t.events.size());
  EXPECT_EQ(trace_to_jsonl(back.trace, back.scenario_name), text);
  // The 9-digit trace still verifies.
  EXPECT_TRUE(verify_trace(back.trace).all_pass());
  EXPECT_EQ(back.trace.final_positions.size(), t.final_positions.size());
}

TEST(TraceJsonl, MalformedInputNamesTheLine) {
  const std::string header = trace_to_jsonl(Trace{scenario("table1_instance1").config, {}, {}, {}, 0});
  auto error_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      trace_from_jsonl(in);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(error_of(header + "{oops\n").find("trace line 2"), std::string::npos);
  EXPECT_NE(error_of(header + R"({"time":1,"robot_id":0,"kind":"Jump","payload":{"x":0,"y":0}})" "\n")
                .find("unknown kind"),
            std::string::npos);
  EXPECT_NE(error_of(header + R"({"time":1,"robot_id":9,"kind":"Wake","payload":{"x":0,"y":0}})" "\n")
                .find("robot_id out of range"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"time":1,"robot_id":0,"kind":"Wake","payload":{"x":0,"y":0}})" "\n")
                .find("Config"),
            std::string::npos);
  EXPECT_NE(error_of("").find("empty"), std::string::npos);
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ULL);
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}

// Committed hashes of every bundled paper scenario at its own seed. A change
// here means the simulation's observable behaviour changed.
TEST(GoldenTraces, PaperScenarioHashes) {
  std::ifstream in(std::string(PAINT_GOLDEN_DIR) + "/paper_trace_hashes.txt");
  ASSERT_TRUE(in) << "missing golden file";
  std::map<std::string, std::string> golden;
  std::string name, hash;
  while (in >> name >> hash) golden[name] = hash;
  ASSERT_EQ(golden.size(), 12u);
  for (const auto& [scenario_name, expected] : golden) {
    const Scenario s = scenario(scenario_name);
    EXPECT_EQ(hex64(trace_hash(run(s.config))), expected) << scenario_name;
  }
}

}  // namespace
}  // namespace paint
