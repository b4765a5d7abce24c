#include "paint/trace_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "paint/errors.hpp"

namespace paint {

namespace {

std::string_view destination_name(DestinationKind k) {
  return k == DestinationKind::Final ? "Final" : "Secondary";
}

CycleAction action_from_string(std::string_view s, int line) {
  for (CycleAction a : {CycleAction::Move, CycleAction::Hold, CycleAction::TieWait,
                        CycleAction::StripOccupied, CycleAction::Paint}) {
    if (to_string(a) == s) return a;
  }
  throw ConfigError("trace line " + std::to_string(line) + ": unknown action '" + std::string(s) + "'");
}

}  // namespace

std::string format_float(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string event_to_json_line(const SimEvent& ev) {
  std::string out;
  out.reserve(128);
  out += "{\"time\":";
  out += format_float(ev.time);
  out += ",\"robot_id\":";
  out += std::to_string(ev.robot_id);
  out += ",\"kind\":\"";
  out += to_string(ev.kind);
  out += "\",\"payload\":{\"x\":";
  out += format_float(ev.position.x());
  out += ",\"y\":";
  out += format_float(ev.position.y());
  if (ev.kind == EventKind::ComputeDone && ev.compute) {
    const ComputeInfo& c = *ev.compute;
    out += ",\"action\":\"";
    out += to_string(c.action);
    out += "\",\"destination\":\"";
    out += destination_name(c.destination);
    out += "\",\"target_x\":";
    out += format_float(c.target.x());
    out += ",\"target_y\":";
    out += format_float(c.target.y());
    out += ",\"rank\":";
    out += std::to_string(c.rank);
    if (c.blocking_rank) {
      out += ",\"blocking_rank\":";
      out += std::to_string(*c.blocking_rank);
    }
  }
  if (ev.kind == EventKind::Sleep) {
    out += ",\"wake_time\":";
    out += format_float(ev.wake_time);
  }
  out += "}}";
  return out;
}

std::string trace_to_jsonl(const Trace& trace, std::string_view scenario_name) {
  nlohmann::ordered_json header;
  header["time"] = 0;
  header["robot_id"] = -1;
  header["kind"] = "Config";
  header["payload"] = scenario_to_json(Scenario{std::string(scenario_name), trace.config});

  std::string out = header.dump();
  out += '\n';
  for (const SimEvent& ev : trace.events) {
    out += event_to_json_line(ev);
    out += '\n';
  }
  return out;
}

void write_trace(const Trace& trace, const std::filesystem::path& path, std::string_view scenario_name) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path.string() + ": cannot write trace");
  out << trace_to_jsonl(trace, scenario_name);
}

LoadedTrace trace_from_jsonl(std::istream& in) {
  LoadedTrace loaded;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      const std::string kind = j.at("kind").get<std::string>();
      if (!have_header) {
        if (kind != "Config") throw ConfigError("trace line 1: expected a Config record");
        Scenario sc = scenario_from_json(j.at("payload"), "trace header");
        loaded.scenario_name = sc.name;
        loaded.trace.config = std::move(sc.config);
        have_header = true;
        continue;
      }
      const auto ek = event_kind_from_string(kind);
      if (!ek) throw ConfigError("trace line " + std::to_string(line_no) + ": unknown kind '" + kind + "'");
      SimEvent ev;
      ev.time = j.at("time").get<double>();
      ev.robot_id = j.at("robot_id").get<int>();
      ev.kind = *ek;
      const auto& p = j.at("payload");
      ev.position = Vec2(p.at("x").get<double>(), p.at("y").get<double>());
      if (ev.kind == EventKind::ComputeDone) {
        ComputeInfo c;
        c.action = action_from_string(p.at("action").get<std::string>(), line_no);
        c.destination = p.at("destination").get<std::string>() == "Final" ? DestinationKind::Final
                                                                        : DestinationKind::Secondary;
        c.target = Vec2(p.at("target_x").get<double>(), p.at("target_y").get<double>());
        c.rank = p.at("rank").get<int>();
        if (p.contains("blocking_rank")) c.blocking_rank = p["blocking_rank"].get<int>();
        ev.compute = c;
      }
      if (ev.kind == EventKind::Sleep) ev.wake_time = p.at("wake_time").get<double>();
      if (ev.robot_id < 0 || ev.robot_id >= loaded.trace.config.robot_count()) {
        throw ConfigError("trace line " + std::to_string(line_no) + ": robot_id out of range");
      }
      loaded.trace.events.push_back(ev);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw ConfigError("trace is empty");
  loaded.trace.finalize();
  return loaded;
}

LoadedTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open trace");
  return trace_from_jsonl(in);
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

class Fnv1a {
 public:
  template <typename T>
  void add(const T& v) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    for (const unsigned char c : bytes) {
      h_ ^= c;
      h_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::uint64_t trace_hash(const Trace& trace) {
  Fnv1a h;
  h.add(fnv1a(scenario_to_json(Scenario{"", trace.config}).dump()));
  for (const SimEvent& ev : trace.events) {
    h.add(ev.time);
    h.add(ev.robot_id);
    h.add(static_cast<int>(ev.kind));
    h.add(ev.position.x());
    h.add(ev.position.y());
    if (ev.compute) {
      h.add(static_cast<int>(ev.compute->action));
      h.add(static_cast<int>(ev.compute->destination));
      h.add(ev.compute->target.x());
      h.add(ev.compute->target.y());
      h.add(ev.compute->rank);
      h.add(ev.compute->blocking_rank.value_or(0));
    }
    h.add(ev.wake_time);
  }
  return h.value();
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace paint
