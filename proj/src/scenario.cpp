#include "paint/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "paint/errors.hpp"

namespace paint {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::string_view source, const std::string& msg) {
  throw ConfigError(std::string(source) + ": " + msg);
}

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed,
                    std::string_view source) {
  if (!obj.is_object()) fail(source, std::string(where) + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) fail(source, "unknown field '" + key + "' in " + std::string(where));
  }
}

double number(const json& obj, const char* key, std::string_view where, std::string_view source) {
  if (!obj.contains(key)) fail(source, std::string(where) + " is missing '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) fail(source, std::string(where) + "." + key + " must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, std::string_view where,
                 std::string_view source) {
  return obj.contains(key) ? number(obj, key, where, source) : fallback;
}

// Line and column of a byte offset, both 1-based.
std::pair<int, int> line_col(std::string_view text, std::size_t offset) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

char orientation_letter(Orientation o) { return o == Orientation::Positive ? 'P' : 'N'; }

Scenario scenario_from_json(const json& doc, std::string_view source) {
  reject_unknown(doc, "scenario", {"name", "world", "robots", "params", "schedule"}, source);
  Scenario sc;
  if (doc.contains("name")) {  // defaults to the file stem
    if (!doc["name"].is_string()) fail(source, "name must be a string");
    sc.name = doc["name"].get<std::string>();
  }

  sc.config.world = paper_world();
  if (doc.contains("world")) {
    const json& w = doc["world"];
    reject_unknown(w, "world", {"x_min", "x_max", "y_min", "y_max"}, source);
    sc.config.world = WorldRect{number(w, "x_min", "world", source), number(w, "x_max", "world", source),
                                number(w, "y_min", "world", source), number(w, "y_max", "world", source)};
  }

  if (!doc.contains("robots") || !doc["robots"].is_array()) fail(source, "'robots' must be an array");
  int index = 0;
  for (const json& r : doc["robots"]) {
    const std::string where = "robots[" + std::to_string(index++) + "]";
    reject_unknown(r, where, {"x", "y", "orientation", "scale"}, source);
    RobotInit init;
    init.position = Vec2(number(r, "x", where, source), number(r, "y", where, source));
    if (r.contains("orientation") && !r["orientation"].is_string()) {
      fail(source, where + ".orientation must be \"P\" or \"N\"");
    }
    const std::string o = r.value("orientation", std::string("P"));
    if (o == "P") {
      init.orientation = Orientation::Positive;
    } else if (o == "N") {
      init.orientation = Orientation::Negative;
    } else {
      fail(source, where + ".orientation must be \"P\" or \"N\"");
    }
    init.scale = number_or(r, "scale", 1.0, where, source);
    sc.config.robots.push_back(init);
  }

  if (doc.contains("params")) {
    const json& p = doc["params"];
    reject_unknown(p, "params", {"eta", "eps"}, source);
    const double eta = number_or(p, "eta", kDefaultEta, "params", source);
    sc.config.params = ProtocolParams{eta, number_or(p, "eps", eta / 4.0, "params", source)};
  }

  if (doc.contains("schedule")) {
    const json& s = doc["schedule"];
    reject_unknown(s, "schedule",
                   {"seed", "cycle_min", "cycle_max", "sleep_probability", "max_sleep", "velocity",
                    "time_step"},
                   source);
    ScheduleConfig& sched = sc.config.schedule;
    if (s.contains("seed")) {
      if (!s["seed"].is_number_unsigned()) fail(source, "schedule.seed must be a non-negative integer");
      sched.seed = s["seed"].get<std::uint64_t>();
    }
    sched.cycle_min = number_or(s, "cycle_min", sched.cycle_min, "schedule", source);
    sched.cycle_max = number_or(s, "cycle_max", sched.cycle_max, "schedule", source);
    sched.sleep_probability = number_or(s, "sleep_probability", sched.sleep_probability, "schedule", source);
    sched.max_sleep = number_or(s, "max_sleep", sched.max_sleep, "schedule", source);
    sched.velocity = number_or(s, "velocity", sched.velocity, "schedule", source);
    sched.time_step = number_or(s, "time_step", sched.time_step, "schedule", source);
  }

  try {
    sc.config.validate();
  } catch (const ConfigError& e) {
    fail(source, e.what());
  }
  return sc;
}

Scenario parse_scenario(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream os;
    os << "parse error at line " << line << ", column " << col << ": " << e.what();
    fail(source, os.str());
  }
  return scenario_from_json(doc, source);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  Scenario sc = parse_scenario(buf.str(), path.string());
  if (sc.name.empty()) sc.name = path.stem().string();
  return sc;
}

nlohmann::ordered_json scenario_to_json(const Scenario& sc) {
  nlohmann::ordered_json doc;
  doc["name"] = sc.name;
  const WorldRect& w = sc.config.world;
  doc["world"] = {{"x_min", w.x_min}, {"x_max", w.x_max}, {"y_min", w.y_min}, {"y_max", w.y_max}};
  doc["robots"] = nlohmann::ordered_json::array();
  for (const RobotInit& r : sc.config.robots) {
    doc["robots"].push_back({{"x", r.position.x()},
                             {"y", r.position.y()},
                             {"orientation", std::string(1, orientation_letter(r.orientation))},
                             {"scale", r.scale}});
  }
  doc["params"] = {{"eta", sc.config.params.eta}, {"eps", sc.config.params.eps}};
  const ScheduleConfig& s = sc.config.schedule;
  doc["schedule"] = {{"seed", s.seed},
                     {"cycle_min", s.cycle_min},
                     {"cycle_max", s.cycle_max},
                     {"sleep_probability", s.sleep_probability},
                     {"max_sleep", s.max_sleep},
                     {"velocity", s.velocity},
                     {"time_step", s.time_step}};
  return doc;
}

std::string serialize_scenario(const Scenario& sc) { return scenario_to_json(sc).dump(2) + "\n"; }

}  // namespace paint
