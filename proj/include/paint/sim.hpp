#pragma once

// Deterministic discrete-event simulation of N asynchronous robots running
// the painting protocol.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "paint/frames.hpp"
#include "paint/protocol.hpp"

namespace paint {

struct RobotInit {
  Vec2 position = Vec2::Zero();
  Orientation orientation = Orientation::Positive;
  double scale = 1.0;
};

struct ScheduleConfig {
  std::uint64_t seed = 1;
  double cycle_min = 0.1;          // seconds, observe -> compute delay lower bound
  double cycle_max = 1.0;          // seconds, upper bound
  double sleep_probability = 0.1;  // per cycle end
  double max_sleep = 5.0;          // S_max, seconds
  double velocity = 1.0;           // length units / second
  double time_step = 0.05;         // motion integration granularity, seconds

  void validate() const;
};

struct SimConfig {
  WorldRect world;
  std::vector<RobotInit> robots;
  ProtocolParams params;
  ScheduleConfig schedule;

  int robot_count() const { return static_cast<int>(robots.size()); }
  /// All run() preconditions; throws ConfigError naming the first violation.
  void validate() const;
  /// Liveness bound 50 * (diameter/v + LB/(2 eta N v) + N * S_max).
  double watchdog_bound() const;
};

enum class RobotMode { Sleeping, Cycling, AtFinalWaiting, Painting, Done };

struct RobotState {
  int id = 0;
  Vec2 position = Vec2::Zero();
  LocalFrame frame;
  RobotMode mode = RobotMode::Sleeping;
  double wake_time = 0.0;
};

/// Advances along the vertical-then-horizontal path to `target` by at most
/// dt * v. Lands exactly on the corner and on the target.
RobotState step_motion(RobotState state, const Vec2& target, double dt, double v);

enum class EventKind {
  Wake,
  ObserveDone,
  ComputeDone,
  MoveStep,
  ReachedSecondary,
  ReachedFinal,
  WaitingStripOccupied,
  TieWait,
  PaintStart,
  PaintStep,
  PaintDone,
  Sleep,
};

std::string_view to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(std::string_view name);

struct ComputeInfo {
  CycleAction action = CycleAction::Move;
  DestinationKind destination = DestinationKind::Final;
  Vec2 target = Vec2::Zero();  // global
  int rank = 1;                // in the robot's own frame
  std::optional<int> blocking_rank;
};

struct SimEvent {
  double time = 0.0;
  int robot_id = 0;
  EventKind kind = EventKind::Wake;
  Vec2 position = Vec2::Zero();      // robot position after the event
  std::optional<ComputeInfo> compute;  // ComputeDone only
  double wake_time = 0.0;              // Sleep only

  bool changes_position() const {
    return kind == EventKind::MoveStep || kind == EventKind::PaintStep;
  }
};

struct Trace {
  SimConfig config;
  std::vector<SimEvent> events;
  std::vector<Vec2> final_positions;
  /// Every position each robot occupied, in order.
  std::vector<std::vector<Vec2>> paths;
  double completion_time = 0.0;

  /// Recomputes final_positions, paths and completion_time from the events.
  void finalize();
};

/// Per-run timing figures.
struct TraceSummary {
  bool completed = false;
  double t1 = 0.0;           // latest PaintStart
  double t2 = 0.0;           // longest PaintStart -> PaintDone
  double path_length = 0.0;  // longest Phase-II polyline
  double completion = 0.0;
};

TraceSummary summarize(const Trace& trace);

class LivenessFailure : public std::runtime_error {
 public:
  LivenessFailure(const std::string& what, Trace trace)
      : std::runtime_error(what), trace_(std::make_shared<Trace>(std::move(trace))) {}
  const Trace& trace() const { return *trace_; }

 private:
  std::shared_ptr<const Trace> trace_;
};

/// Runs the protocol until every robot is Done. Throws ConfigError on bad
/// input and LivenessFailure if simulated time passes the watchdog bound.
Trace run(const SimConfig& config);

}  // namespace paint
