#include "paint/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <queue>
#include <sstream>

#include "paint/errors.hpp"
#include "paint/rng.hpp"

namespace paint {

namespace {

constexpr std::array<std::string_view, 12> kEventNames = {
    "Wake",         "ObserveDone",          "ComputeDone", "MoveStep",
    "ReachedSecondary", "ReachedFinal",     "WaitingStripOccupied", "TieWait",
    "PaintStart",   "PaintStep",            "PaintDone",   "Sleep",
};

// Moves `pos` up to `budget` along `waypoints`, consuming reached ones.
void advance(std::deque<Vec2>& waypoints, Vec2& pos, double budget) {
  while (!waypoints.empty()) {
    const double gap = (waypoints.front() - pos).norm();
    if (gap <= budget) {
      budget -= gap;
      pos = waypoints.front();
      waypoints.pop_front();
      continue;
    }
    pos += (waypoints.front() - pos) * (budget / gap);
    return;
  }
}

std::deque<Vec2> l_path(const Vec2& from, const Vec2& target) {
  std::deque<Vec2> path;
  const Vec2 corner(from.x(), target.y());
  if (corner != from) path.push_back(corner);
  if (target != corner) path.push_back(target);
  return path;
}

enum class Step { StartAsleep, Wake, Observe, ComputeDone, Move, Paint };

struct Pending {
  double time;
  int robot;
  std::uint64_t seq;
  Step step;

  bool operator>(const Pending& o) const {
    if (time != o.time) return time > o.time;
    if (robot != o.robot) return robot > o.robot;
    return seq > o.seq;
  }
};

struct Runtime {
  RobotState state;
  CycleDecision decision;
  Vec2 target = Vec2::Zero();
  std::deque<Vec2> route;
  double step_length = 0.0;
  bool last_step = false;
  double paint_start = 0.0;
};

class Engine {
 public:
  explicit Engine(const SimConfig& config) : config_(config), rng_(config.schedule.seed) {
    trace_.config = config;
  }

  Trace run() {
    const ScheduleConfig& sched = config_.schedule;
    for (int i = 0; i < config_.robot_count(); ++i) {
      const RobotInit& init = config_.robots[i];
      Runtime rt;
      rt.state.id = i;
      rt.state.position = init.position;
      rt.state.frame = LocalFrame{init.position, init.orientation, init.scale};
      rt.state.mode = RobotMode::Sleeping;
      robots_.push_back(rt);
    }
    for (int i = 0; i < config_.robot_count(); ++i) {
      if (rng_.bernoulli(sched.sleep_probability)) {
        robots_[i].state.wake_time = sleep_duration();
        schedule(0.0, i, Step::StartAsleep);
      } else {
        schedule(rng_.uniform(0.0, sched.cycle_max), i, Step::Wake);
      }
    }

    const double bound = config_.watchdog_bound();
    while (!queue_.empty()) {
      const Pending next = queue_.top();
      queue_.pop();
      if (next.time > bound) {
        trace_.finalize();
        std::ostringstream os;
        os << "liveness failure: simulated time " << next.time << " exceeds watchdog bound "
           << bound;
        throw LivenessFailure(os.str(), std::move(trace_));
      }
      now_ = next.time;
      dispatch(next);
    }
    trace_.finalize();
    return std::move(trace_);
  }

 private:
  void schedule(double time, int robot, Step step) { queue_.push(Pending{time, robot, seq_++, step}); }

  double sleep_duration() {
    // (0, S_max]
    return config_.schedule.max_sleep * (1.0 - rng_.uniform());
  }

  SimEvent& emit(int robot, EventKind kind) {
    SimEvent ev;
    ev.time = now_;
    ev.robot_id = robot;
    ev.kind = kind;
    ev.position = robots_[robot].state.position;
    trace_.events.push_back(ev);
    return trace_.events.back();
  }

  std::vector<Vec2> positions() const {
    std::vector<Vec2> out;
    out.reserve(robots_.size());
    for (const Runtime& rt : robots_) out.push_back(rt.state.position);
    return out;
  }

  void dispatch(const Pending& p) {
    Runtime& rt = robots_[p.robot];
    switch (p.step) {
      case Step::StartAsleep: {
        SimEvent& ev = emit(p.robot, EventKind::Sleep);
        ev.wake_time = rt.state.wake_time;
        schedule(rt.state.wake_time, p.robot, Step::Wake);
        break;
      }
      case Step::Wake:
        if (rt.state.mode == RobotMode::Sleeping) rt.state.mode = RobotMode::Cycling;
        emit(p.robot, EventKind::Wake);
        schedule(now_, p.robot, Step::Observe);
        break;
      case Step::Observe: observe(p.robot); break;
      case Step::ComputeDone: compute_done(p.robot); break;
      case Step::Move: motion_step(p.robot, false); break;
      case Step::Paint: motion_step(p.robot, true); break;
    }
  }

  void observe(int robot) {
    Runtime& rt = robots_[robot];
    rt.state.frame.origin = rt.state.position;
    const std::vector<Vec2> all = positions();
    const Snapshot snap = paint::observe(config_.world, all, robot, rt.state.frame);
    rt.decision = plan_cycle(snap, config_.params.in_units_of(rt.state.frame));
    rt.target = to_global(rt.state.frame, rt.decision.destination.target);
    emit(robot, EventKind::ObserveDone);
    const ScheduleConfig& sched = config_.schedule;
    schedule(now_ + rng_.uniform(sched.cycle_min, sched.cycle_max), robot, Step::ComputeDone);
  }

  void compute_done(int robot) {
    Runtime& rt = robots_[robot];
    SimEvent& ev = emit(robot, EventKind::ComputeDone);
    ComputeInfo info;
    info.action = rt.decision.action;
    info.destination = rt.decision.destination.kind;
    info.target = rt.target;
    info.rank = rt.decision.rank.value;
    info.blocking_rank = rt.decision.destination.blocking_rank;
    ev.compute = info;

    switch (rt.decision.action) {
      case CycleAction::Move:
        rt.state.mode = RobotMode::Cycling;
        rt.route = l_path(rt.state.position, rt.target);
        schedule_motion(robot, Step::Move);
        break;
      case CycleAction::Hold:
        emit(robot, EventKind::ReachedSecondary);
        end_cycle(robot);
        break;
      case CycleAction::TieWait:
        emit(robot, EventKind::TieWait);
        end_cycle(robot);
        break;
      case CycleAction::StripOccupied:
        rt.state.mode = RobotMode::AtFinalWaiting;
        emit(robot, EventKind::WaitingStripOccupied);
        end_cycle(robot);
        break;
      case CycleAction::Paint: {
        rt.state.mode = RobotMode::Painting;
        rt.paint_start = now_;
        emit(robot, EventKind::PaintStart);
        const PaintPath path = generate_paint_path(rt.decision.strip,
                                                   config_.params.in_units_of(rt.state.frame).eta);
        rt.route.clear();
        for (const Vec2& w : path.waypoints) rt.route.push_back(to_global(rt.state.frame, w));
        rt.route.pop_front();  // the corner the robot stands on
        schedule_motion(robot, Step::Paint);
        break;
      }
    }
  }

  // Steps never pass a waypoint, so every corner of the route is sampled.
  void schedule_motion(int robot, Step step) {
    Runtime& rt = robots_[robot];
    const double v = config_.schedule.velocity;
    const double to_waypoint = rt.route.empty() ? 0.0 : (rt.route.front() - rt.state.position).norm();
    const double full = v * config_.schedule.time_step;
    rt.last_step = to_waypoint <= full;
    rt.step_length = rt.last_step ? to_waypoint : full;
    schedule(now_ + (rt.last_step ? to_waypoint / v : config_.schedule.time_step), robot, step);
  }

  void motion_step(int robot, bool painting) {
    Runtime& rt = robots_[robot];
    if (rt.last_step) {
      if (!rt.route.empty()) {
        rt.state.position = rt.route.front();
        rt.route.pop_front();
      }
    } else {
      advance(rt.route, rt.state.position, rt.step_length);
    }
    emit(robot, painting ? EventKind::PaintStep : EventKind::MoveStep);
    if (!rt.route.empty()) {
      schedule_motion(robot, painting ? Step::Paint : Step::Move);
      return;
    }
    if (painting) {
      rt.state.mode = RobotMode::Done;
      emit(robot, EventKind::PaintDone);
      return;
    }
    const bool final_leg = rt.decision.destination.kind == DestinationKind::Final;
    emit(robot, final_leg ? EventKind::ReachedFinal : EventKind::ReachedSecondary);
    end_cycle(robot);
  }

  void end_cycle(int robot) {
    Runtime& rt = robots_[robot];
    if (rng_.bernoulli(config_.schedule.sleep_probability)) {
      rt.state.mode = RobotMode::Sleeping;
      rt.state.wake_time = now_ + sleep_duration();
      SimEvent& ev = emit(robot, EventKind::Sleep);
      ev.wake_time = rt.state.wake_time;
      schedule(rt.state.wake_time, robot, Step::Wake);
    } else {
      schedule(now_, robot, Step::Observe);
    }
  }

  const SimConfig& config_;
  Rng rng_;
  Trace trace_;
  std::vector<Runtime> robots_;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue_;
  std::uint64_t seq_ = 0;
  double now_ = 0.0;
};

}  // namespace

std::string_view to_string(EventKind kind) { return kEventNames[static_cast<std::size_t>(kind)]; }

std::optional<EventKind> event_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kEventNames.size(); ++i) {
    if (kEventNames[i] == name) return static_cast<EventKind>(i);
  }
  return std::nullopt;
}

void ScheduleConfig::validate() const {
  if (!(cycle_min > 0.0) || !(cycle_max >= cycle_min) || !std::isfinite(cycle_max)) {
    throw ConfigError("cycle length range must satisfy 0 < min <= max < inf");
  }
  if (!(sleep_probability >= 0.0 && sleep_probability < 1.0)) {
    throw ConfigError("sleep_probability must lie in [0, 1)");
  }
  if (!(max_sleep > 0.0) || !std::isfinite(max_sleep)) {
    throw ConfigError("max_sleep (S_max) must be positive and finite");
  }
  if (!(velocity > 0.0)) throw ConfigError("velocity must be positive");
  if (!(time_step > 0.0)) throw ConfigError("time_step must be positive");
}

void SimConfig::validate() const {
  world.validate();
  params.validate();
  schedule.validate();
  if (robots.empty()) throw ConfigError("at least one robot is required");
  for (std::size_t i = 0; i < robots.size(); ++i) {
    const RobotInit& r = robots[i];
    if (!(r.scale > 0.0) || !std::isfinite(r.scale)) {
      throw ConfigError("robot " + std::to_string(i) + ": scale must be positive");
    }
    if (!world.strictly_contains(r.position)) {
      std::ostringstream os;
      os << "robot " << i << " at (" << r.position.x() << ", " << r.position.y()
         << ") is not strictly inside the world";
      throw ConfigError(os.str());
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((robots[j].position - r.position).norm() <= kGeomTol) {
        throw ConfigError("duplicate position: robots " + std::to_string(j) + " and " +
                          std::to_string(i));
      }
    }
  }
  const double needed = robot_count() * 2.0 * params.eta;
  if (needed > world.breadth() * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "strip too thin: N*2*eta = " << needed << " exceeds the region breadth B = "
       << world.breadth();
    throw ConfigError(os.str());
  }
}

double SimConfig::watchdog_bound() const {
  const double n = robot_count();
  const double v = schedule.velocity;
  const double travel = world.diameter() / v;
  const double paint = world.length() * world.breadth() / (2.0 * params.eta * n * v);
  return 50.0 * (travel + paint + n * schedule.max_sleep);
}

RobotState step_motion(RobotState state, const Vec2& target, double dt, double v) {
  std::deque<Vec2> route = l_path(state.position, target);
  advance(route, state.position, dt * v);
  state.frame.origin = state.position;
  return state;
}

void Trace::finalize() {
  const int n = config.robot_count();
  paths.assign(n, {});
  final_positions.assign(n, Vec2::Zero());
  for (int i = 0; i < n; ++i) {
    paths[i].push_back(config.robots[i].position);
    final_positions[i] = config.robots[i].position;
  }
  completion_time = 0.0;
  for (const SimEvent& ev : events) {
    if (ev.changes_position()) {
      paths[ev.robot_id].push_back(ev.position);
      final_positions[ev.robot_id] = ev.position;
    }
    if (ev.kind == EventKind::PaintDone) completion_time = std::max(completion_time, ev.time);
  }
}

TraceSummary summarize(const Trace& trace) {
  const int n = trace.config.robot_count();
  std::vector<std::optional<double>> start(n);
  std::vector<Vec2> last(n);
  std::vector<double> length(n, 0.0);
  int done = 0;
  TraceSummary s;
  for (const SimEvent& ev : trace.events) {
    switch (ev.kind) {
      case EventKind::PaintStart:
        start[ev.robot_id] = ev.time;
        last[ev.robot_id] = ev.position;
        s.t1 = std::max(s.t1, ev.time);
        break;
      case EventKind::PaintStep:
        length[ev.robot_id] += (ev.position - last[ev.robot_id]).norm();
        last[ev.robot_id] = ev.position;
        break;
      case EventKind::PaintDone:
        ++done;
        if (start[ev.robot_id]) s.t2 = std::max(s.t2, ev.time - *start[ev.robot_id]);
        s.completion = std::max(s.completion, ev.time);
        break;
      default: break;
    }
  }
  s.path_length = n > 0 ? *std::max_element(length.begin(), length.end()) : 0.0;
  s.completed = done == n;
  return s;
}

Trace run(const SimConfig& config) {
  config.validate();
  return Engine(config).run();
}

}  // namespace paint
