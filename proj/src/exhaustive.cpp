#include "paint/exhaustive.hpp"

#include <cmath>
#include <cstring>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "paint/errors.hpp"

namespace paint {

namespace {

struct Plan {
  CycleAction action = CycleAction::Hold;
  Vec2 target = Vec2::Zero();        // global
  std::vector<Vec2> paint_route;     // global, Paint only
  double strip_lo = 0.0;             // global strip bounds, Paint only
  double strip_hi = 0.0;
};

struct State {
  std::vector<Vec2> pos;
  std::vector<std::optional<Plan>> pending;
  std::vector<bool> done;
  int first_mover = -1;
};

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

template <typename T>
void append_bytes(std::string& key, const T& v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  key.append(buf, sizeof(T));
}

std::string state_key(const State& s) {
  std::string key;
  for (std::size_t i = 0; i < s.pos.size(); ++i) {
    append_bytes(key, s.pos[i].x());
    append_bytes(key, s.pos[i].y());
    key.push_back(s.done[i] ? 'D' : 'A');
    if (s.pending[i]) {
      key.push_back(static_cast<char>('0' + static_cast<int>(s.pending[i]->action)));
      append_bytes(key, s.pending[i]->target.x());
      append_bytes(key, s.pending[i]->target.y());
    } else {
      key.push_back('-');
    }
  }
  append_bytes(key, s.first_mover);
  return key;
}

class Explorer {
 public:
  Explorer(const WorldRect& world, std::span<const RobotInit> robots, const ProtocolParams& params,
           std::size_t cap)
      : world_(world), robots_(robots.begin(), robots.end()), params_(params), cap_(cap) {
    for (const RobotInit& r : robots_) initial_.push_back(r.position);
    // Canonical vertical order at t = 0.
    const int n = static_cast<int>(robots_.size());
    order_.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Vec2& a = initial_[j];
        const Vec2& b = initial_[i];
        if (a.y() < b.y() || (a.y() == b.y() && a.x() < b.x())) ++order_[i];
      }
    }
  }

  ExhaustiveResult run(int depth) {
    State s;
    s.pos = initial_;
    s.pending.assign(robots_.size(), std::nullopt);
    s.done.assign(robots_.size(), false);
    std::vector<int> schedule;
    explore(s, depth, schedule);
    result_.states_explored = seen_.size();
    return result_;
  }

 private:
  bool all_done(const State& s) const {
    for (bool d : s.done) {
      if (!d) return false;
    }
    return true;
  }

  void report(const std::string& kind, const std::vector<int>& schedule, const std::string& detail) {
    if (result_.violations.size() < 50) result_.violations.push_back({kind, schedule, detail});
  }

  // Executes robot r's pending step in place; returns false on a violation.
  bool step(State& s, int r, const std::vector<int>& schedule) {
    if (!s.pending[r]) {
      const LocalFrame frame{s.pos[r], robots_[r].orientation, robots_[r].scale};
      const Snapshot snap = observe(world_, s.pos, r, frame);
      const ProtocolParams local = params_.in_units_of(frame);
      const CycleDecision d = plan_cycle(snap, local);
      Plan plan;
      plan.action = d.action;
      plan.target = to_global(frame, d.destination.target);
      if (d.action == CycleAction::Paint) {
        for (const Vec2& w : generate_paint_path(d.strip, local.eta).waypoints) {
          plan.paint_route.push_back(to_global(frame, w));
        }
        const double a = to_global(frame, Vec2(0.0, d.strip.lower_y)).y();
        const double b = to_global(frame, Vec2(0.0, d.strip.upper_y)).y();
        plan.strip_lo = std::min(a, b);
        plan.strip_hi = std::max(a, b);
      }
      s.pending[r] = std::move(plan);
      return true;
    }

    const Plan plan = std::move(*s.pending[r]);
    s.pending[r].reset();
    std::vector<Vec2> route;
    route.push_back(s.pos[r]);
    if (plan.action == CycleAction::Move) {
      route.emplace_back(s.pos[r].x(), plan.target.y());
      route.push_back(plan.target);
    } else if (plan.action == CycleAction::Paint) {
      for (std::size_t o = 0; o < s.pos.size(); ++o) {
        if (static_cast<int>(o) == r) continue;
        const double y = s.pos[o].y();
        if (y > plan.strip_lo + kGeomTol && y < plan.strip_hi - kGeomTol) {
          report("occupied_strip", schedule, "robot " + std::to_string(r) + " painted over robot " + std::to_string(o));
          return false;
        }
      }
      route.insert(route.end(), plan.paint_route.begin(), plan.paint_route.end());
      s.done[r] = true;
    } else {
      return true;
    }

    const double min_d = params_.collision_distance();
    for (std::size_t o = 0; o < s.pos.size(); ++o) {
      if (static_cast<int>(o) == r) continue;
      for (std::size_t k = 1; k < route.size(); ++k) {
        const double d = point_segment_distance(s.pos[o], route[k - 1], route[k]);
        if (d < min_d - kGeomTol) {
          std::ostringstream os;
          os << "robot " << r << " passed within " << d << " of robot " << o;
          report("collision", schedule, os.str());
          return false;
        }
      }
    }

    const Vec2 before = s.pos[r];
    s.pos[r] = route.back();
    if (s.first_mover < 0 && std::abs(s.pos[r].y() - before.y()) > kGeomTol) s.first_mover = r;
    // The vertical leg is monotone and everyone else is still, so the end
    // state decides whether a height was crossed (painting stays inside the
    // robot's empty strip).
    for (std::size_t o = 0; o < s.pos.size(); ++o) {
      if (static_cast<int>(o) == r) continue;
      const int lo = order_[o] < order_[r] ? static_cast<int>(o) : r;
      const int hi = lo == r ? static_cast<int>(o) : r;
      if (plan.action == CycleAction::Move && s.pos[lo].y() > s.pos[hi].y() + kGeomTol) {
        report("crossing", schedule, "robot " + std::to_string(lo) + " rose above robot " + std::to_string(hi));
        return false;
      }
    }
    return true;
  }

  // Round-robin from `s` until everyone is done.
  void complete_fairly(State s, std::vector<int> schedule) {
    const int n = static_cast<int>(s.pos.size());
    const std::size_t limit = 20000;
    for (std::size_t iter = 0; iter < limit && !all_done(s); ++iter) {
      const int r = static_cast<int>(iter % n);
      if (s.done[r]) continue;
      schedule.push_back(r);
      if (!step(s, r, schedule)) return;
      schedule.push_back(r);
      if (!s.done[r] && !step(s, r, schedule)) return;
    }
    if (!all_done(s)) {
      report("liveness", schedule, "round-robin schedule did not finish");
      return;
    }
    if (s.first_mover >= 0) result_.first_vertical_movers.insert(s.first_mover);
  }

  void explore(const State& s, int depth, std::vector<int>& schedule) {
    const std::string key = state_key(s);
    auto it = seen_.find(key);
    if (it != seen_.end() && it->second >= depth) return;
    seen_[key] = depth;
    if (seen_.size() > cap_) {
      result_.partial = true;
      return;
    }

    if (all_done(s)) {
      if (s.first_mover >= 0) result_.first_vertical_movers.insert(s.first_mover);
      return;
    }
    if (depth == 0) {
      ++result_.frontier_states;
      complete_fairly(s, schedule);
      return;
    }
    for (int r = 0; r < static_cast<int>(s.pos.size()); ++r) {
      if (s.done[r]) continue;
      State next = s;
      schedule.push_back(r);
      if (step(next, r, schedule)) explore(next, depth - 1, schedule);
      schedule.pop_back();
    }
  }

  WorldRect world_;
  std::vector<RobotInit> robots_;
  ProtocolParams params_;
  std::size_t cap_;
  std::vector<Vec2> initial_;
  std::vector<int> order_;
  ExhaustiveResult result_;
  std::unordered_map<std::string, int> seen_;
};

}  // namespace

ExhaustiveResult exhaustive_schedule_check(const WorldRect& world, std::span<const RobotInit> robots,
                                           const ProtocolParams& params, int depth, std::size_t state_cap) {
  if (robots.empty() || robots.size() > 3) throw ConfigError("exhaustive check supports 1 to 3 robots");
  if (depth < 0) throw ConfigError("depth must be non-negative");
  SimConfig cfg;
  cfg.world = world;
  cfg.robots.assign(robots.begin(), robots.end());
  cfg.params = params;
  cfg.validate();
  return Explorer(world, robots, params, state_cap).run(depth);
}

}  // namespace paint
