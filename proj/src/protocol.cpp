#include "paint/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "paint/errors.hpp"

namespace paint {

namespace {

// Strict (y, then x) order with a tolerance on the height comparison.
bool before(const Vec2& a, const Vec2& b, double tol) {
  if (a.y() < b.y() - tol) return true;
  if (std::abs(a.y() - b.y()) <= tol) return a.x() < b.x();
  return false;
}

int sign(double v, double tol) {
  if (v > tol) return 1;
  if (v < -tol) return -1;
  return 0;
}

}  // namespace

void ProtocolParams::validate() const {
  if (!(eta > 0.0)) throw ConfigError("eta must be positive");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  if (!(eps < 2.0 * eta)) throw ConfigError("eps must be smaller than 2*eta");
}

double ProtocolParams::collision_distance() const { return std::min(eps, 2.0 * eta) / 2.0; }

double PaintPath::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) total += (waypoints[i] - waypoints[i - 1]).norm();
  return total;
}

std::vector<double> PaintPath::lane_heights() const {
  std::vector<double> lanes;
  for (const Vec2& w : waypoints) {
    if (lanes.empty() || lanes.back() != w.y()) lanes.push_back(w.y());
  }
  return lanes;
}

int rank_of(const Snapshot& snap, const Vec2& p) {
  const double tol = snap.tolerance;
  int below = before(Vec2::Zero(), p, tol) ? 1 : 0;
  for (const Vec2& q : snap.others) {
    if (before(q, p, tol)) ++below;
  }
  return below + 1;
}

Rank compute_rank(const Snapshot& snap) {
  const double tol = snap.tolerance;
  for (std::size_t i = 0; i < snap.others.size(); ++i) {
    if (snap.others[i].norm() <= tol) {
      throw ProtocolViolation("snapshot has a robot at the observer's position");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((snap.others[i] - snap.others[j]).norm() <= tol) {
        throw ProtocolViolation("snapshot has two robots at the same position");
      }
    }
  }
  return Rank{rank_of(snap, Vec2::Zero()), snap.robot_count()};
}

Strip compute_strip(const Snapshot& snap, const Rank& rank) {
  const double height = (snap.upper - snap.lower) / rank.n_total;
  Strip strip;
  strip.index = rank.value;
  strip.lower_y = snap.lower + (rank.value - 1) * height;
  strip.upper_y = snap.lower + rank.value * height;
  strip.left_x = snap.left;
  strip.right_x = snap.right;
  return strip;
}

Destination compute_destination(const Snapshot& snap, const Rank& /*rank*/, const Strip& strip,
                                double eps, double eta) {
  if (!(eps > 0.0) || !(eta > 0.0)) throw ConfigError("eps and eta must be positive");
  const double tol = snap.tolerance;
  const Vec2 corner = painting_corner(strip, eta);

  auto hold = [&](const Vec2& blocker) {
    return Destination{DestinationKind::Secondary, Vec2::Zero(), rank_of(snap, blocker)};
  };

  const int dir = sign(corner.y(), tol);
  if (dir != 0) {
    // Nearest robot strictly ahead, up to eps past the target height.
    const double reach = dir * corner.y() + eps;
    const Vec2* blocker = nullptr;
    for (const Vec2& q : snap.others) {
      const double ahead = dir * q.y();
      if (ahead > tol && ahead < reach - tol && (!blocker || ahead < dir * blocker->y())) {
        blocker = &q;
      }
    }
    if (blocker) {
      const double halt = blocker->y() - dir * eps;
      if (dir * halt <= tol) return hold(*blocker);
      return Destination{DestinationKind::Secondary, Vec2(0.0, halt), rank_of(snap, *blocker)};
    }
  }

  // The horizontal leg runs at the target height; it waits for any robot
  // lying within eps of that line inside the leg's span.
  if (std::abs(corner.x()) > tol) {
    const double lo = std::min(0.0, corner.x()) - eps;
    const double hi = std::max(0.0, corner.x()) + eps;
    for (const Vec2& q : snap.others) {
      if (std::abs(q.y() - corner.y()) < eps - tol && q.x() >= lo && q.x() <= hi) return hold(q);
    }
  }
  return Destination{DestinationKind::Final, corner, std::nullopt};
}

bool has_tied_robot(const Snapshot& snap) {
  return std::any_of(snap.others.begin(), snap.others.end(),
                     [&](const Vec2& q) { return std::abs(q.y()) <= snap.tolerance; });
}

TieDecision decide_tie(const Snapshot& snap, const Rank& rank, const Destination& dest) {
  const double tol = snap.tolerance;
  bool any_tied = false;
  bool move = true;
  const int dir = sign(dest.target.y(), tol);
  for (const Vec2& q : snap.others) {
    if (std::abs(q.y()) > tol) continue;
    any_tied = true;
    const int other = rank_of(snap, q);
    const bool case_a = rank.value > other && dir > 0;
    const bool case_b = rank.value < other && dir < 0;
    move = move && (case_a || case_b);
  }
  if (!any_tied) throw ProtocolViolation("decide_tie called without a robot at the same height");
  return move ? TieDecision::MoveNow : TieDecision::Wait;
}

bool strip_empty(const Snapshot& snap, const Strip& strip) {
  const double tol = snap.tolerance;
  for (const Vec2& q : snap.others) {
    const bool inside_y = q.y() > strip.lower_y + tol && q.y() < strip.upper_y - tol;
    const bool inside_x = q.x() >= strip.left_x - tol && q.x() <= strip.right_x + tol;
    if (inside_y && inside_x) return false;
  }
  return true;
}

PaintPath generate_paint_path(const Strip& strip, double eta) {
  if (!(eta > 0.0)) throw ConfigError("eta must be positive");
  const double height = strip.height();
  const double rel_tol = 1e-9 * std::max(1.0, height);
  if (height < 2.0 * eta - rel_tol) {
    std::ostringstream os;
    os << "strip too thin: height " << height << " is below the brush width 2*eta = " << 2.0 * eta
       << " (need N*2*eta <= B)";
    throw ConfigError(os.str());
  }

  const int lanes = std::max(1, static_cast<int>(std::ceil(height / (2.0 * eta) - 1e-9)));
  std::vector<double> heights;
  heights.reserve(lanes);
  if (lanes == 1) {
    heights.push_back(0.5 * (strip.lower_y + strip.upper_y));
  } else {
    for (int i = 0; i + 1 < lanes; ++i) heights.push_back(strip.lower_y + eta + 2.0 * eta * i);
    heights.push_back(strip.upper_y - eta);
  }

  PaintPath path;
  path.lane_spacing = 2.0 * eta;
  path.waypoints.push_back(painting_corner(strip, eta));
  bool at_left = true;
  for (const double y : heights) {
    const double from = at_left ? strip.left_x : strip.right_x;
    const double to = at_left ? strip.right_x : strip.left_x;
    // For i > 0 this is the vertical connector at the lane end.
    path.waypoints.emplace_back(from, y);
    path.waypoints.emplace_back(to, y);
    at_left = !at_left;
  }
  return path;
}

std::string_view to_string(CycleAction action) {
  switch (action) {
    case CycleAction::Move: return "Move";
    case CycleAction::Hold: return "Hold";
    case CycleAction::TieWait: return "TieWait";
    case CycleAction::StripOccupied: return "StripOccupied";
    case CycleAction::Paint: return "Paint";
  }
  return "?";
}

CycleDecision plan_cycle(const Snapshot& snap, const ProtocolParams& params) {
  CycleDecision decision;
  decision.rank = compute_rank(snap);
  decision.strip = compute_strip(snap, decision.rank);
  const Vec2 corner = painting_corner(decision.strip, params.eta);

  if (corner.norm() <= snap.tolerance) {
    decision.destination = Destination{DestinationKind::Final, corner, std::nullopt};
    decision.action = strip_empty(snap, decision.strip) ? CycleAction::Paint : CycleAction::StripOccupied;
    return decision;
  }

  if (has_tied_robot(snap)) {
    const Destination final_dest{DestinationKind::Final, corner, std::nullopt};
    if (decide_tie(snap, decision.rank, final_dest) == TieDecision::Wait) {
      decision.destination = final_dest;
      decision.action = CycleAction::TieWait;
      return decision;
    }
  }

  decision.destination = compute_destination(snap, decision.rank, decision.strip, params.eps, params.eta);
  const bool stays = decision.destination.kind == DestinationKind::Secondary &&
                     decision.destination.target.norm() <= snap.tolerance;
  decision.action = stays ? CycleAction::Hold : CycleAction::Move;
  return decision;
}

}  // namespace paint
