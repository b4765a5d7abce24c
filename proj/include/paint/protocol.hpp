#pragma once

// The oblivious per-robot computation. Every function here is a pure function
// of a Snapshot (local coordinates) and the protocol parameters expressed in
// the same local units.

#include <optional>
#include <string_view>
#include <vector>

#include "paint/frames.hpp"

namespace paint {

/// Brush half-width used when nothing else is configured. Divides the strip
/// heights of the 40 x 30 world for N = 4, 6 and 8.
inline constexpr double kDefaultEta = 0.625;

struct ProtocolParams {
  double eta = kDefaultEta;
  double eps = kDefaultEta / 4.0;

  static ProtocolParams with_eta(double eta) { return ProtocolParams{eta, eta / 4.0}; }

  /// Same physical quantities in a frame with the given private scale.
  ProtocolParams in_units_of(const LocalFrame& frame) const {
    return ProtocolParams{frame.to_local_length(eta), frame.to_local_length(eps)};
  }

  /// eta > 0, 0 < eps < 2 eta.
  void validate() const;

  /// Minimum separation the collision check enforces: min(eps, 2 eta) / 2.
  double collision_distance() const;
};

struct Rank {
  int value = 1;
  int n_total = 1;

  friend bool operator==(const Rank&, const Rank&) = default;
};

/// One of N equal horizontal strips, in the observer's local frame.
struct Strip {
  int index = 1;
  double lower_y = 0.0;
  double upper_y = 0.0;
  double left_x = 0.0;
  double right_x = 0.0;

  double height() const { return upper_y - lower_y; }
  double width() const { return right_x - left_x; }
};

enum class DestinationKind { Final, Secondary };

struct Destination {
  DestinationKind kind = DestinationKind::Final;
  Vec2 target = Vec2::Zero();
  std::optional<int> blocking_rank;
};

enum class TieDecision { MoveNow, Wait };

/// Boustrophedon sweep of one strip, local coordinates. The first waypoint is
/// the painting start corner.
struct PaintPath {
  std::vector<Vec2> waypoints;
  double lane_spacing = 0.0;

  double length() const;
  /// Distinct lane heights in sweep order.
  std::vector<double> lane_heights() const;
};

/// 1 + number of robots (observer included) strictly before `p` in the
/// ascending (y, then x) order of the snapshot.
int rank_of(const Snapshot& snap, const Vec2& p);

/// Throws ProtocolViolation if two robots in the snapshot coincide.
Rank compute_rank(const Snapshot& snap);

Strip compute_strip(const Snapshot& snap, const Rank& rank);

/// Bottom-left corner of the strip pulled in by eta on both axes.
inline Vec2 painting_corner(const Strip& strip, double eta) {
  return Vec2(strip.left_x + eta, strip.lower_y + eta);
}

/// Final target, or a vertical Secondary halt eps short of the nearest robot
/// the vertical leg would cross. A Secondary with target (0, 0) means "stay":
/// the blocker is within eps ahead, or the horizontal leg is not yet clear.
Destination compute_destination(const Snapshot& snap, const Rank& rank, const Strip& strip,
                                double eps, double eta);

/// Tie rule against every robot at the observer's height. Throws
/// ProtocolViolation if no robot is tied.
TieDecision decide_tie(const Snapshot& snap, const Rank& rank, const Destination& dest);

bool has_tied_robot(const Snapshot& snap);

/// True iff no other robot lies strictly inside the strip. A robot on a
/// strip boundary line belongs to neither strip.
bool strip_empty(const Snapshot& snap, const Strip& strip);

/// Throws ConfigError if the strip is thinner than 2 eta.
PaintPath generate_paint_path(const Strip& strip, double eta);

enum class CycleAction {
  Move,           // travel to destination (final or secondary)
  Hold,           // secondary halt at the current position
  TieWait,        // tied and not the tie-breaking robot
  StripOccupied,  // at the final destination, strip still has a robot in it
  Paint,          // at the final destination, strip empty: start Phase-II
};

std::string_view to_string(CycleAction action);

struct CycleDecision {
  CycleAction action = CycleAction::Move;
  Rank rank;
  Strip strip;
  Destination destination;
};

/// One observe-compute step of the protocol. `params` must already be in the
/// snapshot's local units.
CycleDecision plan_cycle(const Snapshot& snap, const ProtocolParams& params);

}  // namespace paint
