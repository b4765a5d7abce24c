#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

namespace paint {

using Vec2 = Eigen::Vector2d;

/// Absolute geometric tolerance in global length units.
inline constexpr double kGeomTol = 1e-9;

/// The region to paint, in the canonical world frame.
struct WorldRect {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  double length() const { return x_max - x_min; }
  double breadth() const { return y_max - y_min; }
  double diameter() const;

  bool strictly_contains(const Vec2& p) const {
    return p.x() > x_min && p.x() < x_max && p.y() > y_min && p.y() < y_max;
  }

  bool contains(const Vec2& p, double tol = kGeomTol) const {
    return p.x() >= x_min - tol && p.x() <= x_max + tol && p.y() >= y_min - tol && p.y() <= y_max + tol;
  }

  /// Throws ConfigError unless x_min < x_max and y_min < y_max.
  void validate() const;
};

/// The 40 x 30 world used in the bundled scenarios.
WorldRect paper_world();

enum class Orientation : int { Positive = 1, Negative = -1 };

inline double sign_of(Orientation o) { return static_cast<double>(static_cast<int>(o)); }
inline Orientation flipped(Orientation o) {
  return o == Orientation::Positive ? Orientation::Negative : Orientation::Positive;
}

/// A robot's private coordinate system. Axis directions are shared with the
/// world; the sign of both axes and the unit length are private.
struct LocalFrame {
  Vec2 origin = Vec2::Zero();
  Orientation orientation = Orientation::Positive;
  double scale = 1.0;

  /// Global length expressed in this frame's units.
  double to_local_length(double global_length) const { return global_length / scale; }
};

Vec2 to_local(const LocalFrame& frame, const Vec2& p);
Vec2 to_global(const LocalFrame& frame, const Vec2& q);

/// What one robot sees at one instant, in its own frame. The observer is the
/// origin. `upper`/`lower` are the local y of the horizontal walls (s, f) and
/// `left`/`right` the local x of the vertical walls.
struct Snapshot {
  std::vector<Vec2> others;
  double upper = 0.0;
  double lower = 0.0;
  double left = 0.0;
  double right = 0.0;
  /// kGeomTol expressed in the observer's units.
  double tolerance = kGeomTol;

  int robot_count() const { return static_cast<int>(others.size()) + 1; }
};

/// Builds the snapshot robot `self_index` takes of `positions`. Robots may
/// stand on the walls (painting reaches them). Throws ConfigError for
/// positions outside the world or coinciding.
Snapshot observe(const WorldRect& world, std::span<const Vec2> positions, int self_index,
                 const LocalFrame& frame);

}  // namespace paint
