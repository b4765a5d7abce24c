#include "paint/frames.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "paint/errors.hpp"

namespace paint {

double WorldRect::diameter() const { return std::hypot(length(), breadth()); }

void WorldRect::validate() const {
  if (!(x_min < x_max) || !(y_min < y_max)) {
    std::ostringstream os;
    os << "world rectangle is empty: x [" << x_min << ", " << x_max << "], y [" << y_min << ", "
       << y_max << "]";
    throw ConfigError(os.str());
  }
}

WorldRect paper_world() { return WorldRect{-20.0, 20.0, -15.0, 15.0}; }

Vec2 to_local(const LocalFrame& frame, const Vec2& p) {
  return sign_of(frame.orientation) * (p - frame.origin) / frame.scale;
}

Vec2 to_global(const LocalFrame& frame, const Vec2& q) {
  return frame.origin + sign_of(frame.orientation) * frame.scale * q;
}

Snapshot observe(const WorldRect& world, std::span<const Vec2> positions, int self_index,
                 const LocalFrame& frame) {
  const int n = static_cast<int>(positions.size());
  if (self_index < 0 || self_index >= n) throw ConfigError("observer index out of range");
  if ((frame.origin - positions[self_index]).norm() > kGeomTol) {
    throw ConfigError("observer frame origin must be the observer's position");
  }
  for (int i = 0; i < n; ++i) {
    if (!world.contains(positions[i])) {
      std::ostringstream os;
      os << "robot " << i << " at (" << positions[i].x() << ", " << positions[i].y()
         << ") is outside the world";
      throw ConfigError(os.str());
    }
    for (int j = 0; j < i; ++j) {
      if ((positions[i] - positions[j]).norm() <= kGeomTol) {
        std::ostringstream os;
        os << "duplicate position: robots " << j << " and " << i;
        throw ConfigError(os.str());
      }
    }
  }

  Snapshot snap;
  snap.others.reserve(n - 1);
  for (int i = 0; i < n; ++i) {
    if (i != self_index) snap.others.push_back(to_local(frame, positions[i]));
  }
  const Vec2 low_left = to_local(frame, Vec2(world.x_min, world.y_min));
  const Vec2 high_right = to_local(frame, Vec2(world.x_max, world.y_max));
  snap.upper = std::max(low_left.y(), high_right.y());
  snap.lower = std::min(low_left.y(), high_right.y());
  snap.right = std::max(low_left.x(), high_right.x());
  snap.left = std::min(low_left.x(), high_right.x());
  snap.tolerance = frame.to_local_length(kGeomTol);
  return snap;
}

}  // namespace paint
