#pragma once

// Trace checks and brute-force oracles. Nothing here calls into the protocol
// module: ranks, strips and corners are recomputed from world coordinates.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "paint/sim.hpp"

namespace paint {

/// A strip in world coordinates.
struct GlobalStrip {
  int index = 1;
  double y_lo = 0.0;
  double y_hi = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
};

struct Assignment {
  std::vector<int> rank;  // per robot, 1-based
  std::vector<GlobalStrip> strip;
};

/// Canonical ranking (ascending y, then x) and the strip of each robot.
Assignment brute_force_assignment(std::span<const Vec2> positions, const WorldRect& world);

/// Global start corner of a robot of the given orientation in the strip.
Vec2 expected_corner(const GlobalStrip& strip, Orientation orientation, double eta);

struct CrossingViolation {
  std::size_t event_index = 0;
  double time = 0.0;
  int lower_robot = 0;  // lower canonical rank, ended up above
  int upper_robot = 0;
};

/// Every pair keeps its t = 0 vertical order (tolerance 1e-9).
std::vector<CrossingViolation> check_no_crossing(const Trace& trace);

struct CollisionViolation {
  std::size_t event_index = 0;
  double time = 0.0;
  int robot_a = 0;
  int robot_b = 0;
  double distance = 0.0;
  bool coincident = false;
};

/// Distance from each moving robot to every other robot, at every step.
std::vector<CollisionViolation> check_collisions(const Trace& trace, double min_distance);

/// Indices of events breaking the (time, robot_id) order.
std::vector<std::size_t> check_event_order(const Trace& trace);

/// Indices of non-paint events of a robot between its PaintStart and PaintDone.
std::vector<std::size_t> check_atomic_painting(const Trace& trace);

/// Robots whose PaintStart position is not their brute-force start corner.
std::vector<int> check_start_corners(const Trace& trace);

/// Robots whose paint duration differs from polyline length / v by more than
/// 1e-6 (relative).
std::vector<int> check_paint_durations(const Trace& trace);

struct CoverageReport {
  bool complete = false;
  std::size_t total_cells = 0;
  std::size_t uncovered_cells = 0;
  double cell_size = 0.0;
  double cross_strip_overlap_area = 0.0;  // cells painted by >= 2 robots
  double interior_overlap_area = 0.0;     // of those, away from strip edges
  double boundary_tolerance_area = 0.0;   // 2 cells per shared edge
};

/// Occupancy grid over the world, counting which robots painted each cell.
class CoverageRaster {
 public:
  CoverageRaster(const WorldRect& world, double cell_size);

  /// Marks every cell whose center is within `radius` of the segment.
  void paint_segment(const Vec2& a, const Vec2& b, double radius, int robot);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double cell_size() const { return cell_; }
  Vec2 center(int ix, int iy) const;
  std::uint64_t painters(int ix, int iy) const { return mask_[static_cast<std::size_t>(iy) * nx_ + ix]; }

 private:
  WorldRect world_;
  double cell_;
  int nx_;
  int ny_;
  std::vector<std::uint64_t> mask_;
};

/// Rasterizes each robot's Phase-II polyline dilated by eta at pitch eta/4.
CoverageReport verify_coverage(const Trace& trace, const WorldRect& world, double eta);
/// Same, returning the raster as well (for rendering).
CoverageReport verify_coverage(const Trace& trace, const WorldRect& world, double eta, CoverageRaster& raster);

/// Phase-II polyline of a robot with collinear runs merged.
std::vector<Vec2> paint_polyline(const Trace& trace, int robot);

struct VerificationReport {
  bool completed = false;
  bool within_watchdog = false;
  std::vector<std::size_t> order_violations;
  std::vector<CrossingViolation> crossings;
  std::vector<CollisionViolation> collisions;
  std::vector<std::size_t> atomicity_violations;
  std::vector<int> corner_mismatches;
  std::vector<int> duration_mismatches;
  CoverageReport coverage;
  TraceSummary summary;

  bool coverage_ok() const {
    return coverage.complete && coverage.interior_overlap_area == 0.0 &&
           coverage.cross_strip_overlap_area <= coverage.boundary_tolerance_area;
  }
  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
};

VerificationReport verify_trace(const Trace& trace);

}  // namespace paint
