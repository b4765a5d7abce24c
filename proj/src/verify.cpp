#include "paint/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <optional>

#include "paint/errors.hpp"

namespace paint {

namespace {

constexpr std::size_t kMaxListed = 20;

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

std::vector<int> canonical_order(std::span<const Vec2> positions) {
  std::vector<int> order(positions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (positions[a].y() != positions[b].y()) return positions[a].y() < positions[b].y();
    return positions[a].x() < positions[b].x();
  });
  return order;
}

std::vector<Vec2> initial_positions(const Trace& trace) {
  std::vector<Vec2> out;
  for (const RobotInit& r : trace.config.robots) out.push_back(r.position);
  return out;
}

template <typename T>
nlohmann::ordered_json listed(const std::vector<T>& items) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < items.size() && i < kMaxListed; ++i) arr.push_back(items[i]);
  return arr;
}

nlohmann::ordered_json check_json(bool pass, std::size_t count, nlohmann::ordered_json examples) {
  nlohmann::ordered_json j;
  j["pass"] = pass;
  j["violations"] = count;
  j["counterexample_event_indices"] = std::move(examples);
  return j;
}

}  // namespace

Assignment brute_force_assignment(std::span<const Vec2> positions, const WorldRect& world) {
  const int n = static_cast<int>(positions.size());
  Assignment out;
  out.rank.assign(n, 0);
  out.strip.assign(n, {});
  const std::vector<int> order = canonical_order(positions);
  const double h = world.breadth() / n;
  for (int k = 0; k < n; ++k) {
    const int robot = order[k];
    out.rank[robot] = k + 1;
    out.strip[robot] = GlobalStrip{k + 1, world.y_min + k * h, world.y_min + (k + 1) * h, world.x_min, world.x_max};
  }
  return out;
}

Vec2 expected_corner(const GlobalStrip& strip, Orientation orientation, double eta) {
  if (orientation == Orientation::Positive) return Vec2(strip.x_lo + eta, strip.y_lo + eta);
  return Vec2(strip.x_hi - eta, strip.y_hi - eta);
}

std::vector<CrossingViolation> check_no_crossing(const Trace& trace) {
  std::vector<Vec2> pos = initial_positions(trace);
  const int n = static_cast<int>(pos.size());
  const std::vector<int> order = canonical_order(pos);
  std::vector<int> rank(n);
  for (int k = 0; k < n; ++k) rank[order[k]] = k;

  std::vector<CrossingViolation> out;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const SimEvent& ev = trace.events[i];
    if (!ev.changes_position()) continue;
    const int m = ev.robot_id;
    pos[m] = ev.position;
    for (int o = 0; o < n; ++o) {
      if (o == m) continue;
      const int lo = rank[o] < rank[m] ? o : m;
      const int hi = lo == o ? m : o;
      if (pos[lo].y() > pos[hi].y() + kGeomTol) out.push_back(CrossingViolation{i, ev.time, lo, hi});
    }
  }
  return out;
}

std::vector<CollisionViolation> check_collisions(const Trace& trace, double min_distance) {
  std::vector<Vec2> pos = initial_positions(trace);
  const int n = static_cast<int>(pos.size());
  std::vector<CollisionViolation> out;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const SimEvent& ev = trace.events[i];
    if (!ev.changes_position()) continue;
    const int m = ev.robot_id;
    pos[m] = ev.position;
    for (int o = 0; o < n; ++o) {
      if (o == m) continue;
      const double d = (pos[m] - pos[o]).norm();
      const bool coincident = d < kGeomTol;
      if (coincident || d < min_distance - kGeomTol) {
        out.push_back(CollisionViolation{i, ev.time, std::min(m, o), std::max(m, o), d, coincident});
      }
    }
  }
  return out;
}

std::vector<std::size_t> check_event_order(const Trace& trace) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < trace.events.size(); ++i) {
    const SimEvent& a = trace.events[i - 1];
    const SimEvent& b = trace.events[i];
    if (b.time < a.time || (b.time == a.time && b.robot_id < a.robot_id)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> check_atomic_painting(const Trace& trace) {
  std::vector<bool> painting(trace.config.robot_count(), false);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const SimEvent& ev = trace.events[i];
    if (painting[ev.robot_id]) {
      if (ev.kind == EventKind::PaintDone) {
        painting[ev.robot_id] = false;
      } else if (ev.kind != EventKind::PaintStep) {
        out.push_back(i);
      }
    } else if (ev.kind == EventKind::PaintStart) {
      painting[ev.robot_id] = true;
    } else if (ev.kind == EventKind::PaintStep || ev.kind == EventKind::PaintDone) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<int> check_start_corners(const Trace& trace) {
  const std::vector<Vec2> pos = initial_positions(trace);
  const Assignment a = brute_force_assignment(pos, trace.config.world);
  std::vector<int> out;
  std::vector<bool> seen(pos.size(), false);
  for (const SimEvent& ev : trace.events) {
    if (ev.kind != EventKind::PaintStart || seen[ev.robot_id]) continue;
    seen[ev.robot_id] = true;
    const Vec2 want = expected_corner(a.strip[ev.robot_id], trace.config.robots[ev.robot_id].orientation,
                                      trace.config.params.eta);
    if ((ev.position - want).norm() > 1e-6) out.push_back(ev.robot_id);
  }
  return out;
}

std::vector<int> check_paint_durations(const Trace& trace) {
  const int n = trace.config.robot_count();
  std::vector<std::optional<double>> start(n);
  std::vector<Vec2> last(n);
  std::vector<double> length(n, 0.0);
  std::vector<int> out;
  const double v = trace.config.schedule.velocity;
  for (const SimEvent& ev : trace.events) {
    const int r = ev.robot_id;
    if (ev.kind == EventKind::PaintStart) {
      start[r] = ev.time;
      last[r] = ev.position;
    } else if (ev.kind == EventKind::PaintStep) {
      length[r] += (ev.position - last[r]).norm();
      last[r] = ev.position;
    } else if (ev.kind == EventKind::PaintDone && start[r]) {
      const double duration = ev.time - *start[r];
      const double expected = length[r] / v;
      if (std::abs(duration - expected) > 1e-6 * std::max(1.0, expected)) out.push_back(r);
    }
  }
  return out;
}

CoverageRaster::CoverageRaster(const WorldRect& world, double cell_size)
    : world_(world),
      cell_(cell_size),
      nx_(static_cast<int>(std::ceil(world.length() / cell_size - 1e-9))),
      ny_(static_cast<int>(std::ceil(world.breadth() / cell_size - 1e-9))),
      mask_(static_cast<std::size_t>(nx_) * ny_, 0) {}

Vec2 CoverageRaster::center(int ix, int iy) const {
  const double x0 = world_.x_min + ix * cell_;
  const double y0 = world_.y_min + iy * cell_;
  return Vec2(0.5 * (x0 + std::min(x0 + cell_, world_.x_max)), 0.5 * (y0 + std::min(y0 + cell_, world_.y_max)));
}

void CoverageRaster::paint_segment(const Vec2& a, const Vec2& b, double radius, int robot) {
  const auto clamp_x = [&](double x) { return std::clamp(static_cast<int>(std::floor((x - world_.x_min) / cell_)), 0, nx_ - 1); };
  const auto clamp_y = [&](double y) { return std::clamp(static_cast<int>(std::floor((y - world_.y_min) / cell_)), 0, ny_ - 1); };
  const int ix0 = clamp_x(std::min(a.x(), b.x()) - radius);
  const int ix1 = clamp_x(std::max(a.x(), b.x()) + radius);
  const int iy0 = clamp_y(std::min(a.y(), b.y()) - radius);
  const int iy1 = clamp_y(std::max(a.y(), b.y()) + radius);
  const std::uint64_t bit = std::uint64_t{1} << robot;
  for (int iy = iy0; iy <= iy1; ++iy) {
    for (int ix = ix0; ix <= ix1; ++ix) {
      if (point_segment_distance(center(ix, iy), a, b) <= radius + kGeomTol) {
        mask_[static_cast<std::size_t>(iy) * nx_ + ix] |= bit;
      }
    }
  }
}

std::vector<Vec2> paint_polyline(const Trace& trace, int robot) {
  std::vector<Vec2> out;
  bool painting = false;
  for (const SimEvent& ev : trace.events) {
    if (ev.robot_id != robot) continue;
    if (ev.kind == EventKind::PaintStart) painting = true;
    if (!painting) continue;
    if (ev.kind != EventKind::PaintStart && ev.kind != EventKind::PaintStep) continue;
    const Vec2& p = ev.position;
    if (!out.empty() && (p - out.back()).norm() < 1e-12) continue;
    if (out.size() >= 2) {
      const Vec2 d1 = out.back() - out[out.size() - 2];
      const Vec2 d2 = p - out.back();
      const double cross = d1.x() * d2.y() - d1.y() * d2.x();
      if (d1.dot(d2) > 0.0 && std::abs(cross) <= 1e-6 * d1.norm() * d2.norm()) {
        out.back() = p;
        continue;
      }
    }
    out.push_back(p);
  }
  return out;
}

CoverageReport verify_coverage(const Trace& trace, const WorldRect& world, double eta, CoverageRaster& raster) {
  const int n = trace.config.robot_count();
  if (n > 64) throw ConfigError("coverage raster supports at most 64 robots");
  for (int r = 0; r < n; ++r) {
    const std::vector<Vec2> line = paint_polyline(trace, r);
    if (line.size() == 1) raster.paint_segment(line[0], line[0], eta, r);
    for (std::size_t i = 1; i < line.size(); ++i) raster.paint_segment(line[i - 1], line[i], eta, r);
  }

  CoverageReport rep;
  rep.cell_size = raster.cell_size();
  const double cell_area = rep.cell_size * rep.cell_size;
  const double strip_h = world.breadth() / n;
  for (int iy = 0; iy < raster.ny(); ++iy) {
    for (int ix = 0; ix < raster.nx(); ++ix) {
      ++rep.total_cells;
      const std::uint64_t m = raster.painters(ix, iy);
      if (m == 0) {
        ++rep.uncovered_cells;
        continue;
      }
      if (std::popcount(m) < 2) continue;
      rep.cross_strip_overlap_area += cell_area;
      const double y = raster.center(ix, iy).y();
      double nearest = std::numeric_limits<double>::infinity();
      for (int k = 1; k < n; ++k) nearest = std::min(nearest, std::abs(y - (world.y_min + k * strip_h)));
      if (nearest > 2.0 * rep.cell_size) rep.interior_overlap_area += cell_area;
    }
  }
  rep.complete = rep.uncovered_cells == 0;
  rep.boundary_tolerance_area = (n - 1) * 2.0 * rep.cell_size * world.length();
  return rep;
}

CoverageReport verify_coverage(const Trace& trace, const WorldRect& world, double eta) {
  CoverageRaster raster(world, eta / 4.0);
  return verify_coverage(trace, world, eta, raster);
}

bool VerificationReport::all_pass() const {
  return completed && within_watchdog && order_violations.empty() && crossings.empty() &&
         collisions.empty() && atomicity_violations.empty() && corner_mismatches.empty() &&
         duration_mismatches.empty() && coverage_ok();
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["all_pass"] = all_pass();
  nlohmann::ordered_json checks;

  checks["liveness"] = {{"pass", completed && within_watchdog},
                        {"completed", completed},
                        {"within_watchdog", within_watchdog},
                        {"completion_time", summary.completion}};
  checks["event_order"] = check_json(order_violations.empty(), order_violations.size(), listed(order_violations));

  std::vector<std::size_t> idx;
  for (const auto& c : crossings) idx.push_back(c.event_index);
  checks["no_crossing"] = check_json(crossings.empty(), crossings.size(), listed(idx));

  idx.clear();
  double min_seen = std::numeric_limits<double>::infinity();
  for (const auto& c : collisions) {
    idx.push_back(c.event_index);
    min_seen = std::min(min_seen, c.distance);
  }
  checks["collision_free"] = check_json(collisions.empty(), collisions.size(), listed(idx));
  if (!collisions.empty()) checks["collision_free"]["min_distance"] = min_seen;

  checks["atomic_painting"] =
      check_json(atomicity_violations.empty(), atomicity_violations.size(), listed(atomicity_violations));
  checks["start_corners"] = {{"pass", corner_mismatches.empty()}, {"robots", corner_mismatches}};
  checks["paint_duration"] = {{"pass", duration_mismatches.empty()}, {"robots", duration_mismatches}};
  checks["coverage"] = {{"pass", coverage_ok()},
                        {"complete", coverage.complete},
                        {"raster_cell_size", coverage.cell_size},
                        {"total_cells", coverage.total_cells},
                        {"uncovered_cells", coverage.uncovered_cells},
                        {"cross_strip_overlap_area", coverage.cross_strip_overlap_area},
                        {"interior_overlap_area", coverage.interior_overlap_area},
                        {"boundary_tolerance_area", coverage.boundary_tolerance_area}};
  j["checks"] = std::move(checks);
  j["timing"] = {{"t1_sim", summary.t1},
                 {"t2_sim", summary.t2},
                 {"path_length", summary.path_length},
                 {"completion", summary.completion}};
  return j;
}

VerificationReport verify_trace(const Trace& trace) {
  VerificationReport rep;
  rep.summary = summarize(trace);
  rep.completed = rep.summary.completed;
  rep.within_watchdog = rep.completed && rep.summary.completion <= trace.config.watchdog_bound();
  rep.order_violations = check_event_order(trace);
  rep.crossings = check_no_crossing(trace);
  rep.collisions = check_collisions(trace, trace.config.params.collision_distance());
  rep.atomicity_violations = check_atomic_painting(trace);
  rep.corner_mismatches = check_start_corners(trace);
  rep.duration_mismatches = check_paint_durations(trace);
  rep.coverage = verify_coverage(trace, trace.config.world, trace.config.params.eta);
  return rep;
}

}  // namespace paint
