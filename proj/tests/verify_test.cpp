#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "paint/scenario.hpp"
#include "paint/sim.hpp"
#include "paint/verify.hpp"

namespace paint {
namespace {

std::vector<Vec2> positions_of(const Scenario& s) {
  std::vector<Vec2> pos;
  for (const RobotInit& r : s.config.robots) pos.push_back(r.position);
  return pos;
}

Trace two_robot_trace() {
  Trace t;
  t.config.world = paper_world();
  t.config.robots = {RobotInit{Vec2(0, -5)}, RobotInit{Vec2(0, 5)}};
  return t;
}

TEST(BruteForceAssignment, TableOneInstanceOne) {
  const Scenario s = load_scenario(PAINT_SCENARIO_DIR "/table1_instance1.json");
  const Assignment a = brute_force_assignment(positions_of(s), s.config.world);
  EXPECT_EQ(a.rank, (std::vector<int>{2, 3, 4, 1}));
  for (const GlobalStrip& g : a.strip) EXPECT_DOUBLE_EQ(g.y_hi - g.y_lo, 7.5);
  EXPECT_DOUBLE_EQ(a.strip[3].y_lo, -15.0);
  EXPECT_DOUBLE_EQ(a.strip[2].y_hi, 15.0);
}

TEST(BruteForceAssignment, SharedHeightsResolvedByX) {
  // Two pairs share a height: (-13,0)/(12,0) and (-2,11)/(15,11).
  const Scenario s = load_scenario(PAINT_SCENARIO_DIR "/table3_instance4.json");
  const Assignment a = brute_force_assignment(positions_of(s), s.config.world);
  EXPECT_EQ(a.rank, (std::vector<int>{6, 8, 4, 3, 1, 7, 5, 2}));
}

TEST(BruteForceAssignment, LowerXGetsLowerRank) {
  const std::vector<Vec2> pos{{4, 1}, {-4, 1}};
  EXPECT_EQ(brute_force_assignment(pos, paper_world()).rank, (std::vector<int>{2, 1}));
}

TEST(ExpectedCorner, DependsOnOrientation) {
  const GlobalStrip g{1, -15, -7.5, -20, 20};
  EXPECT_EQ(expected_corner(g, Orientation::Positive, 0.5), Vec2(-19.5, -14.5));
  EXPECT_EQ(expected_corner(g, Orientation::Negative, 0.5), Vec2(19.5, -8.0));
}

TEST(CheckNoCrossing, TeleportOverAnotherRobotIsReported) {
  Trace t = two_robot_trace();
  t.events.push_back(SimEvent{1.5, 0, EventKind::MoveStep, Vec2(0, 10)});
  t.finalize();
  const auto v = check_no_crossing(t);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].lower_robot, 0);
  EXPECT_EQ(v[0].upper_robot, 1);
  EXPECT_DOUBLE_EQ(v[0].time, 1.5);
  EXPECT_EQ(v[0].event_index, 0u);
}

TEST(CheckNoCrossing, InitialTieIsNotACrossing) {
  Trace t;
  t.config.world = paper_world();
  t.config.robots = {RobotInit{Vec2(-3, 0)}, RobotInit{Vec2(3, 0)}};
  t.events.push_back(SimEvent{1.0, 1, EventKind::MoveStep, Vec2(3, 1)});
  t.events.push_back(SimEvent{2.0, 0, EventKind::MoveStep, Vec2(-3, -1)});
  t.finalize();
  EXPECT_TRUE(check_no_crossing(t).empty());
}

TEST(CheckCollisions, CoincidenceAndNearMissAreReported) {
  Trace t = two_robot_trace();
  t.events.push_back(SimEvent{1.0, 0, EventKind::MoveStep, Vec2(0, 4.95)});
  t.events.push_back(SimEvent{2.0, 0, EventKind::MoveStep, Vec2(0, 5)});
  t.finalize();
  const auto v = check_collisions(t, 0.1);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_FALSE(v[0].coincident);
  EXPECT_NEAR(v[0].distance, 0.05, 1e-12);
  EXPECT_TRUE(v[1].coincident);
}

TEST(CheckEventOrder, OutOfOrderIndicesAreReported) {
  Trace t = two_robot_trace();
  t.events.push_back(SimEvent{1.0, 1, EventKind::Wake, Vec2(0, 5)});
  t.events.push_back(SimEvent{1.0, 0, EventKind::Wake, Vec2(0, -5)});
  t.events.push_back(SimEvent{0.5, 0, EventKind::ObserveDone, Vec2(0, -5)});
  EXPECT_EQ(check_event_order(t), (std::vector<std::size_t>{1, 2}));
}

TEST(CheckAtomicPainting, SleepDuringPaintIsReported) {
  Trace t = two_robot_trace();
  t.events.push_back(SimEvent{1.0, 0, EventKind::PaintStart, Vec2(0, -5)});
  t.events.push_back(SimEvent{1.5, 1, EventKind::Sleep, Vec2(0, 5)});  // other robot: fine
  t.events.push_back(SimEvent{2.0, 0, EventKind::Sleep, Vec2(0, -5)});
  t.events.push_back(SimEvent{3.0, 0, EventKind::PaintDone, Vec2(0, -5)});
  EXPECT_EQ(check_atomic_painting(t), (std::vector<std::size_t>{2}));
}

TEST(PaintPolyline, CollinearStepsAreMerged) {
  Trace t = two_robot_trace();
  t.events.push_back(SimEvent{1.0, 0, EventKind::PaintStart, Vec2(0, -5)});
  t.events.push_back(SimEvent{2.0, 0, EventKind::PaintStep, Vec2(1, -5)});
  t.events.push_back(SimEvent{3.0, 0, EventKind::PaintStep, Vec2(2, -5)});
  t.events.push_back(SimEvent{4.0, 0, EventKind::PaintStep, Vec2(2, -4)});
  t.events.push_back(SimEvent{4.0, 0, EventKind::PaintDone, Vec2(2, -4)});
  t.finalize();
  EXPECT_EQ(paint_polyline(t, 0), (std::vector<Vec2>{{0, -5}, {2, -5}, {2, -4}}));
  EXPECT_TRUE(paint_polyline(t, 1).empty());
}

class Coverage : public ::testing::Test {
 protected:
  static const Trace& full() {
    static const Trace t = run(load_scenario(PAINT_SCENARIO_DIR "/table2_instance1.json").config);
    return t;
  }
};

TEST_F(Coverage, SuccessfulRunIsCompleteWithBoundaryOverlapOnly) {
  const Trace& t = full();
  const CoverageReport r = verify_coverage(t, t.config.world, t.config.params.eta);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.uncovered_cells, 0u);
  EXPECT_DOUBLE_EQ(r.cell_size, t.config.params.eta / 4);
  EXPECT_EQ(r.interior_overlap_area, 0.0);
  EXPECT_LE(r.cross_strip_overlap_area, r.boundary_tolerance_area);
  // (N - 1) shared edges, 2 cells wide, full length.
  EXPECT_DOUBLE_EQ(r.boundary_tolerance_area, 5 * 2 * r.cell_size * 40.0);
}

TEST_F(Coverage, TruncatedBeforePaintingCoversNothing) {
  Trace t = full();
  const auto first_paint = std::find_if(t.events.begin(), t.events.end(),
                                        [](const SimEvent& e) { return e.kind == EventKind::PaintStart; });
  t.events.erase(first_paint, t.events.end());
  t.finalize();
  const CoverageReport r = verify_coverage(t, t.config.world, t.config.params.eta);
  EXPECT_FALSE(r.complete);
  EXPECT_EQ(r.uncovered_cells, r.total_cells);
  EXPECT_EQ(r.cross_strip_overlap_area, 0.0);
}

TEST_F(Coverage, TruncatedBeforeFirstPaintDoneIsIncomplete) {
  Trace t = full();
  const auto first_done = std::find_if(t.events.begin(), t.events.end(),
                                       [](const SimEvent& e) { return e.kind == EventKind::PaintDone; });
  t.events.erase(first_done, t.events.end());
  t.finalize();
  const CoverageReport r = verify_coverage(t, t.config.world, t.config.params.eta);
  EXPECT_FALSE(r.complete);
  EXPECT_GT(r.uncovered_cells, 0u);
  EXPECT_FALSE(verify_trace(t).all_pass());
}

TEST(CoverageSingleLane, HalfBreadthBrushFillsRegion) {
  SimConfig c;
  c.world = paper_world();
  c.params = ProtocolParams::with_eta(15.0);
  c.robots = {RobotInit{Vec2(7, -2), Orientation::Positive, 1.0}};
  const Trace t = run(c);
  const CoverageReport r = verify_coverage(t, c.world, 15.0);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.cross_strip_overlap_area, 0.0);
  EXPECT_EQ(r.interior_overlap_area, 0.0);
  EXPECT_EQ(paint_polyline(t, 0), (std::vector<Vec2>{{-5, 0}, {-20, 0}, {20, 0}}));
}

TEST(CoverageRaster, SegmentMarksCellsWithinRadius) {
  CoverageRaster raster(WorldRect{0, 4, 0, 4}, 1.0);
  EXPECT_EQ(raster.nx(), 4);
  EXPECT_EQ(raster.ny(), 4);
  raster.paint_segment(Vec2(0, 0.5), Vec2(4, 0.5), 0.5, 0);
  raster.paint_segment(Vec2(0, 1.5), Vec2(4, 1.5), 0.5, 3);
  for (int ix = 0; ix < 4; ++ix) {
    EXPECT_EQ(raster.painters(ix, 0), 1u);
    EXPECT_EQ(raster.painters(ix, 1), 8u);
    EXPECT_EQ(raster.painters(ix, 2), 0u);
  }
}

TEST(VerifyTrace, ReportJsonListsEveryCheck) {
  const Trace t = run(load_scenario(PAINT_SCENARIO_DIR "/table1_instance2.json").config);
  const VerificationReport r = verify_trace(t);
  EXPECT_TRUE(r.all_pass());
  const auto j = r.to_json();
  EXPECT_TRUE(j.at("all_pass").get<bool>());
  for (const char* key : {"liveness", "no_crossing", "collision_free", "event_order", "atomic_painting", "start_corners",
                          "paint_duration", "coverage"}) {
    EXPECT_TRUE(j.at("checks").contains(key)) << key;
  }
}

}  // namespace
}  // namespace paint
