#include <gtest/gtest.h>

#include <filesystem>
#include <vector>

#include "paint/errors.hpp"
#include "paint/exhaustive.hpp"
#include "paint/scenario.hpp"

namespace paint {
namespace {

const ProtocolParams kParams = ProtocolParams::with_eta(0.625);

TEST(Exhaustive, TwoRobotsMidRegion) {
  const std::vector<RobotInit> robots{{Vec2(-4, 2), Orientation::Positive, 1.0},
                                      {Vec2(5, -3), Orientation::Negative, 2.0}};
  const ExhaustiveResult r = exhaustive_schedule_check(paper_world(), robots, kParams, 12);
  EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "partial" : r.violations[0].kind + ": " + r.violations[0].detail);
  EXPECT_GT(r.states_explored, 12u);
}

TEST(Exhaustive, TiedPairHasExactlyOneFirstMover) {
  for (int mask = 0; mask < 4; ++mask) {
    const std::vector<RobotInit> robots{
        {Vec2(-6, 0), (mask & 1) ? Orientation::Negative : Orientation::Positive, 1.0},
        {Vec2(6, 0), (mask & 2) ? Orientation::Negative : Orientation::Positive, 0.3}};
    const ExhaustiveResult r = exhaustive_schedule_check(paper_world(), robots, kParams, 12);
    EXPECT_TRUE(r.ok()) << "mask " << mask;
    // Both robots head away from y = 0 in opposite directions, so both may
    // move; a same-direction tie is checked below.
    EXPECT_FALSE(r.first_vertical_movers.empty());
  }
}

TEST(Exhaustive, SameDirectionTieFirstMoverIsAlwaysTheSameRobot) {
  // Near a horizontal wall both corners lie on the same side for any
  // orientation.
  for (int mask = 0; mask < 4; ++mask) {
    const std::vector<RobotInit> robots{
        {Vec2(-6, 14.9), (mask & 1) ? Orientation::Negative : Orientation::Positive, 1.0},
        {Vec2(6, 14.9), (mask & 2) ? Orientation::Negative : Orientation::Positive, 4.0}};
    const ExhaustiveResult r = exhaustive_schedule_check(paper_world(), robots, kParams, 12);
    EXPECT_TRUE(r.ok()) << "mask " << mask;
    EXPECT_EQ(r.first_vertical_movers, (std::set<int>{0})) << "mask " << mask;

    const std::vector<RobotInit> low{{Vec2(-6, -14.9), robots[0].orientation, 1.0},
                                     {Vec2(6, -14.9), robots[1].orientation, 4.0}};
    const ExhaustiveResult l = exhaustive_schedule_check(paper_world(), low, kParams, 12);
    EXPECT_TRUE(l.ok()) << "mask " << mask;
    EXPECT_EQ(l.first_vertical_movers, (std::set<int>{1})) << "mask " << mask;
  }
}

TEST(Exhaustive, SingleRobotIsTrivial) {
  const std::vector<RobotInit> robots{{Vec2(1, 1), Orientation::Negative, 1.0}};
  const ExhaustiveResult r = exhaustive_schedule_check(paper_world(), robots, kParams, 12);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.first_vertical_movers, (std::set<int>{0}));
}

TEST(Exhaustive, TooManyRobotsIsRejected) {
  const std::vector<RobotInit> robots{{Vec2(1, 1)}, {Vec2(2, 2)}, {Vec2(3, 3)}, {Vec2(4, 4)}};
  EXPECT_THROW(exhaustive_schedule_check(paper_world(), robots, kParams, 4), ConfigError);
}

TEST(Exhaustive, StateCapFlagsPartialResult) {
  const std::vector<RobotInit> robots{{Vec2(-4, 2)}, {Vec2(5, -3)}, {Vec2(0, 9)}};
  const ExhaustiveResult r = exhaustive_schedule_check(paper_world(), robots, kParams, 12, 50);
  EXPECT_TRUE(r.partial);
  EXPECT_FALSE(r.ok());
}

TEST(Exhaustive, BundledMicroScenarios) {
  int checked = 0;
  for (const auto& entry : std::filesystem::directory_iterator(PAINT_SCENARIO_DIR)) {
    if (entry.path().filename().string().rfind("micro_", 0) != 0) continue;
    const Scenario s = load_scenario(entry.path());
    ASSERT_LE(s.config.robot_count(), 3);
    const ExhaustiveResult r =
        exhaustive_schedule_check(s.config.world, s.config.robots, s.config.params, 12);
    EXPECT_TRUE(r.ok()) << s.name;
    ++checked;
  }
  EXPECT_GE(checked, 3);
}

}  // namespace
}  // namespace paint
