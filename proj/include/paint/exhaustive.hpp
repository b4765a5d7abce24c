#pragma once

// Bounded exhaustive exploration of activation orderings for tiny swarms.
// Each robot alternates between a Look step (snapshot + decision) and an
// Execute step (the decided move or paint, performed atomically); the
// explorer branches on which robot takes its pending step next.

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "paint/sim.hpp"

namespace paint {

struct ExhaustiveViolation {
  std::string kind;           // "crossing", "collision", "liveness", "occupied_strip"
  std::vector<int> schedule;  // robot activations leading to it
  std::string detail;
};

struct ExhaustiveResult {
  std::size_t states_explored = 0;
  std::size_t frontier_states = 0;
  bool partial = false;  // state cap hit before the depth was exhausted
  std::vector<ExhaustiveViolation> violations;
  /// Robots that made the first vertical move, over all branches.
  std::set<int> first_vertical_movers;

  bool ok() const { return violations.empty() && !partial; }
};

/// Requires N <= 3. `depth` counts single steps (Look or Execute).
ExhaustiveResult exhaustive_schedule_check(const WorldRect& world, std::span<const RobotInit> robots,
                                           const ProtocolParams& params, int depth,
                                           std::size_t state_cap = 2'000'000);

}  // namespace paint
