#pragma once

#include <string>

#include "paint/sim.hpp"

namespace paint {

/// Shaded strips, one polyline per robot, start and end markers.
std::string render_trajectories(const Trace& trace);

/// Raster coverage map: cells colored by painter, uncovered cells red,
/// multiply-painted cells black.
std::string render_coverage(const Trace& trace);

}  // namespace paint
