#include "paint/svg.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <sstream>

#include "paint/verify.hpp"

namespace paint {

namespace {

constexpr double kPixelsPerUnit = 20.0;
constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b",
                                                  "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Canvas {
  WorldRect world;
  double px(double x) const { return (x - world.x_min) * kPixelsPerUnit; }
  double py(double y) const { return (world.y_max - y) * kPixelsPerUnit; }
  double width() const { return world.length() * kPixelsPerUnit; }
  double height() const { return world.breadth() * kPixelsPerUnit; }
};

void open_svg(std::ostringstream& os, const Canvas& c) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(c.width()) << "\" height=\""
     << num(c.height()) << "\" viewBox=\"0 0 " << num(c.width()) << " " << num(c.height()) << "\">\n";
}

std::vector<Vec2> simplify(const std::vector<Vec2>& pts) {
  std::vector<Vec2> out;
  for (const Vec2& p : pts) {
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

}  // namespace

std::string render_trajectories(const Trace& trace) {
  const Canvas c{trace.config.world};
  const int n = trace.config.robot_count();
  std::ostringstream os;
  open_svg(os, c);
  os << "<rect x=\"0\" y=\"0\" width=\"" << num(c.width()) << "\" height=\"" << num(c.height())
     << "\" fill=\"white\" stroke=\"red\" stroke-width=\"2\"/>\n";
  const double h = c.world.breadth() / n;
  for (int k = 0; k < n; ++k) {
    const double top = c.world.y_min + (k + 1) * h;
    os << "<rect x=\"0\" y=\"" << num(c.py(top)) << "\" width=\"" << num(c.width()) << "\" height=\""
       << num(h * kPixelsPerUnit) << "\" fill=\"" << (k % 2 ? "#eeeeee" : "#f8f8f8") << "\"/>\n";
  }
  for (int r = 0; r < n; ++r) {
    const char* color = kPalette[r % kPalette.size()];
    const std::vector<Vec2> path = simplify(trace.paths[r]);
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < path.size(); ++i) {
      os << (i ? " " : "") << num(c.px(path[i].x())) << "," << num(c.py(path[i].y()));
    }
    os << "\"/>\n";
    const Vec2& start = trace.config.robots[r].position;
    os << "<circle cx=\"" << num(c.px(start.x())) << "\" cy=\"" << num(c.py(start.y())) << "\" r=\"5\" fill=\""
       << color << "\"/>\n";
    os << "<text x=\"" << num(c.px(start.x()) + 7) << "\" y=\"" << num(c.py(start.y()) - 7)
       << "\" font-size=\"12\" fill=\"" << color << "\">R" << r + 1
       << (trace.config.robots[r].orientation == Orientation::Positive ? " P" : " N") << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_coverage(const Trace& trace) {
  const Canvas c{trace.config.world};
  CoverageRaster raster(trace.config.world, trace.config.params.eta / 4.0);
  verify_coverage(trace, trace.config.world, trace.config.params.eta, raster);
  const double cell_px = raster.cell_size() * kPixelsPerUnit;

  auto color_of = [](std::uint64_t mask) -> std::string {
    if (mask == 0) return "#d62728";
    if (std::popcount(mask) > 1) return "#000000";
    return kPalette[std::countr_zero(mask) % kPalette.size()];
  };

  std::ostringstream os;
  open_svg(os, c);
  for (int iy = 0; iy < raster.ny(); ++iy) {
    int run_start = 0;
    for (int ix = 1; ix <= raster.nx(); ++ix) {
      if (ix < raster.nx() && color_of(raster.painters(ix, iy)) == color_of(raster.painters(run_start, iy))) continue;
      const double y_top = c.world.y_min + (iy + 1) * raster.cell_size();
      os << "<rect x=\"" << num(run_start * cell_px) << "\" y=\"" << num(c.py(y_top)) << "\" width=\""
         << num((ix - run_start) * cell_px) << "\" height=\"" << num(cell_px) << "\" fill=\""
         << color_of(raster.painters(run_start, iy)) << "\"/>\n";
      run_start = ix;
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace paint
