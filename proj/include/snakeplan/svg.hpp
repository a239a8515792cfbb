#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "snakeplan/dynamics.hpp"
#include "snakeplan/grid.hpp"
#include "snakeplan/subdivision.hpp"

namespace snakeplan {

// SVG snapshot with the usual color scheme: unknown space tan, sensed-free
// green, occupied black, subdivision outlines yellow, trajectory magenta,
// robot dark blue with a red head. All optional layers may be null.
inline void render_snapshot(std::ostream& out, const OccupancyGrid& sensed,
                            const Subdivision* sub, const Trajectory* traj,
                            const RobotModel* model, const SnakeState* state,
                            double px_per_m = 8.0) {
  const Rect w = sensed.world_rect();
  const double H = w.height();
  char buf[256];
  const auto fmt = [&](const char* f, double a, double b, double c = 0, double d = 0) {
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    out << buf;
  };

  fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\"",
      w.width() * px_per_m, H * px_per_m);
  fmt(" viewBox=\"0 0 %.3f %.3f\">\n", w.width(), H);
  fmt("<rect x=\"0\" y=\"0\" width=\"%.3f\" height=\"%.3f\" fill=\"#d2b48c\"/>\n",
      w.width(), H);

  // Cells, merged into horizontal runs. SVG y points down, world y up.
  const double cs = sensed.cell_size();
  for (int pass = 0; pass < 2; ++pass) {
    const CellState want = pass == 0 ? CellState::Free : CellState::Occupied;
    const char* color = pass == 0 ? "#7fc97f" : "#000000";
    for (int y = 0; y < sensed.height(); ++y) {
      int run = -1;
      for (int x = 0; x <= sensed.width(); ++x) {
        const bool on = x < sensed.width() && sensed.at({x, y}) == want;
        if (on && run < 0) run = x;
        if (!on && run >= 0) {
          out << "<rect x=\"";
          fmt("%.3f\" y=\"%.3f\" ", run * cs, H - (y + 1) * cs);
          fmt("width=\"%.3f\" height=\"%.3f\" fill=\"", (x - run) * cs, cs);
          out << color << "\"/>\n";
          run = -1;
        }
      }
    }
  }

  if (sub) {
    out << "<g fill=\"none\" stroke=\"#ffd700\" stroke-width=\"0.06\">\n";
    for (const Region& r : sub->regions()) {
      fmt("<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\"/>\n",
          r.bbox.x0 - w.x0, H - (r.bbox.y1 - w.y0), r.bbox.width(), r.bbox.height());
    }
    out << "</g>\n";
  }

  if (traj && traj->states.size() > 1) {
    out << "<polyline fill=\"none\" stroke=\"#ff00ff\" stroke-width=\"0.15\" points=\"";
    for (const SnakeState& s : traj->states) fmt("%.3f,%.3f ", s.x - w.x0, H - (s.y - w.y0));
    out << "\"/>\n";
  }

  if (model && state) {
    std::array<OrientedRect, kMaxLinks> rects;
    const int n = footprint(*model, *state, rects);
    for (int i = n - 1; i >= 0; --i) {
      out << "<polygon fill=\"" << (i == 0 ? "#cc0000" : "#00008b") << "\" points=\"";
      for (const Vec2& c : rects[i].corners()) fmt("%.3f,%.3f ", c.x - w.x0, H - (c.y - w.y0));
      out << "\"/>\n";
    }
  }
  out << "</svg>\n";
}

inline void render_snapshot_file(const std::string& path, const OccupancyGrid& sensed,
                                 const Subdivision* sub, const Trajectory* traj,
                                 const RobotModel* model, const SnakeState* state) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("svg: cannot write " + path);
  render_snapshot(out, sensed, sub, traj, model, state);
}

}  // namespace snakeplan
