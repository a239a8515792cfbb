#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "snakeplan/grid.hpp"

namespace snakeplan {

// Output of one planar scan: visible free / occupied cells around the origin.
// The two sets are disjoint and every reported cell center lies within range.
struct SensorSweep {
  std::vector<std::int32_t> cells_free;
  std::vector<std::int32_t> cells_occ;
  Vec2 origin;
  double range = 0.0;
};

namespace detail {

// Amanatides-Woo traversal. Calls visit(cell, t_entry) for every cell whose
// interior the ray crosses, in order; exact corner hits step diagonally so
// grazed side cells are not visited. visit returns false to stop.
template <typename Visit>
void walk_cells(const OccupancyGrid& g, Vec2 p, Vec2 dir, double t_limit,
                Visit&& visit) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Cell c = g.cell_of(p);
  const double cs = g.cell_size();
  const Vec2 og = g.origin();

  const int sx = dir.x > 0.0 ? 1 : (dir.x < 0.0 ? -1 : 0);
  const int sy = dir.y > 0.0 ? 1 : (dir.y < 0.0 ? -1 : 0);

  double tx = kInf, ty = kInf, dtx = kInf, dty = kInf;
  if (sx != 0) {
    const double edge = og.x + (c.x + (sx > 0 ? 1 : 0)) * cs;
    tx = (edge - p.x) / dir.x;
    dtx = cs / std::abs(dir.x);
  }
  if (sy != 0) {
    const double edge = og.y + (c.y + (sy > 0 ? 1 : 0)) * cs;
    ty = (edge - p.y) / dir.y;
    dty = cs / std::abs(dir.y);
  }

  double t = 0.0;
  while (t <= t_limit && g.in_bounds(c)) {
    if (!visit(c, t)) return;
    if (tx < ty) {
      t = tx;
      c.x += sx;
      tx += dtx;
    } else if (ty < tx) {
      t = ty;
      c.y += sy;
      ty += dty;
    } else {
      if (tx == kInf) return;  // zero direction
      t = tx;
      c.x += sx;
      c.y += sy;
      tx += dtx;
      ty += dty;
    }
  }
}

// True iff the straight segment from `from` to the center of `target` reaches
// it without crossing the interior of any occupied cell first.
inline bool center_visible(const OccupancyGrid& g, Vec2 from, Cell target) {
  const Vec2 to = g.center_of(target);
  const Vec2 d = to - from;
  const double len = d.norm();
  if (len == 0.0) return true;
  const Vec2 dir = d * (1.0 / len);
  bool reached = false;
  bool blocked = false;
  walk_cells(g, from, dir, len, [&](Cell c, double) {
    if (c == target) {
      reached = true;
      return false;
    }
    if (g.at(c) == CellState::Occupied) {
      blocked = true;
      return false;
    }
    return true;
  });
  return reached && !blocked;
}

}  // namespace detail

// Simulated planar range scan: K evenly spaced rays are cast from (x, y); each
// marks traversed cells free until it hits an occupied cell (reported occupied,
// ray stops) or leaves range/bounds. Every candidate is then verified against a
// straight segment to its center, so occluded cells are never reported and
// reported centers lie within range.
inline SensorSweep sense(const OccupancyGrid& world, double x, double y,
                         double range, int rays = 720) {
  if (!world.in_bounds(Vec2{x, y}))
    throw std::invalid_argument("sense: origin out of world bounds");
  if (range <= 0.0) throw std::invalid_argument("sense: range must be positive");

  const Vec2 origin{x, y};
  // 0 = untouched, 1 = free candidate, 2 = occupied candidate
  std::vector<std::uint8_t> mark(world.size(), 0);

  for (int k = 0; k < rays; ++k) {
    const double ang = 2.0 * M_PI * k / rays;
    const Vec2 dir{std::cos(ang), std::sin(ang)};
    detail::walk_cells(world, origin, dir, range, [&](Cell c, double) {
      if (world.at(c) == CellState::Occupied) {
        mark[world.index(c)] = 2;
        return false;
      }
      mark[world.index(c)] = 1;
      return true;
    });
  }

  SensorSweep sweep;
  sweep.origin = origin;
  sweep.range = range;
  const double r2 = range * range;
  for (std::int32_t idx = 0; idx < static_cast<std::int32_t>(world.size()); ++idx) {
    if (mark[idx] == 0) continue;
    const Cell c = world.cell_at(idx);
    if ((world.center_of(c) - origin).norm_sq() > r2) continue;
    if (!detail::center_visible(world, origin, c)) continue;
    (mark[idx] == 2 ? sweep.cells_occ : sweep.cells_free).push_back(idx);
  }
  return sweep;
}

// Applies a sweep to the sensed map. Occupied is sticky: a free report never
// downgrades an occupied cell. Returns the number of unknown->occupied
// transitions, which drives the replan trigger.
inline int update_sensed(OccupancyGrid& sensed, const SensorSweep& sweep) {
  int newly_occupied = 0;
  for (std::int32_t idx : sweep.cells_occ) {
    if (sensed.at(idx) == CellState::Unknown) ++newly_occupied;
    sensed.set(idx, CellState::Occupied);
  }
  for (std::int32_t idx : sweep.cells_free) {
    if (sensed.at(idx) != CellState::Occupied) sensed.set(idx, CellState::Free);
  }
  return newly_occupied;
}

}  // namespace snakeplan
