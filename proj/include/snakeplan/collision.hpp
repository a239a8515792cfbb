#pragma once

#include <cmath>

#include "snakeplan/dynamics.hpp"
#include "snakeplan/grid.hpp"

namespace snakeplan {

namespace detail {

// Samples the oriented rectangle on a lattice of pitch cell_size/2 (corners
// included); a sample outside the world or on an occupied cell is a hit.
// Unknown cells count as free.
inline bool rect_hits_grid(const OccupancyGrid& grid, const OrientedRect& rect) {
  const double pitch = grid.cell_size() / 2.0;
  const int nu = std::max(1, static_cast<int>(std::ceil(2.0 * rect.half_len / pitch)));
  const int nv = std::max(1, static_cast<int>(std::ceil(2.0 * rect.half_wid / pitch)));
  const Vec2 u = rect.axis_long();
  const Vec2 v = rect.axis_short();
  for (int i = 0; i <= nu; ++i) {
    const double du = -rect.half_len + 2.0 * rect.half_len * i / nu;
    for (int j = 0; j <= nv; ++j) {
      const double dv = -rect.half_wid + 2.0 * rect.half_wid * j / nv;
      const Vec2 p = rect.center + u * du + v * dv;
      if (!grid.in_bounds(p)) return true;
      if (grid.at(grid.cell_of(p)) == CellState::Occupied) return true;
    }
  }
  return false;
}

}  // namespace detail

// State validity against the sensed map: a state is in collision iff a bound
// is violated, any footprint rectangle overlaps an occupied cell or leaves the
// world, or non-consecutive links overlap each other.
inline bool collision(const OccupancyGrid& sensed, const RobotModel& model,
                      const SnakeState& s) {
  if (std::abs(s.v) > model.v_max || std::abs(s.psi) > model.psi_max) return true;

  std::array<OrientedRect, kMaxLinks> rects;
  const int n = footprint(model, s, rects);
  for (int i = 0; i < n; ++i)
    if (detail::rect_hits_grid(sensed, rects[i])) return true;

  for (int i = 0; i + 2 < n; ++i)
    for (int j = i + 2; j < n; ++j)
      if (intersects(rects[i], rects[j])) return true;
  return false;
}

// True iff every state of the trajectory is collision-free against the grid.
inline bool trajectory_collision_free(const OccupancyGrid& grid,
                                      const RobotModel& model,
                                      const Trajectory& traj) {
  for (const SnakeState& s : traj.states)
    if (collision(grid, model, s)) return false;
  return true;
}

}  // namespace snakeplan
