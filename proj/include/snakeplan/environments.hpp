#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "snakeplan/collision.hpp"
#include "snakeplan/grid.hpp"
#include "snakeplan/rng.hpp"

namespace snakeplan {

enum class EnvType { kWaves, kRandom, kMaze, kRings, kOffice, kFile };

inline std::string to_string(EnvType e) {
  switch (e) {
    case EnvType::kWaves: return "waves";
    case EnvType::kRandom: return "random";
    case EnvType::kMaze: return "maze";
    case EnvType::kRings: return "rings";
    case EnvType::kOffice: return "office";
    default: return "file";
  }
}

inline EnvType parse_env_type(const std::string& name) {
  if (name == "waves") return EnvType::kWaves;
  if (name == "random") return EnvType::kRandom;
  if (name == "maze") return EnvType::kMaze;
  if (name == "rings") return EnvType::kRings;
  if (name == "office") return EnvType::kOffice;
  if (name == "file") return EnvType::kFile;
  throw std::invalid_argument("unknown environment type: " + name);
}

struct ScenarioSpec {
  EnvType env = EnvType::kWaves;
  int level = 1;
  std::uint64_t seed = 0;
  double world_m = 80.0;  // square worlds for types 1-4
  int grid_cells = 128;
  int trailers = 3;
  std::string map_path;      // EnvType::kFile
  std::string sidecar_path;  // optional start/goal/robot sidecar
};

struct Scenario {
  std::string id;
  OccupancyGrid world;
  RobotModel robot;
  SnakeState start;
  Vec2 goal;
};

namespace detail {

// BFS over non-occupied cells (4-adjacency).
inline bool bfs_connected(const OccupancyGrid& g, Cell a, Cell b) {
  if (g.at(a) == CellState::Occupied || g.at(b) == CellState::Occupied)
    return false;
  std::vector<std::uint8_t> seen(g.size(), 0);
  std::deque<Cell> queue{a};
  seen[g.index(a)] = 1;
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    if (c == b) return true;
    const Cell nbs[4] = {{c.x + 1, c.y}, {c.x - 1, c.y}, {c.x, c.y + 1}, {c.x, c.y - 1}};
    for (const Cell& n : nbs) {
      if (!g.in_bounds(n) || seen[g.index(n)] ||
          g.at(n) == CellState::Occupied)
        continue;
      seen[g.index(n)] = 1;
      queue.push_back(n);
    }
  }
  return false;
}

// No occupied cell center within radius_m of this cell's center.
inline bool clear_radius_ok(const OccupancyGrid& g, Cell c, double radius_m) {
  const int r = static_cast<int>(std::ceil(radius_m / g.cell_size())) + 1;
  const Vec2 p = g.center_of(c);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const Cell n{c.x + dx, c.y + dy};
      if (!g.in_bounds(n) || g.at(n) != CellState::Occupied) continue;
      if (distance(g.center_of(n), p) <= radius_m) return false;
    }
  }
  return true;
}

// Distance from head center to the tail end of a straight chain, plus margin.
inline double chain_length(const RobotModel& m) {
  return m.trailers * (m.body_len + m.hitch) + m.body_len / 2.0 + 0.3;
}

// Random free cell in rows [y_lo, y_hi) with the required obstacle clearance.
inline std::optional<Cell> place_in_rows(const OccupancyGrid& g, Rng& rng,
                                         int y_lo, int y_hi, double clear_m,
                                         int tries = 400) {
  y_lo = std::clamp(y_lo, 0, g.height() - 1);
  y_hi = std::clamp(y_hi, y_lo + 1, g.height());
  for (int t = 0; t < tries; ++t) {
    const Cell c{static_cast<int>(rng.uniform_int(g.width())),
                 y_lo + static_cast<int>(rng.uniform_int(y_hi - y_lo))};
    if (g.at(c) == CellState::Free && clear_radius_ok(g, c, clear_m)) return c;
  }
  return std::nullopt;
}

inline std::optional<Cell> place_anywhere(const OccupancyGrid& g, Rng& rng,
                                          double clear_m, int tries = 800) {
  return place_in_rows(g, rng, 0, g.height(), clear_m, tries);
}

// Start pose near the bottom (or mirrored near the top when `top`), heading
// along +y/-y so trailers extend toward the closer world edge. The row band is
// the lowest 10% of rows, lifted just enough that the trailer chain fits.
inline std::optional<SnakeState> place_endpoint_pose(const OccupancyGrid& g,
                                                     const RobotModel& model,
                                                     Rng& rng, bool top) {
  const double H = g.world_rect().height();
  const double lo_m = chain_length(model);
  const double hi_m = std::max(0.1 * H, lo_m + 2.0);
  const int rows_lo = static_cast<int>(lo_m / g.cell_size());
  const int rows_hi = static_cast<int>(hi_m / g.cell_size()) + 1;
  for (int t = 0; t < 60; ++t) {
    const auto cell =
        top ? place_in_rows(g, rng, g.height() - rows_hi, g.height() - rows_lo,
                            model.body_len)
            : place_in_rows(g, rng, rows_lo, rows_hi, model.body_len);
    if (!cell) return std::nullopt;
    const Vec2 p = g.center_of(*cell);
    const SnakeState s = make_state(model, p.x, p.y, top ? -M_PI / 2 : M_PI / 2);
    if (!collision(g, model, s)) return s;
  }
  return std::nullopt;
}

struct Placement {
  SnakeState start;
  Vec2 goal;
};

// Bottom start, top goal, connected through non-occupied space.
inline std::optional<Placement> place_bottom_top(const OccupancyGrid& g,
                                                 const RobotModel& model,
                                                 Rng& rng) {
  const auto start = place_endpoint_pose(g, model, rng, false);
  if (!start) return std::nullopt;
  const auto goal_pose = place_endpoint_pose(g, model, rng, true);
  if (!goal_pose) return std::nullopt;
  const Vec2 goal = goal_pose->position();
  if (!bfs_connected(g, g.cell_of(start->position()), g.cell_of(goal)))
    return std::nullopt;
  return Placement{*start, goal};
}

}  // namespace detail

// --- Environment type 1: wave bands with gaps -------------------------------

// Wave-like obstacle bands (4 + level of them) spanning the world width, each
// carved with randomly placed gaps of varying widths. One generous gap per
// band keeps instances navigable; the rest may be narrow.
inline OccupancyGrid gen_waves_grid(int level, std::uint64_t seed, double world_m,
                                    int cells) {
  OccupancyGrid g(cells, cells, world_m / cells, CellState::Free);
  Rng rng = Rng::stream(seed, 1, level);
  const int bands = 4 + level;
  const double H = world_m;
  const double half_thick = 0.55;
  for (int b = 0; b < bands; ++b) {
    const double yc = 0.15 * H + (b + 0.5) / bands * 0.7 * H;
    const double amp = rng.uniform(1.0, 2.5);
    const double wavelen = rng.uniform(12.0, 30.0);
    const double phase = rng.uniform(0.0, 2.0 * M_PI);

    const int gaps = 2 + static_cast<int>(rng.uniform_int(4));  // 2..5
    std::vector<std::pair<double, double>> gap_x;
    for (int k = 0; k < gaps; ++k) {
      const double w = k == 0 ? rng.uniform(2.5, 4.0) : rng.uniform(0.8, 4.0);
      const double cx = rng.uniform(2.0, world_m - 2.0);
      gap_x.emplace_back(cx - w / 2.0, cx + w / 2.0);
    }

    for (int ix = 0; ix < cells; ++ix) {
      const double cx = (ix + 0.5) * g.cell_size();
      bool in_gap = false;
      for (const auto& [g0, g1] : gap_x)
        if (cx >= g0 && cx < g1) in_gap = true;
      if (in_gap) continue;
      const double wave_y = yc + amp * std::sin(2.0 * M_PI * cx / wavelen + phase);
      for (int iy = 0; iy < cells; ++iy) {
        const double cy = (iy + 0.5) * g.cell_size();
        if (std::abs(cy - wave_y) <= half_thick) g.set({ix, iy}, CellState::Occupied);
      }
    }
  }
  return g;
}

// --- Environment type 2: scattered rectangles -------------------------------

// Random rectangular obstacles until the occupied fraction reaches
// 0.15 + 0.01 * (level - 1).
inline OccupancyGrid gen_random_grid(int level, std::uint64_t seed, double world_m,
                                     int cells) {
  OccupancyGrid g(cells, cells, world_m / cells, CellState::Free);
  Rng rng = Rng::stream(seed, 2, level);
  const double target = 0.15 + 0.01 * (level - 1);
  const double total = static_cast<double>(g.size());
  std::size_t occupied = 0;
  while (occupied < target * total) {
    const int w = std::max(1, static_cast<int>(rng.uniform(1.25, 4.0) / g.cell_size()));
    const int h = std::max(1, static_cast<int>(rng.uniform(1.25, 4.0) / g.cell_size()));
    const int x0 = static_cast<int>(rng.uniform_int(cells));
    const int y0 = static_cast<int>(rng.uniform_int(cells));
    for (int y = y0; y < std::min(y0 + h, cells); ++y) {
      for (int x = x0; x < std::min(x0 + w, cells); ++x) {
        if (g.at({x, y}) != CellState::Occupied) {
          g.set({x, y}, CellState::Occupied);
          ++occupied;
        }
      }
    }
  }
  return g;
}

// --- Environment type 3: Kruskal mazes ---------------------------------------

namespace detail {

struct MazeEdge {
  int a, b;  // maze-cell indices
};

// Randomized Kruskal spanning tree over an n x n cell lattice; returns the
// carved passages (exactly n*n - 1 of them).
inline std::vector<MazeEdge> maze_spanning_tree(int n, Rng& rng) {
  std::vector<MazeEdge> edges;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i + 1 < n) edges.push_back({j * n + i, j * n + i + 1});
      if (j + 1 < n) edges.push_back({j * n + i, (j + 1) * n + i});
    }
  }
  for (std::size_t k = edges.size(); k > 1; --k)
    std::swap(edges[k - 1], edges[rng.uniform_int(k)]);

  std::vector<int> parent(n * n);
  for (int i = 0; i < n * n; ++i) parent[i] = i;
  const auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };

  std::vector<MazeEdge> carved;
  for (const MazeEdge& e : edges) {
    const int ra = find(e.a), rb = find(e.b);
    if (ra == rb) continue;
    parent[ra] = rb;
    carved.push_back(e);
    if (static_cast<int>(carved.size()) == n * n - 1) break;
  }
  return carved;
}

}  // namespace detail

inline int maze_side(int level) { return 9 + level; }  // 10x10 .. 15x15

// Maze walls drawn on cell-aligned lattice lines, one occupancy cell thick;
// carved passages open the full shared edge between the wall posts.
inline OccupancyGrid gen_maze_grid(int level, std::uint64_t seed, double world_m,
                                   int cells) {
  OccupancyGrid g(cells, cells, world_m / cells, CellState::Free);
  Rng rng = Rng::stream(seed, 3, level);
  const int n = maze_side(level);
  const auto carved = detail::maze_spanning_tree(n, rng);
  std::vector<std::uint8_t> open(static_cast<std::size_t>(2) * n * n, 0);
  // open[2*cell+0]: passage to the +x neighbor; +1: to the +y neighbor.
  for (const auto& e : carved) {
    const int lo = std::min(e.a, e.b);
    open[2 * lo + (std::abs(e.a - e.b) == 1 ? 0 : 1)] = 1;
  }

  // Lattice line k sits at occupancy row/col round(k * cells / n).
  const auto line = [&](int k) {
    return static_cast<int>(std::lround(static_cast<double>(k) * cells / n));
  };
  const auto fill = [&](int x0, int x1, int y0, int y1) {
    for (int y = std::max(0, y0); y < std::min(cells, y1); ++y)
      for (int x = std::max(0, x0); x < std::min(cells, x1); ++x)
        g.set({x, y}, CellState::Occupied);
  };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // Wall to the +x neighbor: column line(i+1), rows [line(j), line(j+1)].
      if (i + 1 < n && !open[2 * (j * n + i) + 0])
        fill(line(i + 1), line(i + 1) + 1, line(j), line(j + 1) + 1);
      // Wall to the +y neighbor: row line(j+1), cols [line(i), line(i+1)].
      if (j + 1 < n && !open[2 * (j * n + i) + 1])
        fill(line(i), line(i + 1) + 1, line(j + 1), line(j + 1) + 1);
    }
  }
  return g;
}

// --- Environment type 4: concentric rings ------------------------------------

inline double rings_separation(int level) { return 8.0 - level; }  // 7m .. 2m

inline std::vector<double> rings_radii(int level, double world_m) {
  const double sep = rings_separation(level);
  const double limit = world_m / 2.0 - 2.5;
  std::vector<double> radii;
  for (double r = 4.0; r <= limit; r += sep) radii.push_back(r);
  return radii;
}

// Concentric rings around the world center, each with 1-3 gaps of width
// 2-4 m (always comfortably wider than 1.5x the robot width).
inline OccupancyGrid gen_rings_grid(int level, std::uint64_t seed, double world_m,
                                    int cells) {
  OccupancyGrid g(cells, cells, world_m / cells, CellState::Free);
  Rng rng = Rng::stream(seed, 4, level);
  const Vec2 center{world_m / 2.0, world_m / 2.0};
  const std::vector<double> radii = rings_radii(level, world_m);
  const double half_thick = g.cell_size() * 0.75;

  std::vector<std::vector<std::pair<double, double>>> gaps(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const int ng = 1 + static_cast<int>(rng.uniform_int(3));
    for (int q = 0; q < ng; ++q) {
      const double width_m = rng.uniform(2.0, 4.0);
      const double half_arc = width_m / (2.0 * radii[k]);
      const double a = rng.uniform(-M_PI, M_PI);
      gaps[k].emplace_back(a - half_arc, a + half_arc);
    }
  }

  for (int iy = 0; iy < cells; ++iy) {
    for (int ix = 0; ix < cells; ++ix) {
      const Vec2 p = g.center_of({ix, iy});
      const double r = distance(p, center);
      const double ang = std::atan2(p.y - center.y, p.x - center.x);
      for (std::size_t k = 0; k < radii.size(); ++k) {
        if (std::abs(r - radii[k]) > half_thick) continue;
        bool in_gap = false;
        for (const auto& [a0, a1] : gaps[k]) {
          if (ang >= a0 && ang <= a1) in_gap = true;
          if (ang + 2 * M_PI >= a0 && ang + 2 * M_PI <= a1) in_gap = true;
          if (ang - 2 * M_PI >= a0 && ang - 2 * M_PI <= a1) in_gap = true;
        }
        if (!in_gap) g.set({ix, iy}, CellState::Occupied);
      }
    }
  }
  return g;
}

// --- Environment type 5: office floors ---------------------------------------

inline std::pair<double, double> office_dims(int level) {
  switch (level) {
    case 1: return {500.0, 300.0};
    case 2: return {600.0, 400.0};
    default: return {700.0, 500.0};
  }
}

// Intersecting hallways with rooms bordering them; every room opens onto a
// hallway through a door gap and may contain furniture-like obstructions.
inline OccupancyGrid gen_office_grid(int level, std::uint64_t seed) {
  const auto [wm, hm] = office_dims(level);
  const int W = static_cast<int>(wm), H = static_cast<int>(hm);
  OccupancyGrid g(W, H, 1.0, CellState::Free);
  Rng rng = Rng::stream(seed, 5, level);

  const int hall_w = 5;
  std::vector<int> xs{0}, ys{0};
  for (double x = rng.uniform(90, 140); x < W - 40; x += rng.uniform(90, 140))
    xs.push_back(static_cast<int>(x));
  xs.push_back(W);
  for (double y = rng.uniform(70, 110); y < H - 30; y += rng.uniform(70, 110))
    ys.push_back(static_cast<int>(y));
  ys.push_back(H);

  const auto is_hall = [&](int x, int y) {
    for (std::size_t i = 1; i + 1 < xs.size(); ++i)
      if (x >= xs[i] && x < xs[i] + hall_w) return true;
    for (std::size_t j = 1; j + 1 < ys.size(); ++j)
      if (y >= ys[j] && y < ys[j] + hall_w) return true;
    return false;
  };

  const auto wall = [&](int x0, int x1, int y0, int y1) {
    for (int y = std::max(0, y0); y < std::min(H, y1); ++y)
      for (int x = std::max(0, x0); x < std::min(W, x1); ++x)
        if (!is_hall(x, y)) g.set({x, y}, CellState::Occupied);
  };

  // Blocks between hallway strips, cut into rooms by vertical walls; each
  // room gets a door on the hallway-facing side.
  for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
    const int by0 = ys[j] + (j == 0 ? 0 : hall_w);
    const int by1 = ys[j + 1];
    if (by1 - by0 < 12) continue;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const int bx0 = xs[i] + (i == 0 ? 0 : hall_w);
      const int bx1 = xs[i + 1];
      if (bx1 - bx0 < 12) continue;

      wall(bx0, bx1, by0, by0 + 1);
      wall(bx0, bx1, by1 - 1, by1);
      wall(bx0, bx0 + 1, by0, by1);
      wall(bx1 - 1, bx1, by0, by1);

      std::vector<int> cuts{bx0};
      for (double x = bx0 + rng.uniform(12, 22); x < bx1 - 12;
           x += rng.uniform(12, 22)) {
        cuts.push_back(static_cast<int>(x));
        wall(static_cast<int>(x), static_cast<int>(x) + 1, by0, by1);
      }
      cuts.push_back(bx1);

      const bool door_below = j > 0;  // bottom edge strip opens upward
      for (std::size_t r = 0; r + 1 < cuts.size(); ++r) {
        const int rx0 = cuts[r], rx1 = cuts[r + 1];
        const int door_w = 3;
        const int dx = rx0 + 2 +
                       static_cast<int>(rng.uniform_int(
                           std::max(1, rx1 - rx0 - 4 - door_w)));
        const int dy = door_below ? by0 : by1 - 1;
        for (int x = dx; x < std::min(dx + door_w, rx1 - 1); ++x)
          g.set({x, dy}, CellState::Free);

        // Furniture, kept away from walls so rooms stay traversable.
        const int blobs = static_cast<int>(rng.uniform_int(3));
        for (int b = 0; b < blobs; ++b) {
          if (rx1 - rx0 < 14 || by1 - by0 < 14) break;
          const int fw = 1 + static_cast<int>(rng.uniform_int(3));
          const int fh = 1 + static_cast<int>(rng.uniform_int(3));
          const int fx = rx0 + 4 + static_cast<int>(rng.uniform_int(rx1 - rx0 - 8 - fw + 1));
          const int fy = by0 + 4 + static_cast<int>(rng.uniform_int(by1 - by0 - 8 - fh + 1));
          for (int y = fy; y < fy + fh; ++y)
            for (int x = fx; x < fx + fw; ++x)
              if (!is_hall(x, y)) g.set({x, y}, CellState::Occupied);
        }
      }
    }
  }
  return g;
}

// --- Scenario assembly --------------------------------------------------------

// Builds the world and places start/goal for a spec, retrying with derived
// sub-seeds until the instance is valid (free endpoints with clearance, a
// collision-free spawn, and start-goal connectivity), as generated worlds can
// occasionally seal their endpoints.
inline Scenario make_scenario(const ScenarioSpec& spec) {
  Scenario sc;
  sc.robot.trailers = spec.trailers;
  sc.id = to_string(spec.env) + "-L" + std::to_string(spec.level) + "-s" +
          std::to_string(spec.seed);

  if (spec.env == EnvType::kFile) {
    sc.world = load_map(spec.map_path);
    Rng rng = Rng::stream(spec.seed, 6);
    const auto start_cell = detail::place_anywhere(sc.world, rng, sc.robot.body_len);
    const auto goal_cell = detail::place_anywhere(sc.world, rng, sc.robot.body_len);
    if (!start_cell || !goal_cell)
      throw std::runtime_error("file scenario: no free endpoints in map");
    const Vec2 sp = sc.world.center_of(*start_cell);
    const Vec2 gp = sc.world.center_of(*goal_cell);
    sc.start = make_state(sc.robot, sp.x, sp.y,
                          std::atan2(gp.y - sp.y, gp.x - sp.x));
    sc.goal = gp;
    return sc;
  }

  for (int attempt = 0; attempt < 20; ++attempt) {
    const std::uint64_t sub_seed = Rng::stream(spec.seed, 7, attempt).next_u64();
    Rng place_rng = Rng::stream(sub_seed, 8);
    switch (spec.env) {
      case EnvType::kWaves:
        sc.world = gen_waves_grid(spec.level, sub_seed, spec.world_m, spec.grid_cells);
        break;
      case EnvType::kRandom:
        sc.world = gen_random_grid(spec.level, sub_seed, spec.world_m, spec.grid_cells);
        break;
      case EnvType::kMaze:
        sc.world = gen_maze_grid(spec.level, sub_seed, spec.world_m, spec.grid_cells);
        break;
      case EnvType::kRings:
        sc.world = gen_rings_grid(spec.level, sub_seed, spec.world_m, spec.grid_cells);
        break;
      case EnvType::kOffice:
        sc.world = gen_office_grid(spec.level, sub_seed);
        break;
      default:
        throw std::invalid_argument("make_scenario: bad env type");
    }

    if (spec.env == EnvType::kWaves || spec.env == EnvType::kRandom ||
        spec.env == EnvType::kMaze) {
      const auto placed = detail::place_bottom_top(sc.world, sc.robot, place_rng);
      if (!placed) continue;
      sc.start = placed->start;
      sc.goal = placed->goal;
      return sc;
    }

    if (spec.env == EnvType::kRings) {
      const std::vector<double> radii = rings_radii(spec.level, spec.world_m);
      const Vec2 center{spec.world_m / 2.0, spec.world_m / 2.0};
      const double r_out = radii.back() + 1.5;
      const double r_in = radii.front() - 1.2;
      std::optional<SnakeState> start;
      for (int t = 0; t < 400 && !start; ++t) {
        const auto c = detail::place_anywhere(sc.world, place_rng, sc.robot.body_len, 1);
        if (!c) continue;
        const Vec2 p = sc.world.center_of(*c);
        if (distance(p, center) <= r_out) continue;
        const SnakeState s = make_state(
            sc.robot, p.x, p.y, std::atan2(center.y - p.y, center.x - p.x));
        if (!collision(sc.world, sc.robot, s)) start = s;
      }
      std::optional<Vec2> goal;
      for (int t = 0; t < 400 && !goal; ++t) {
        const auto c = detail::place_anywhere(sc.world, place_rng, sc.robot.body_len, 1);
        if (!c) continue;
        const Vec2 p = sc.world.center_of(*c);
        if (distance(p, center) < r_in) goal = p;
      }
      if (!start || !goal) continue;
      if (!detail::bfs_connected(sc.world, sc.world.cell_of(start->position()),
                                 sc.world.cell_of(*goal)))
        continue;
      sc.start = *start;
      sc.goal = *goal;
      return sc;
    }

    // Office: endpoints anywhere.
    const auto sc_cell = detail::place_anywhere(sc.world, place_rng, sc.robot.body_len);
    const auto gc_cell = detail::place_anywhere(sc.world, place_rng, sc.robot.body_len);
    if (!sc_cell || !gc_cell || *sc_cell == *gc_cell) continue;
    const Vec2 sp = sc.world.center_of(*sc_cell);
    const Vec2 gp = sc.world.center_of(*gc_cell);
    const SnakeState s =
        make_state(sc.robot, sp.x, sp.y, std::atan2(gp.y - sp.y, gp.x - sp.x));
    if (collision(sc.world, sc.robot, s)) continue;
    if (!detail::bfs_connected(sc.world, *sc_cell, *gc_cell)) continue;
    sc.start = s;
    sc.goal = gp;
    return sc;
  }
  throw std::runtime_error("make_scenario: no solvable instance for " + sc.id +
                           " after 20 attempts");
}

}  // namespace snakeplan
