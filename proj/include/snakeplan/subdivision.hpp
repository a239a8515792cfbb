#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "snakeplan/grid.hpp"
#include "snakeplan/radix_heap.hpp"

namespace snakeplan {

constexpr double kInfCost = std::numeric_limits<double>::infinity();

// Leaf of the adaptive subdivision. Occupied regions take no part in the
// goal-path graph; clear is the brush-fire clearance in meters.
struct Region {
  std::int32_t id = -1;
  Rect bbox;
  bool occupied = false;
  bool boundary = false;
  double clear = 0.0;
  double path_cost = kInfCost;
  std::int32_t path_next = -1;  // next region toward the goal, -1 at goal/unreachable
  int nsel = 0;
  std::vector<std::int32_t> node_ids;  // motion-tree nodes currently inside
};

// Picks the coarse grid for a sensed map: 48x48 for scenes up to 128x128
// cells, 64x64 for larger ones.
inline int default_coarse_dim(const OccupancyGrid& sensed) {
  return (sensed.width() <= 128 && sensed.height() <= 128) ? 48 : 64;
}

// Adaptive quadtree over the free+unknown space of a sensed map. A coarse grid
// is laid over the world; every cell is quad-split while it contains at least
// one occupied sensed cell and its area still exceeds one sensed cell's area.
class Subdivision {
 public:
  static Subdivision build(const OccupancyGrid& sensed, int coarse_w, int coarse_h) {
    if (coarse_w < 1 || coarse_h < 1)
      throw std::invalid_argument("subdivision: coarse dims must be >= 1");
    Subdivision sub;
    sub.world_ = sensed.world_rect();
    sub.cell_area_ = sensed.cell_size() * sensed.cell_size();
    sub.build_occupancy_prefix(sensed);

    sub.qt_.reserve(static_cast<std::size_t>(coarse_w) * coarse_h * 2);
    sub.coarse_w_ = coarse_w;
    sub.coarse_h_ = coarse_h;
    const Rect w = sub.world_;
    for (int cy = 0; cy < coarse_h; ++cy) {
      for (int cx = 0; cx < coarse_w; ++cx) {
        // Edges as w * i / n so neighbors share bit-identical coordinates.
        Rect bbox{w.x0 + (w.x1 - w.x0) * cx / coarse_w,
                  w.y0 + (w.y1 - w.y0) * cy / coarse_h,
                  w.x0 + (w.x1 - w.x0) * (cx + 1) / coarse_w,
                  w.y0 + (w.y1 - w.y0) * (cy + 1) / coarse_h};
        sub.qt_.push_back(QtNode{bbox, -1, -1});
      }
    }
    for (int i = 0; i < coarse_w * coarse_h; ++i) sub.subdivide(sensed, i);
    assert(sub.regions_.size() < (1u << 21));
    sub.build_adjacency();
    return sub;
  }

  const std::vector<Region>& regions() const { return regions_; }
  Region& region(std::int32_t id) { return regions_[id]; }
  const Region& region(std::int32_t id) const { return regions_[id]; }
  std::size_t region_count() const { return regions_.size(); }
  Rect world_rect() const { return world_; }

  std::span<const std::int32_t> neighbors(std::int32_t id) const {
    return {adj_.data() + adj_offset_[id],
            static_cast<std::size_t>(adj_offset_[id + 1] - adj_offset_[id])};
  }

  // Descends the quadtree; containment is half-open per axis.
  std::int32_t locate(Vec2 p) const {
    if (!world_.contains(p))
      throw std::invalid_argument("locate: point outside world bounds");
    int cx = static_cast<int>((p.x - world_.x0) / (world_.x1 - world_.x0) * coarse_w_);
    int cy = static_cast<int>((p.y - world_.y0) / (world_.y1 - world_.y0) * coarse_h_);
    cx = std::clamp(cx, 0, coarse_w_ - 1);
    cy = std::clamp(cy, 0, coarse_h_ - 1);
    // One-step correction in case the arithmetic landed one cell off.
    while (cx > 0 && p.x < qt_[cy * coarse_w_ + cx].bbox.x0) --cx;
    while (cx + 1 < coarse_w_ && p.x >= qt_[cy * coarse_w_ + cx].bbox.x1) ++cx;
    while (cy > 0 && p.y < qt_[cy * coarse_w_ + cx].bbox.y0) --cy;
    while (cy + 1 < coarse_h_ && p.y >= qt_[cy * coarse_w_ + cx].bbox.y1) ++cy;

    std::int32_t n = cy * coarse_w_ + cx;
    while (qt_[n].first_child >= 0) {
      const Rect& b = qt_[n].bbox;
      const double mx = 0.5 * (b.x0 + b.x1);
      const double my = 0.5 * (b.y0 + b.y1);
      n = qt_[n].first_child + (p.x >= mx ? 1 : 0) + (p.y >= my ? 2 : 0);
    }
    return qt_[n].region;
  }

  // Brush-fire clearance sweep: occupied regions seed at 0, boundary regions
  // at their center's distance to the nearest world edge, then a multi-source
  // Dijkstra relaxes clear(adj) = clear(r) + ||center(r) - center(adj)||.
  void compute_clearances(bool seed_boundary = true) {
    const std::size_t n = regions_.size();
    std::vector<double> dist(n, kInfCost);
    double total = world_.diagonal() + 1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::int32_t j : neighbors(static_cast<std::int32_t>(i)))
        total += distance(regions_[i].bbox.center(), regions_[j].bbox.center());
    const double scale = double(1ULL << 32) / total;
    const auto key = [&](double d, std::int32_t id) {
      return (static_cast<std::uint64_t>(d * scale) << 21) |
             static_cast<std::uint32_t>(id);
    };

    RadixHeap<std::int32_t> heap;
    for (const Region& r : regions_) {
      if (r.occupied) {
        dist[r.id] = 0.0;
      } else if (seed_boundary && r.boundary) {
        const Vec2 c = r.bbox.center();
        dist[r.id] = std::min({c.x - world_.x0, world_.x1 - c.x,
                               c.y - world_.y0, world_.y1 - c.y});
      } else {
        continue;
      }
      heap.push(key(dist[r.id], r.id), r.id);
    }
    while (!heap.empty()) {
      const auto [k, id] = heap.pop_min();
      if (k != key(dist[id], id)) continue;  // stale entry
      const Vec2 c = regions_[id].bbox.center();
      for (std::int32_t nb : neighbors(id)) {
        const double d = dist[id] + distance(c, regions_[nb].bbox.center());
        if (d < dist[nb]) {
          dist[nb] = d;
          heap.push(key(d, nb), nb);
        }
      }
    }
    for (Region& r : regions_) r.clear = r.occupied ? 0.0 : dist[r.id];
    clearances_done_ = true;
  }

  bool clearances_done() const { return clearances_done_; }

  // Travel cost between adjacent regions, emphasizing clearance.
  static double edge_cost(const Region& a, const Region& b, double alpha,
                          double cmax) {
    const double c = std::min({a.clear, b.clear, cmax});
    return distance(a.bbox.center(), b.bbox.center()) / std::pow(c, alpha);
  }

  // Single-source Dijkstra from the goal's region over non-occupied regions,
  // using a radix heap over quantized costs (ties resolved by lower region
  // id). Fills path_cost/path_next for every region. Returns false when the
  // goal lands in an occupied region.
  bool compute_paths_to_goal(Vec2 goal, double alpha, double cmax) {
    assert(clearances_done_);
    const std::int32_t goal_region = locate(goal);
    for (Region& r : regions_) {
      r.path_cost = kInfCost;
      r.path_next = -1;
    }
    if (regions_[goal_region].occupied) return false;

    double total = 1.0;
    for (const Region& r : regions_) {
      if (r.occupied) continue;
      for (std::int32_t nb : neighbors(r.id))
        if (!regions_[nb].occupied)
          total += edge_cost(r, regions_[nb], alpha, cmax);
    }
    const double scale = double(1ULL << 32) / total;
    const auto key = [&](double d, std::int32_t id) {
      return (static_cast<std::uint64_t>(d * scale) << 21) |
             static_cast<std::uint32_t>(id);
    };

    RadixHeap<std::int32_t> heap;
    regions_[goal_region].path_cost = 0.0;
    heap.push(key(0.0, goal_region), goal_region);
    while (!heap.empty()) {
      const auto [k, id] = heap.pop_min();
      if (k != key(regions_[id].path_cost, id)) continue;
      for (std::int32_t nb : neighbors(id)) {
        if (regions_[nb].occupied) continue;
        const double d =
            regions_[id].path_cost + edge_cost(regions_[id], regions_[nb], alpha, cmax);
        if (d < regions_[nb].path_cost) {
          regions_[nb].path_cost = d;
          regions_[nb].path_next = id;
          heap.push(key(d, nb), nb);
        }
      }
    }
    goal_region_ = goal_region;
    return true;
  }

  std::int32_t goal_region() const { return goal_region_; }

  // Region-id sequence from `id` to the goal region (inclusive); empty when
  // unreachable.
  std::vector<std::int32_t> path_of(std::int32_t id) const {
    std::vector<std::int32_t> path;
    if (regions_[id].path_cost == kInfCost) return path;
    for (std::int32_t cur = id; cur != -1; cur = regions_[cur].path_next)
      path.push_back(cur);
    return path;
  }

 private:
  struct QtNode {
    Rect bbox;
    std::int32_t first_child = -1;  // four children are contiguous
    std::int32_t region = -1;       // leaf only
  };

  void build_occupancy_prefix(const OccupancyGrid& g) {
    grid_w_ = g.width();
    grid_h_ = g.height();
    cell_size_ = g.cell_size();
    prefix_.assign(static_cast<std::size_t>(grid_w_ + 1) * (grid_h_ + 1), 0);
    for (int y = 0; y < grid_h_; ++y) {
      for (int x = 0; x < grid_w_; ++x) {
        prefix_[(y + 1) * (grid_w_ + 1) + (x + 1)] =
            prefix_[y * (grid_w_ + 1) + (x + 1)] +
            prefix_[(y + 1) * (grid_w_ + 1) + x] - prefix_[y * (grid_w_ + 1) + x] +
            (g.at({x, y}) == CellState::Occupied ? 1 : 0);
      }
    }
  }

  // Occupied-cell count over all cells whose rectangle overlaps bbox with
  // positive area (half-open).
  int occupied_in(const Rect& bbox) const {
    const auto lo = [&](double coord, double origin, int n) {
      int i = std::clamp(static_cast<int>(std::floor((coord - origin) / cell_size_)), 0, n);
      if (i < n && origin + (i + 1) * cell_size_ <= coord) ++i;
      return i;
    };
    const auto hi = [&](double coord, double origin, int n) {
      int i = std::clamp(static_cast<int>(std::ceil((coord - origin) / cell_size_)), 0, n);
      if (i > 0 && origin + (i - 1) * cell_size_ >= coord) --i;
      while (i < n && origin + i * cell_size_ < coord) ++i;
      return i;
    };
    const int x0 = lo(bbox.x0, world_.x0, grid_w_);
    const int x1 = hi(bbox.x1, world_.x0, grid_w_);
    const int y0 = lo(bbox.y0, world_.y0, grid_h_);
    const int y1 = hi(bbox.y1, world_.y0, grid_h_);
    if (x0 >= x1 || y0 >= y1) return 0;
    const int W = grid_w_ + 1;
    return prefix_[y1 * W + x1] - prefix_[y0 * W + x1] - prefix_[y1 * W + x0] +
           prefix_[y0 * W + x0];
  }

  void subdivide(const OccupancyGrid& sensed, std::int32_t node) {
    const Rect b = qt_[node].bbox;
    const int occ = occupied_in(b);
    if (occ > 0 && b.area() > cell_area_) {
      const double mx = 0.5 * (b.x0 + b.x1);
      const double my = 0.5 * (b.y0 + b.y1);
      const std::int32_t first = static_cast<std::int32_t>(qt_.size());
      qt_[node].first_child = first;
      qt_.push_back(QtNode{{b.x0, b.y0, mx, my}, -1, -1});
      qt_.push_back(QtNode{{mx, b.y0, b.x1, my}, -1, -1});
      qt_.push_back(QtNode{{b.x0, my, mx, b.y1}, -1, -1});
      qt_.push_back(QtNode{{mx, my, b.x1, b.y1}, -1, -1});
      for (int q = 0; q < 4; ++q) subdivide(sensed, first + q);
      return;
    }
    Region r;
    r.id = static_cast<std::int32_t>(regions_.size());
    r.bbox = b;
    r.occupied = occ > 0;
    r.boundary = b.x0 == world_.x0 || b.x1 == world_.x1 || b.y0 == world_.y0 ||
                 b.y1 == world_.y1;
    qt_[node].region = r.id;
    regions_.push_back(std::move(r));
  }

  // Regions are adjacent iff they share an edge segment of positive length.
  // Shared coordinates are bit-identical by construction, so exact keying on
  // the edge coordinate is safe.
  void build_adjacency() {
    struct Side {
      double lo, hi;
      std::int32_t id;
    };
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
    const auto sweep = [&pairs](std::map<double, std::pair<std::vector<Side>, std::vector<Side>>>& m) {
      for (auto& [coord, lists] : m) {
        auto& [closing, opening] = lists;
        for (const Side& a : closing)
          for (const Side& b : opening)
            if (std::max(a.lo, b.lo) < std::min(a.hi, b.hi))
              pairs.emplace_back(a.id, b.id);
      }
    };

    std::map<double, std::pair<std::vector<Side>, std::vector<Side>>> vertical, horizontal;
    for (const Region& r : regions_) {
      vertical[r.bbox.x1].first.push_back({r.bbox.y0, r.bbox.y1, r.id});
      vertical[r.bbox.x0].second.push_back({r.bbox.y0, r.bbox.y1, r.id});
      horizontal[r.bbox.y1].first.push_back({r.bbox.x0, r.bbox.x1, r.id});
      horizontal[r.bbox.y0].second.push_back({r.bbox.x0, r.bbox.x1, r.id});
    }
    sweep(vertical);
    sweep(horizontal);

    std::vector<std::vector<std::int32_t>> lists(regions_.size());
    for (auto [a, b] : pairs) {
      lists[a].push_back(b);
      lists[b].push_back(a);
    }
    adj_offset_.assign(regions_.size() + 1, 0);
    adj_.clear();
    for (std::size_t i = 0; i < regions_.size(); ++i) {
      std::sort(lists[i].begin(), lists[i].end());
      lists[i].erase(std::unique(lists[i].begin(), lists[i].end()), lists[i].end());
      adj_offset_[i + 1] = adj_offset_[i] + static_cast<std::int32_t>(lists[i].size());
      adj_.insert(adj_.end(), lists[i].begin(), lists[i].end());
    }
  }

  Rect world_;
  double cell_area_ = 1.0;
  double cell_size_ = 1.0;
  int grid_w_ = 0, grid_h_ = 0;
  int coarse_w_ = 0, coarse_h_ = 0;
  std::vector<int> prefix_;
  std::vector<QtNode> qt_;
  std::vector<Region> regions_;
  std::vector<std::int32_t> adj_;
  std::vector<std::int32_t> adj_offset_;
  bool clearances_done_ = false;
  std::int32_t goal_region_ = -1;
};

}  // namespace snakeplan
