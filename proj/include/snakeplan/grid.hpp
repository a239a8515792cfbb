#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "snakeplan/geometry.hpp"

namespace snakeplan {

enum class CellState : std::uint8_t { Free = 0, Occupied = 1, Unknown = 2 };

struct Cell {
  int x = 0;
  int y = 0;
  bool operator==(const Cell&) const = default;
};

// Tri-state occupancy raster. Serves both as the ground-truth world and as the
// robot's sensed map. Row y = 0 is the bottom of the world; the text format
// stores the top row first.
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  OccupancyGrid(int width, int height, double cell_size,
                CellState fill = CellState::Unknown, Vec2 origin = {0.0, 0.0})
      : width_(width), height_(height), cell_size_(cell_size), origin_(origin),
        cells_(static_cast<std::size_t>(width) * height, fill) {
    if (width < 1 || height < 1 || cell_size <= 0.0)
      throw std::invalid_argument("OccupancyGrid: bad dimensions");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }
  Vec2 origin() const { return origin_; }
  std::size_t size() const { return cells_.size(); }

  Rect world_rect() const {
    return {origin_.x, origin_.y, origin_.x + width_ * cell_size_,
            origin_.y + height_ * cell_size_};
  }

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  bool in_bounds(Vec2 p) const { return world_rect().contains(p); }

  std::int32_t index(Cell c) const { return c.y * width_ + c.x; }
  Cell cell_at(std::int32_t idx) const { return {idx % width_, idx / width_}; }

  CellState at(Cell c) const { return cells_[index(c)]; }
  CellState at(std::int32_t idx) const { return cells_[idx]; }
  void set(Cell c, CellState s) { cells_[index(c)] = s; }
  void set(std::int32_t idx, CellState s) { cells_[idx] = s; }

  Cell cell_of(Vec2 p) const {
    return {static_cast<int>(std::floor((p.x - origin_.x) / cell_size_)),
            static_cast<int>(std::floor((p.y - origin_.y) / cell_size_))};
  }

  Vec2 center_of(Cell c) const {
    return {origin_.x + (c.x + 0.5) * cell_size_,
            origin_.y + (c.y + 0.5) * cell_size_};
  }

  Rect cell_rect(Cell c) const {
    return {origin_.x + c.x * cell_size_, origin_.y + c.y * cell_size_,
            origin_.x + (c.x + 1) * cell_size_, origin_.y + (c.y + 1) * cell_size_};
  }

  std::size_t count(CellState s) const {
    std::size_t n = 0;
    for (CellState c : cells_) n += (c == s);
    return n;
  }

  bool operator==(const OccupancyGrid& o) const {
    return width_ == o.width_ && height_ == o.height_ &&
           cell_size_ == o.cell_size_ && origin_.x == o.origin_.x &&
           origin_.y == o.origin_.y && cells_ == o.cells_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  double cell_size_ = 1.0;
  Vec2 origin_;
  std::vector<CellState> cells_;
};

inline char to_char(CellState s) {
  switch (s) {
    case CellState::Free: return '.';
    case CellState::Occupied: return '#';
    default: return '?';
  }
}

// Text map format: first line "width height cell_size", then `height` rows of
// `width` characters ('.' free, '#' occupied, '?' unknown), top row first.
inline OccupancyGrid load_map(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("map: empty file");
  std::istringstream hs(header);
  int w = 0, h = 0;
  double cs = 0.0;
  if (!(hs >> w >> h >> cs) || w < 1 || h < 1 || cs <= 0.0)
    throw std::runtime_error("map: bad header '" + header + "'");

  OccupancyGrid grid(w, h, cs, CellState::Free);
  for (int row = 0; row < h; ++row) {
    std::string line;
    if (!std::getline(in, line))
      throw std::runtime_error("map: missing row " + std::to_string(row));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int>(line.size()) != w)
      throw std::runtime_error("map: ragged row " + std::to_string(row) +
                               " (expected " + std::to_string(w) + " cells, got " +
                               std::to_string(line.size()) + ")");
    const int y = h - 1 - row;  // file stores top row first
    for (int x = 0; x < w; ++x) {
      CellState s;
      switch (line[x]) {
        case '.': s = CellState::Free; break;
        case '#': s = CellState::Occupied; break;
        case '?': s = CellState::Unknown; break;
        default:
          throw std::runtime_error("map: bad character '" +
                                   std::string(1, line[x]) + "' in row " +
                                   std::to_string(row));
      }
      grid.set({x, y}, s);
    }
  }
  return grid;
}

inline OccupancyGrid load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("map: cannot open " + path);
  return load_map(in);
}

inline void save_map(const OccupancyGrid& grid, std::ostream& out) {
  out << grid.width() << ' ' << grid.height() << ' ' << grid.cell_size() << '\n';
  for (int row = 0; row < grid.height(); ++row) {
    const int y = grid.height() - 1 - row;
    std::string line(grid.width(), '?');
    for (int x = 0; x < grid.width(); ++x) line[x] = to_char(grid.at({x, y}));
    out << line << '\n';
  }
}

inline void save_map(const OccupancyGrid& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("map: cannot write " + path);
  save_map(grid, out);
}

}  // namespace snakeplan
