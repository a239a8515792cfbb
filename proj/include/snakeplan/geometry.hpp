#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace snakeplan {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double k) const { return {x * k, y * k}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  double norm_sq() const { return x * x + y * y; }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  a = a - 2.0 * M_PI * std::floor((a + M_PI) / (2.0 * M_PI));
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

// Axis-aligned rectangle. Containment is half-open per axis: [x0, x1) x [y0, y1),
// so points on shared edges resolve to exactly one rectangle of a tiling.
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  double diagonal() const { return std::hypot(width(), height()); }
  Vec2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }

  bool contains(Vec2 p) const {
    return p.x >= x0 && p.x < x1 && p.y >= y0 && p.y < y1;
  }

  // Euclidean distance from p to the rectangle (0 when inside).
  double distance_to(Vec2 p) const {
    const double dx = std::max({x0 - p.x, 0.0, p.x - x1});
    const double dy = std::max({y0 - p.y, 0.0, p.y - y1});
    return std::hypot(dx, dy);
  }

  bool overlaps_positively(const Rect& o) const {
    return std::max(x0, o.x0) < std::min(x1, o.x1) &&
           std::max(y0, o.y0) < std::min(y1, o.y1);
  }
};

// Oriented rectangle given by center, heading and half extents.
struct OrientedRect {
  Vec2 center;
  double heading = 0.0;
  double half_len = 0.0;
  double half_wid = 0.0;

  Vec2 axis_long() const { return {std::cos(heading), std::sin(heading)}; }
  Vec2 axis_short() const { return {-std::sin(heading), std::cos(heading)}; }

  std::array<Vec2, 4> corners() const {
    const Vec2 u = axis_long() * half_len;
    const Vec2 v = axis_short() * half_wid;
    return {center + u + v, center + u - v, center - u - v, center - u + v};
  }
};

// Separating-axis overlap test for two oriented rectangles.
inline bool intersects(const OrientedRect& a, const OrientedRect& b) {
  const Vec2 d = b.center - a.center;
  const Vec2 au = a.axis_long(), av = a.axis_short();
  const Vec2 bu = b.axis_long(), bv = b.axis_short();

  const double c00 = std::abs(au.dot(bu)), c01 = std::abs(au.dot(bv));
  const double c10 = std::abs(av.dot(bu)), c11 = std::abs(av.dot(bv));

  if (std::abs(au.dot(d)) > a.half_len + b.half_len * c00 + b.half_wid * c01)
    return false;
  if (std::abs(av.dot(d)) > a.half_wid + b.half_len * c10 + b.half_wid * c11)
    return false;
  if (std::abs(bu.dot(d)) > b.half_len + a.half_len * c00 + a.half_wid * c10)
    return false;
  if (std::abs(bv.dot(d)) > b.half_wid + a.half_len * c01 + a.half_wid * c11)
    return false;
  return true;
}

}  // namespace snakeplan
