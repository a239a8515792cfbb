#pragma once

#include <array>
#include <cassert>
#include <cstring>
#include <vector>

#include "snakeplan/geometry.hpp"

namespace snakeplan {

// How the trailer-angle derivative couples to the chain. The sine-difference
// form divided by the hitch gap is kept selectable alongside the standard
// model where each link pivots about the preceding axle at distance L + H;
// only the latter yields trailers that smoothly follow the head.
enum class TrailerCoupling {
  kSineDifferenceHitch,  // (v/H) * (sin th[i-1] - sin th[0]) * prod cos
  kRelativeAngleHitch,   // (v/H) * sin(th[i-1] - th[i]) * prod cos
  kRelativeAngleAxle,    // (v/(L+H)) * sin(th[i-1] - th[i]) * prod cos
};

// Car pulling N trailers: rectangular head and links of size L x W joined by
// hitches of length H.
struct RobotModel {
  int trailers = 3;  // N
  double body_len = 1.0;
  double body_wid = 0.6;
  double hitch = 0.01;
  double v_max = 2.0;
  double psi_max = 1.5;
  double a_max = 2.0;
  double omega_max = 3.0;
  TrailerCoupling coupling = TrailerCoupling::kRelativeAngleAxle;

  int links() const { return trailers + 1; }
  int state_dim() const { return 5 + trailers; }
};

constexpr int kMaxLinks = 16;

// State (x, y, v, psi, theta_0..theta_N). theta holds links() entries.
struct SnakeState {
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
  double psi = 0.0;
  int links = 1;
  std::array<double, kMaxLinks> theta{};

  Vec2 position() const { return {x, y}; }

  bool operator==(const SnakeState& o) const {
    if (links != o.links || x != o.x || y != o.y || v != o.v || psi != o.psi)
      return false;
    for (int i = 0; i < links; ++i)
      if (theta[i] != o.theta[i]) return false;
    return true;
  }
};

inline SnakeState make_state(const RobotModel& model, double x, double y,
                             double heading = 0.0, double v = 0.0,
                             double psi = 0.0) {
  assert(model.links() <= kMaxLinks);
  SnakeState s;
  s.x = x;
  s.y = y;
  s.v = v;
  s.psi = psi;
  s.links = model.links();
  for (int i = 0; i < s.links; ++i) s.theta[i] = heading;
  return s;
}

// Control (u_a, u_omega): acceleration and steering rate.
struct Control {
  double a = 0.0;
  double omega = 0.0;
  bool operator==(const Control&) const = default;
};

// Replayable trajectory: states.size() == controls.size() + 1, and state i+1
// is exactly simulate(state i, control i, dt).
struct Trajectory {
  std::vector<SnakeState> states;
  std::vector<Control> controls;
  double dt = 0.05;

  std::size_t length() const { return states.size(); }
  bool empty() const { return states.empty(); }

  double distance() const {
    double d = 0.0;
    for (std::size_t i = 1; i < states.size(); ++i)
      d += distance_between(states[i - 1], states[i]);
    return d;
  }

 private:
  static double distance_between(const SnakeState& a, const SnakeState& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
  }
};

}  // namespace snakeplan
