#pragma once

#include <algorithm>
#include <cmath>

#include "snakeplan/robot.hpp"

namespace snakeplan {

// Time derivative of the full state under control u:
//   x'  = v cos(theta_0) cos(psi)      y'     = v sin(theta_0) cos(psi)
//   v'  = u_a                          psi'   = u_omega
//   theta_0' = v sin(psi) / L
//   theta_i' = coupling term, i = 1..N (see TrailerCoupling)
struct StateDeriv {
  double x = 0.0, y = 0.0, v = 0.0, psi = 0.0;
  std::array<double, kMaxLinks> theta{};
};

inline StateDeriv derivative(const RobotModel& model, const SnakeState& s,
                             const Control& u) {
  StateDeriv d;
  const double c0 = std::cos(s.theta[0]);
  const double s0 = std::sin(s.theta[0]);
  const double cpsi = std::cos(s.psi);
  d.x = s.v * c0 * cpsi;
  d.y = s.v * s0 * cpsi;
  d.v = u.a;
  d.psi = u.omega;
  d.theta[0] = s.v * std::sin(s.psi) / model.body_len;

  const double divisor = model.coupling == TrailerCoupling::kRelativeAngleAxle
                             ? model.body_len + model.hitch
                             : model.hitch;
  double prod = 1.0;
  for (int i = 1; i < s.links; ++i) {
    const double sine =
        model.coupling == TrailerCoupling::kSineDifferenceHitch
            ? std::sin(s.theta[i - 1]) - std::sin(s.theta[0])
            : std::sin(s.theta[i - 1] - s.theta[i]);
    d.theta[i] = s.v / divisor * sine * prod;
    prod *= std::cos(s.theta[i - 1] - s.theta[i]);
  }
  return d;
}

namespace detail {

inline SnakeState add_scaled(const SnakeState& s, const StateDeriv& d, double h) {
  SnakeState r = s;
  r.x += h * d.x;
  r.y += h * d.y;
  r.v += h * d.v;
  r.psi += h * d.psi;
  for (int i = 0; i < s.links; ++i) r.theta[i] += h * d.theta[i];
  return r;
}

}  // namespace detail

// Clamps v / psi to their bounds and normalizes all angles to (-pi, pi].
inline void clamp_and_normalize(const RobotModel& model, SnakeState& s) {
  s.v = std::clamp(s.v, -model.v_max, model.v_max);
  s.psi = std::clamp(s.psi, -model.psi_max, model.psi_max);
  for (int i = 0; i < s.links; ++i) s.theta[i] = wrap_angle(s.theta[i]);
}

// One classical RK4 step over dt, followed by clamping and normalization.
// Deterministic: identical inputs give bit-identical outputs.
inline SnakeState simulate(const RobotModel& model, const SnakeState& s,
                           const Control& u, double dt) {
  const StateDeriv k1 = derivative(model, s, u);
  const StateDeriv k2 = derivative(model, detail::add_scaled(s, k1, dt / 2), u);
  const StateDeriv k3 = derivative(model, detail::add_scaled(s, k2, dt / 2), u);
  const StateDeriv k4 = derivative(model, detail::add_scaled(s, k3, dt), u);

  SnakeState r = s;
  const double w = dt / 6.0;
  r.x += w * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
  r.y += w * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
  r.v += w * (k1.v + 2 * k2.v + 2 * k3.v + k4.v);
  r.psi += w * (k1.psi + 2 * k2.psi + 2 * k3.psi + k4.psi);
  for (int i = 0; i < s.links; ++i)
    r.theta[i] += w * (k1.theta[i] + 2 * k2.theta[i] + 2 * k3.theta[i] + k4.theta[i]);

  clamp_and_normalize(model, r);
  return r;
}

// Footprint: head rectangle centered at (x, y) with heading theta_0; each link
// hangs off the previous one, its front edge midpoint a hitch length behind
// the parent's rear edge midpoint, oriented along its own theta_i.
inline int footprint(const RobotModel& model, const SnakeState& s,
                     std::array<OrientedRect, kMaxLinks>& out) {
  const double hl = model.body_len / 2.0;
  const double hw = model.body_wid / 2.0;
  out[0] = OrientedRect{{s.x, s.y}, s.theta[0], hl, hw};
  for (int i = 1; i < s.links; ++i) {
    const Vec2 prev_dir = out[i - 1].axis_long();
    const Vec2 hitch_pt =
        out[i - 1].center - prev_dir * (hl + model.hitch);
    const Vec2 dir{std::cos(s.theta[i]), std::sin(s.theta[i])};
    out[i] = OrientedRect{hitch_pt - dir * hl, s.theta[i], hl, hw};
  }
  return s.links;
}

// True iff any two links with index distance >= 2 overlap.
inline bool self_collision(const RobotModel& model, const SnakeState& s) {
  if (s.links < 3) return false;
  std::array<OrientedRect, kMaxLinks> rects;
  const int n = footprint(model, s, rects);
  for (int i = 0; i + 2 < n; ++i)
    for (int j = i + 2; j < n; ++j)
      if (intersects(rects[i], rects[j])) return true;
  return false;
}

// Re-simulates a trajectory from its first state; true iff every stored state
// is reproduced bit-exactly.
inline bool replays_exactly(const RobotModel& model, const Trajectory& traj) {
  if (traj.states.empty()) return false;
  if (traj.controls.size() + 1 != traj.states.size()) return false;
  SnakeState s = traj.states.front();
  for (std::size_t i = 0; i < traj.controls.size(); ++i) {
    s = simulate(model, s, traj.controls[i], traj.dt);
    if (!(s == traj.states[i + 1])) return false;
  }
  return true;
}

}  // namespace snakeplan
