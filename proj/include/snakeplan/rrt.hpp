#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "snakeplan/collision.hpp"
#include "snakeplan/plan_clock.hpp"
#include "snakeplan/planner.hpp"
#include "snakeplan/rng.hpp"

namespace snakeplan {

struct RrtConfig {
  double goal_bias = 0.05;
  int control_samples = 5;  // candidate controls per extension
  int extend_steps = 20;    // integration steps per candidate
  double goal_radius = 1.5;
  double tmax = 2.0;
  double dt = 0.05;
  std::uint64_t seed = 0;
  bool use_hints = true;
  PlanCostModel cost_model;
};

// Kinodynamic RRT: sample a position (goal-biased), pick the nearest tree
// node by (x, y) distance, try a handful of random bounded controls for a
// fixed number of steps each, and keep the collision-free rollout ending
// nearest the sample. Falls back to the node closest to the goal.
inline PlanResult rrt_plan(const OccupancyGrid& sensed, const RobotModel& model,
                           const SnakeState& s_curr, Vec2 goal,
                           const Trajectory& prior, const RrtConfig& cfg) {
  PlanClock clock(cfg.tmax, cfg.cost_model);
  Rng rng = Rng::stream(cfg.seed, 0x727274ULL);
  std::int64_t sims = 0;

  MotionTree tree;
  const std::int32_t root = tree.insert(TreeNode{s_curr, Control{}, -1, -1});

  const auto result = [&](std::int32_t node, bool reached) {
    PlanResult out{tree.trajectory_to(node, cfg.dt), reached,
                   {sims, static_cast<int>(tree.size()), 0, clock.elapsed()}};
    return out;
  };

  if (distance(s_curr.position(), goal) <= cfg.goal_radius)
    return result(root, true);

  std::int32_t best = root;
  double best_goal_dist = distance(s_curr.position(), goal);
  const auto consider_best = [&](std::int32_t id) {
    const double d = distance(tree[id].s.position(), goal);
    if (d < best_goal_dist) {
      best_goal_dist = d;
      best = id;
    }
  };

  // Prior-solution chain, same replay rule as the guided planner.
  if (cfg.use_hints && !prior.states.empty() && prior.states.front() == s_curr) {
    SnakeState s = s_curr;
    std::int32_t parent = root;
    for (const Control& u : prior.controls) {
      s = simulate(model, s, u, cfg.dt);
      clock.charge_sims(1);
      ++sims;
      if (collision(sensed, model, s)) break;
      const std::int32_t id = tree.insert(TreeNode{s, u, parent, -1});
      if (distance(s.position(), goal) <= cfg.goal_radius) return result(id, true);
      parent = id;
    }
  }

  const Rect world = sensed.world_rect();
  while (!clock.expired()) {
    const Vec2 sample = rng.next_double() < cfg.goal_bias
                            ? goal
                            : Vec2{rng.uniform(world.x0, world.x1),
                                   rng.uniform(world.y0, world.y1)};

    std::int32_t nearest = root;
    double nearest_d = std::numeric_limits<double>::infinity();
    for (std::int32_t id = 0; id < static_cast<std::int32_t>(tree.size()); ++id) {
      const double d = (tree[id].s.position() - sample).norm_sq();
      if (d < nearest_d) {
        nearest_d = d;
        nearest = id;
      }
    }

    std::vector<SnakeState> best_chain;
    Control best_u;
    double best_end = std::numeric_limits<double>::infinity();
    for (int k = 0; k < cfg.control_samples; ++k) {
      const Control u{rng.uniform(-model.a_max, model.a_max),
                      rng.uniform(-model.omega_max, model.omega_max)};
      std::vector<SnakeState> chain;
      SnakeState s = tree[nearest].s;
      for (int step = 0; step < cfg.extend_steps; ++step) {
        s = simulate(model, s, u, cfg.dt);
        clock.charge_sims(1);
        ++sims;
        if (collision(sensed, model, s)) break;
        chain.push_back(s);
      }
      if (chain.empty()) continue;
      const double end_d = (chain.back().position() - sample).norm_sq();
      if (end_d < best_end) {
        best_end = end_d;
        best_chain = std::move(chain);
        best_u = u;
      }
    }

    std::int32_t parent = nearest;
    for (const SnakeState& s : best_chain) {
      const std::int32_t id = tree.insert(TreeNode{s, best_u, parent, -1});
      if (distance(s.position(), goal) <= cfg.goal_radius) return result(id, true);
      consider_best(id);
      parent = id;
    }
  }
  return result(best, false);
}

}  // namespace snakeplan
