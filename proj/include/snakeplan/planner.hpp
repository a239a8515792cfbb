#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "snakeplan/collision.hpp"
#include "snakeplan/dynamics.hpp"
#include "snakeplan/plan_clock.hpp"
#include "snakeplan/rng.hpp"
#include "snakeplan/subdivision.hpp"

namespace snakeplan {

struct SteerGains {
  double kp = 2.5;
  double kd = 0.5;
  double kv = 1.0;
};

// PD steering toward a target position: heading error drives the steering
// rate and the reference speed shrinks with the error, so sharp corrections
// happen slowly. Stateless and deterministic; the derivative term combines
// the bearing drift from the robot's own motion with its rotation rate.
inline Control steer(const RobotModel& model, const SnakeState& s, Vec2 target,
                     const SteerGains& g = {}) {
  const Vec2 d = target - s.position();
  const double d2 = d.norm_sq();
  const double theta_dot = s.v * std::sin(s.psi) / model.body_len;
  double e = 0.0;
  double e_dot = -theta_dot;
  if (d2 > 1e-12) {
    e = wrap_angle(std::atan2(d.y, d.x) - s.theta[0]);
    const double xdot = s.v * std::cos(s.theta[0]) * std::cos(s.psi);
    const double ydot = s.v * std::sin(s.theta[0]) * std::cos(s.psi);
    e_dot += (d.y * xdot - d.x * ydot) / d2;
  }
  Control u;
  u.omega = std::clamp(g.kp * e + g.kd * e_dot, -model.omega_max, model.omega_max);
  const double v_ref = model.v_max * (1.0 - 0.8 * std::abs(e) / M_PI);
  u.a = std::clamp(g.kv * (v_ref - s.v), -model.a_max, model.a_max);
  return u;
}

struct PlannerConfig {
  double beta = 0.9;
  double dt = 0.05;
  int outer_iterations = 32;   // group rounds per region selection
  int inner_steps = 40;        // extension steps toward one target
  double far_threshold = 0.0;  // meters; <= 0 means 2x the stage bbox diagonal
  double goal_radius = 1.5;
  double tmax = 2.0;           // planning budget in cost-model seconds
  std::uint64_t seed = 0;
  bool use_hints = true;
  bool use_clearance = true;   // false forces alpha = 0 (pure-distance search)
  double alpha = 6.0;
  double cmax = 4.0;
  int coarse_dim = 0;          // 0 = pick from sensed-map size
  PlanCostModel cost_model;
  SteerGains gains;
};

struct PlanStats {
  std::int64_t sims = 0;
  int tree_size = 0;
  int region_selections = 0;
  double seconds = 0.0;
};

struct PlanResult {
  Trajectory trajectory;
  bool reached_goal = false;
  PlanStats stats;
};

// Region weights never divide by an exactly-zero path cost (the goal region);
// the floor keeps the selection penalty able to break a zero-cost monopoly.
constexpr double kRegionCostFloor = 1e-12;

// argmax of beta^nsel / cost over (cost, nsel) rows; ties go to the lowest
// index. Evaluated in log space so deep penalty powers cannot underflow.
inline std::size_t pick_best_region(std::span<const std::pair<double, int>> table,
                                    double beta) {
  assert(!table.empty());
  std::size_t best = 0;
  double best_w = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double w = table[i].second * std::log(beta) -
                     std::log(std::max(table[i].first, kRegionCostFloor));
    if (w > best_w) {
      best_w = w;
      best = i;
    }
  }
  return best;
}

// argmax of 2^j * beta^nsel over groups j = 0..n-1; ties go to the highest j.
inline std::size_t pick_best_group(std::span<const int> nsel, double beta) {
  assert(!nsel.empty());
  std::size_t best = 0;
  double best_w = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < nsel.size(); ++j) {
    const double w = j * std::log(2.0) + nsel[j] * std::log(beta);
    if (w >= best_w) {
      best_w = w;
      best = j;
    }
  }
  return best;
}

struct TreeNode {
  SnakeState s;
  Control u;                 // control that produced s from the parent
  std::int32_t parent = -1;  // -1 at the root
  std::int32_t region = -1;
};

class MotionTree {
 public:
  std::int32_t insert(TreeNode node) {
    nodes_.push_back(std::move(node));
    return static_cast<std::int32_t>(nodes_.size()) - 1;
  }
  const TreeNode& operator[](std::int32_t id) const { return nodes_[id]; }
  TreeNode& at(std::int32_t id) { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

  // State/control sequence from the root to `id`. Replays exactly because
  // every node state came out of simulate applied to its parent's state.
  Trajectory trajectory_to(std::int32_t id, double dt) const {
    std::vector<std::int32_t> chain;
    for (std::int32_t cur = id; cur != -1; cur = nodes_[cur].parent)
      chain.push_back(cur);
    std::reverse(chain.begin(), chain.end());
    Trajectory traj;
    traj.dt = dt;
    traj.states.reserve(chain.size());
    for (std::size_t k = 0; k < chain.size(); ++k) {
      traj.states.push_back(nodes_[chain[k]].s);
      if (k > 0) traj.controls.push_back(nodes_[chain[k]].u);
    }
    return traj;
  }

 private:
  std::vector<TreeNode> nodes_;
};

struct Group {
  std::vector<std::int32_t> nodes;
  int nsel = 0;
};

// Two-layer guided planner: a clearance-weighted region graph over an
// adaptive subdivision chooses directions, and a motion tree is grown along
// the selected region's path to the goal, group by group. One instance serves
// a single planning call.
class GuidedPlanner {
 public:
  GuidedPlanner(const OccupancyGrid& sensed, const RobotModel& model,
                PlannerConfig cfg)
      : sensed_(sensed), model_(model), cfg_(std::move(cfg)),
        clock_(cfg_.tmax, cfg_.cost_model),
        rng_(Rng::stream(cfg_.seed, 0x706c616eULL)) {}

  PlanResult plan(const SnakeState& s_curr, Vec2 goal, const Trajectory& prior) {
    goal_ = goal;
    if (distance(s_curr.position(), goal) <= cfg_.goal_radius) {
      Trajectory t;
      t.dt = cfg_.dt;
      t.states.push_back(s_curr);
      return {std::move(t), true, make_stats()};
    }
    if (!build_discrete(goal)) return root_only_result(s_curr, false);
    init_tree(s_curr, prior);
    if (goal_node_ >= 0) return finish(true);

    while (!clock_.expired()) {
      const std::int32_t r = select_region();
      if (r < 0) break;  // no reached region has a finite path cost
      ++selections_;
      const std::vector<std::int32_t> path = sub_.path_of(r);
      assert(!path.empty());
      std::vector<Group> groups(path.size());
      const auto& seed_pool = sub_.region(r).node_ids;
      groups[0].nodes.push_back(
          seed_pool[rng_.uniform_int(seed_pool.size())]);
      int i = 0;
      for (int round = 0;
           round < cfg_.outer_iterations &&
           i < static_cast<int>(path.size()) && !clock_.expired();
           ++round) {
        int j = select_group(groups, i);
        const Vec2 target = sample_target(sub_.region(path[j]).bbox);
        const std::int32_t eta = select_node(groups[j].nodes, target);
        extend(eta, target, path, j, groups, i);
        if (goal_node_ >= 0) return finish(true);
      }
    }
    return finish(false);
  }

  // --- stepwise pieces, exposed as the planning operations ---

  // Subdivision + clearances + goal paths; false when the goal region is
  // occupied (planning infeasible).
  bool build_discrete(Vec2 goal) {
    goal_ = goal;
    const int coarse = cfg_.coarse_dim > 0 ? cfg_.coarse_dim
                                           : default_coarse_dim(sensed_);
    sub_ = Subdivision::build(sensed_, coarse, coarse);
    clock_.charge_regions(static_cast<std::int64_t>(sub_.region_count()));
    sub_.compute_clearances();
    const double alpha = cfg_.use_clearance ? cfg_.alpha : 0.0;
    return sub_.compute_paths_to_goal(goal, alpha, cfg_.cmax);
  }

  // Roots the tree at s_curr, then replays the prior solution's controls,
  // appending every state that is still collision-free on the current sensed
  // map; stops at the first collision. A prior that does not start at s_curr
  // is discarded.
  void init_tree(const SnakeState& s_curr, const Trajectory& prior) {
    const std::int32_t root =
        insert_node(TreeNode{s_curr, Control{}, -1, sub_.locate(s_curr.position())});
    eta_best_ = root;
    if (!cfg_.use_hints || prior.states.empty() || !(prior.states.front() == s_curr))
      return;
    SnakeState s = s_curr;
    std::int32_t parent = root;
    for (const Control& u : prior.controls) {
      s = simulate(model_, s, u, cfg_.dt);
      clock_.charge_sims(1);
      ++sims_;
      if (collision(sensed_, model_, s)) break;
      const std::int32_t id = insert_node(TreeNode{s, u, parent, sub_.locate(s.position())});
      if (distance(s.position(), goal_) <= cfg_.goal_radius) {
        goal_node_ = id;
        return;
      }
      parent = id;
    }
  }

  // Max-weight region among those reached by the tree with a finite path
  // cost; increments the winner's selection count. -1 when none qualifies.
  std::int32_t select_region() {
    std::int32_t best = -1;
    double best_w = -std::numeric_limits<double>::infinity();
    for (std::int32_t id : reached_regions_) {
      const Region& r = sub_.region(id);
      if (r.path_cost == kInfCost) continue;
      const double w = r.nsel * std::log(cfg_.beta) -
                       std::log(std::max(r.path_cost, kRegionCostFloor));
      if (w > best_w || (w == best_w && id < best)) {
        best_w = w;
        best = id;
      }
    }
    if (best >= 0) ++sub_.region(best).nsel;
    return best;
  }

  // Max-weight nonempty group among indices 0..i; increments its nsel.
  int select_group(std::vector<Group>& groups, int i) const {
    int best = 0;
    double best_w = -std::numeric_limits<double>::infinity();
    for (int j = 0; j <= i; ++j) {
      if (groups[j].nodes.empty()) continue;
      const double w = j * std::log(2.0) + groups[j].nsel * std::log(cfg_.beta);
      if (w >= best_w) {  // ties prefer the higher group
        best_w = w;
        best = j;
      }
    }
    ++groups[best].nsel;
    return best;
  }

  // Uniform position inside a region's bbox (center when degenerate).
  Vec2 sample_target(const Rect& bbox) {
    if (bbox.area() <= 0.0) return bbox.center();
    return {rng_.uniform(bbox.x0, bbox.x1), rng_.uniform(bbox.y0, bbox.y1)};
  }

  // Node closest to the target by (x, y) distance; ties -> lower node id.
  std::int32_t select_node(const std::vector<std::int32_t>& ids, Vec2 target) const {
    assert(!ids.empty());
    std::int32_t best = ids.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::int32_t id : ids) {
      const double d = (tree_[id].s.position() - target).norm_sq();
      if (d < best_d || (d == best_d && id < best)) {
        best_d = d;
        best = id;
      }
    }
    return best;
  }

  enum class ExtendStatus { kGoal, kBlocked, kFar, kStepLimit, kBudget };

  // Inner expansion loop: steer/simulate toward the target until collision,
  // wandering too far from the stage region, the step cap, or the budget.
  // Advances j when the stage region is reached and keeps eta_best current.
  ExtendStatus extend(std::int32_t eta, Vec2 target,
                      const std::vector<std::int32_t>& path, int& j,
                      std::vector<Group>& groups, int& i) {
    for (int step = 0; step < cfg_.inner_steps; ++step) {
      if (clock_.expired()) return ExtendStatus::kBudget;
      const SnakeState& s = tree_[eta].s;
      const Control u = steer(model_, s, target, cfg_.gains);
      const SnakeState s_new = simulate(model_, s, u, cfg_.dt);
      clock_.charge_sims(1);
      ++sims_;
      if (collision(sensed_, model_, s_new)) return ExtendStatus::kBlocked;
      const std::int32_t id = insert_node(TreeNode{s_new, u, eta, -1});
      if (distance(s_new.position(), goal_) <= cfg_.goal_radius) {
        goal_node_ = id;
        return ExtendStatus::kGoal;
      }
      const std::int32_t rnew = sub_.locate(s_new.position());
      set_region(id, rnew);
      const Rect& stage = sub_.region(path[j]).bbox;
      const double far_limit =
          cfg_.far_threshold > 0.0 ? cfg_.far_threshold : 2.0 * stage.diagonal();
      if (stage.distance_to(s_new.position()) > far_limit)
        return ExtendStatus::kFar;
      if (stage.contains(s_new.position()) && j + 1 < static_cast<int>(path.size()))
        ++j;
      groups[j].nodes.push_back(id);
      i = std::max(i, j);
      update_best(id);
      eta = id;
    }
    return ExtendStatus::kStepLimit;
  }

  const MotionTree& tree() const { return tree_; }
  Subdivision& subdivision() { return sub_; }
  std::int32_t best_node() const { return eta_best_; }
  Rng& rng() { return rng_; }

 private:
  std::int32_t insert_node(TreeNode node) {
    const std::int32_t region = node.region;
    const std::int32_t id = tree_.insert(std::move(node));
    if (region >= 0) register_in_region(id, region);
    return id;
  }

  void set_region(std::int32_t id, std::int32_t region) {
    tree_.at(id).region = region;
    register_in_region(id, region);
  }

  void register_in_region(std::int32_t id, std::int32_t region) {
    Region& r = sub_.region(region);
    if (r.node_ids.empty()) reached_regions_.push_back(region);
    r.node_ids.push_back(id);
  }

  // eta_best: lower region path cost wins; ties resolved by Euclidean
  // distance to the goal.
  void update_best(std::int32_t id) {
    const double c_new = region_cost(id);
    const double c_best = region_cost(eta_best_);
    if (c_new < c_best) {
      eta_best_ = id;
    } else if (c_new == c_best &&
               distance(tree_[id].s.position(), goal_) <
                   distance(tree_[eta_best_].s.position(), goal_)) {
      eta_best_ = id;
    }
  }

  double region_cost(std::int32_t node_id) const {
    const std::int32_t r = tree_[node_id].region;
    return r >= 0 ? sub_.region(r).path_cost : kInfCost;
  }

  PlanStats make_stats() const {
    return {sims_, static_cast<int>(tree_.size()), selections_, clock_.elapsed()};
  }

  PlanResult root_only_result(const SnakeState& s, bool reached) {
    Trajectory t;
    t.dt = cfg_.dt;
    t.states.push_back(s);
    return {std::move(t), reached, make_stats()};
  }

  PlanResult finish(bool reached) {
    const std::int32_t node = reached ? goal_node_ : eta_best_;
    return {tree_.trajectory_to(node, cfg_.dt), reached, make_stats()};
  }

  const OccupancyGrid& sensed_;
  const RobotModel& model_;
  PlannerConfig cfg_;
  PlanClock clock_;
  Rng rng_;
  Subdivision sub_;
  MotionTree tree_;
  std::vector<std::int32_t> reached_regions_;
  Vec2 goal_;
  std::int32_t eta_best_ = 0;
  std::int32_t goal_node_ = -1;
  std::int64_t sims_ = 0;
  int selections_ = 0;
};

}  // namespace snakeplan
