#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "snakeplan/planners.hpp"
#include "snakeplan/sensor.hpp"

namespace snakeplan {

enum class ExecOutcome { kGoal, kTimeout, kAbandoned };

inline std::string to_string(ExecOutcome o) {
  switch (o) {
    case ExecOutcome::kGoal: return "GOAL";
    case ExecOutcome::kTimeout: return "TIMEOUT";
    default: return "ABANDONED";
  }
}

struct TickTrace {
  int newly_occupied = 0;
  bool plan_exhausted = false;
  bool replanned = false;
};

struct ExecConfig {
  double tmax = 300.0;  // motion + planning budget, cost-model seconds
  int max_consecutive_failures = 5;
  double sensor_range = 50.0;
  int sensor_rays = 720;
  double goal_radius = 1.5;
  double dt = 0.05;
  std::uint64_t seed = 0;
  bool collect_trace = false;
  // Called after every planner invocation with the sensed map it planned on.
  std::function<void(const PlanResult&, const OccupancyGrid&)> plan_observer;
};

struct ExecResult {
  Trajectory executed;  // the robot's actual motion from s_init
  ExecOutcome outcome = ExecOutcome::kTimeout;
  int planner_calls = 0;
  double plan_seconds = 0.0;
  double distance = 0.0;
  OccupancyGrid sensed;  // final sensed map
  std::vector<TickTrace> trace;
};

// Closed loop: sense at the current state, update the sensed map, replan when
// a swept cell turned unknown->occupied or the plan ran out, then advance one
// planned state per tick. The planner receives the untraveled suffix of the
// previous plan as a hint. `pos` indexes the last executed state of the
// current plan, so the hint starts exactly at the current state.
inline ExecResult run(const OccupancyGrid& world, const RobotModel& model,
                      const SnakeState& s_init, Vec2 goal, const Planner& planner,
                      const ExecConfig& cfg) {
  ExecResult res;
  res.sensed = OccupancyGrid(world.width(), world.height(), world.cell_size(),
                             CellState::Unknown, world.origin());
  Trajectory& exe = res.executed;
  exe.dt = cfg.dt;
  exe.states.push_back(s_init);

  Trajectory mp;  // current planned trajectory
  std::size_t pos = 0;
  bool replan = true;
  double time = 0.0;

  while (true) {
    const SnakeState s_curr = exe.states.back();
    if (distance(s_curr.position(), goal) <= cfg.goal_radius) {
      res.outcome = ExecOutcome::kGoal;
      break;
    }
    if (time >= cfg.tmax) {
      res.outcome = ExecOutcome::kTimeout;
      break;
    }

    const SensorSweep sweep =
        sense(world, s_curr.x, s_curr.y, cfg.sensor_range, cfg.sensor_rays);
    const int newly = update_sensed(res.sensed, sweep);
    const bool exhausted = mp.states.empty() || pos + 1 >= mp.states.size();
    if (newly > 0 || exhausted) replan = true;
    if (cfg.collect_trace) res.trace.push_back({newly, exhausted, replan});

    int fails = 0;
    bool abandoned = false;
    while (replan) {
      Trajectory prior;
      prior.dt = cfg.dt;
      if (!mp.states.empty() && pos < mp.states.size()) {
        prior.states.assign(mp.states.begin() + pos, mp.states.end());
        prior.controls.assign(mp.controls.begin() + pos, mp.controls.end());
      }
      ++res.planner_calls;
      const std::uint64_t call_seed =
          Rng::stream(cfg.seed, 0x656d63616cULL, res.planner_calls).next_u64();
      const PlanResult pr =
          planner.plan(res.sensed, model, s_curr, goal, prior, call_seed);
      res.plan_seconds += pr.stats.seconds;
      time += pr.stats.seconds;
      if (cfg.plan_observer) cfg.plan_observer(pr, res.sensed);
      if (pr.trajectory.states.size() <= 1) {
        if (++fails >= cfg.max_consecutive_failures) {
          abandoned = true;
          break;
        }
      } else {
        mp = pr.trajectory;
        pos = 0;
        replan = false;
      }
    }
    if (abandoned) {
      res.outcome = ExecOutcome::kAbandoned;
      break;
    }

    exe.states.push_back(mp.states[pos + 1]);
    exe.controls.push_back(mp.controls[pos]);
    ++pos;
    time += cfg.dt;
  }

  res.distance = exe.distance();
  return res;
}

}  // namespace snakeplan
