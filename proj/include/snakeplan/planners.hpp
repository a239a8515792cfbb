#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "snakeplan/planner.hpp"
#include "snakeplan/rrt.hpp"

namespace snakeplan {

enum class PlannerKind { kPm, kPmNoHints, kPmNoClearance, kRrt, kRrtNoHints };

inline std::string to_string(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::kPm: return "pm";
    case PlannerKind::kPmNoHints: return "pm-no-hints";
    case PlannerKind::kPmNoClearance: return "pm-no-clearance";
    case PlannerKind::kRrt: return "rrt";
    case PlannerKind::kRrtNoHints: return "rrt-no-hints";
  }
  return "?";
}

inline PlannerKind parse_planner_kind(const std::string& name) {
  if (name == "pm") return PlannerKind::kPm;
  if (name == "pm-no-hints") return PlannerKind::kPmNoHints;
  if (name == "pm-no-clearance") return PlannerKind::kPmNoClearance;
  if (name == "rrt") return PlannerKind::kRrt;
  if (name == "rrt-no-hints") return PlannerKind::kRrtNoHints;
  throw std::invalid_argument("unknown planner kind: " + name);
}

struct PlannerOptions {
  PlannerConfig pm;
  RrtConfig rrt;
};

// Uniform planning interface so the execution module is planner-agnostic.
// `seed` is the per-call RNG stream; retries get fresh streams.
struct Planner {
  std::string name;
  std::function<PlanResult(const OccupancyGrid& sensed, const RobotModel& model,
                           const SnakeState& s_curr, Vec2 goal,
                           const Trajectory& prior, std::uint64_t seed)>
      plan;
};

inline Planner make_planner(PlannerKind kind, PlannerOptions opts = {}) {
  switch (kind) {
    case PlannerKind::kPmNoHints: opts.pm.use_hints = false; break;
    case PlannerKind::kPmNoClearance: opts.pm.use_clearance = false; break;
    case PlannerKind::kRrtNoHints: opts.rrt.use_hints = false; break;
    default: break;
  }
  Planner p;
  p.name = to_string(kind);
  if (kind == PlannerKind::kRrt || kind == PlannerKind::kRrtNoHints) {
    p.plan = [opts](const OccupancyGrid& sensed, const RobotModel& model,
                    const SnakeState& s, Vec2 goal, const Trajectory& prior,
                    std::uint64_t seed) {
      RrtConfig cfg = opts.rrt;
      cfg.seed = seed;
      return rrt_plan(sensed, model, s, goal, prior, cfg);
    };
  } else {
    p.plan = [opts](const OccupancyGrid& sensed, const RobotModel& model,
                    const SnakeState& s, Vec2 goal, const Trajectory& prior,
                    std::uint64_t seed) {
      PlannerConfig cfg = opts.pm;
      cfg.seed = seed;
      GuidedPlanner planner(sensed, model, cfg);
      return planner.plan(s, goal, prior);
    };
  }
  return p;
}

}  // namespace snakeplan
