#pragma once

#include <cstdint>

namespace snakeplan {

// Deterministic cost model for planner budgets and reported planning time.
// Wall clocks would make reruns diverge, so budgets are accounted in fixed
// virtual seconds: one charge per simulate+collision step, plus a per-region
// charge for each discrete-layer build.
struct PlanCostModel {
  double seconds_per_sim = 2e-5;
  double seconds_per_region = 1e-6;
};

class PlanClock {
 public:
  PlanClock(double budget_seconds, PlanCostModel model = {})
      : budget_(budget_seconds), model_(model) {}

  void charge_sims(std::int64_t n) { elapsed_ += n * model_.seconds_per_sim; }
  void charge_regions(std::int64_t n) { elapsed_ += n * model_.seconds_per_region; }
  bool expired() const { return elapsed_ >= budget_; }
  double elapsed() const { return elapsed_; }

 private:
  double budget_;
  PlanCostModel model_;
  double elapsed_ = 0.0;
};

}  // namespace snakeplan
