#pragma once

#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "snakeplan/execution.hpp"
#include "snakeplan/scenario_io.hpp"
#include "snakeplan/stats.hpp"

namespace snakeplan {

struct RunRecord {
  std::string scenario;
  std::string planner;
  std::uint64_t seed = 0;
  int links = 0;
  double sensor_range = 0.0;
  std::string outcome;
  double distance_m = 0.0;
  double plan_time_s = 0.0;
  int planner_calls = 0;
};

struct SummaryRow {
  std::string bucket;
  std::string planner;
  int n = 0;
  double success_rate = 0.0;
  double trimmed_mean_plan_time_s = 0.0;
  double trimmed_mean_distance_m = 0.0;
};

// One benchmark run: a scenario, a planner kind, and the knobs for both.
struct BenchTask {
  ScenarioSpec spec;
  PlannerKind kind = PlannerKind::kPm;
  double sensor_range = 50.0;
  double tmax_em = 300.0;
  double tmax_mp = 2.0;
  double goal_radius = 1.5;
  double alpha = 6.0;
  double cmax = 4.0;
  double beta = 0.9;
  std::string bucket;  // summary bucket, e.g. "waves-L1"
  std::function<void(const PlanResult&, const OccupancyGrid&)> plan_observer;
  std::function<void(const ExecResult&, const Scenario&)> run_observer;
};

inline RunRecord run_one(const BenchTask& task) {
  RunRecord rec;
  rec.planner = to_string(task.kind);
  rec.seed = task.spec.seed;
  rec.links = task.spec.trailers;
  rec.sensor_range = task.sensor_range;
  try {
    const Scenario sc = make_scenario(task.spec);
    rec.scenario = sc.id;

    PlannerOptions opts;
    opts.pm.tmax = task.tmax_mp;
    opts.pm.goal_radius = task.goal_radius;
    opts.pm.alpha = task.alpha;
    opts.pm.cmax = task.cmax;
    opts.pm.beta = task.beta;
    opts.rrt.tmax = task.tmax_mp;
    opts.rrt.goal_radius = task.goal_radius;
    const Planner planner = make_planner(task.kind, opts);

    ExecConfig cfg;
    cfg.tmax = task.tmax_em;
    cfg.sensor_range = task.sensor_range;
    cfg.goal_radius = task.goal_radius;
    cfg.seed = Rng::stream(Rng::mix(std::hash<std::string>{}(sc.id)),
                           Rng::mix(std::hash<std::string>{}(rec.planner)))
                   .next_u64();
    cfg.plan_observer = task.plan_observer;

    const ExecResult res = run(sc.world, sc.robot, sc.start, sc.goal, planner, cfg);
    rec.outcome = to_string(res.outcome);
    rec.distance_m = res.distance;
    rec.plan_time_s = res.plan_seconds;
    rec.planner_calls = res.planner_calls;
    if (task.run_observer) task.run_observer(res, sc);
  } catch (const std::exception&) {
    rec.outcome = "ERROR";
    if (rec.scenario.empty())
      rec.scenario = to_string(task.spec.env) + "-L" + std::to_string(task.spec.level) +
                     "-s" + std::to_string(task.spec.seed);
  }
  return rec;
}

// Runs every task; output order equals task order regardless of the number of
// worker threads (each run is self-contained and seeded by its scenario id).
inline std::vector<RunRecord> run_suite(const std::vector<BenchTask>& tasks,
                                        int jobs = 1) {
  std::vector<RunRecord> records(tasks.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) records[i] = run_one(tasks[i]);
    return records;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < tasks.size();
           i = next.fetch_add(1))
        records[i] = run_one(tasks[i]);
    });
  }
  for (auto& w : workers) w.join();
  return records;
}

inline std::vector<SummaryRow> summarize(const std::vector<BenchTask>& tasks,
                                         const std::vector<RunRecord>& records) {
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < records.size(); ++i)
    groups[{tasks[i].bucket, records[i].planner}].push_back(i);

  std::vector<SummaryRow> rows;
  for (const auto& [key, idx] : groups) {
    SummaryRow row;
    row.bucket = key.first;
    row.planner = key.second;
    row.n = static_cast<int>(idx.size());
    std::vector<double> times, dists;
    int goals = 0;
    for (std::size_t i : idx) {
      times.push_back(records[i].plan_time_s);
      dists.push_back(records[i].distance_m);
      goals += records[i].outcome == "GOAL";
    }
    row.success_rate = static_cast<double>(goals) / row.n;
    row.trimmed_mean_plan_time_s = trimmed_mean(times);
    row.trimmed_mean_distance_m = trimmed_mean(dists);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string records_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "scenario,planner,seed,links,sensor_range,outcome,distance_m,"
         "plan_time_s,planner_calls\n";
  char buf[128];
  for (const RunRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%g,%s,%.6f,%.9f,%d", r.sensor_range,
                  r.outcome.c_str(), r.distance_m, r.plan_time_s, r.planner_calls);
    out << r.scenario << ',' << r.planner << ',' << r.seed << ',' << r.links
        << ',' << buf << '\n';
  }
  return out.str();
}

inline std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "bucket,planner,n,success_rate,trimmed_mean_plan_time_s,"
         "trimmed_mean_distance_m\n";
  char buf[128];
  for (const SummaryRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.9f,%.6f", r.n, r.success_rate,
                  r.trimmed_mean_plan_time_s, r.trimmed_mean_distance_m);
    out << r.bucket << ',' << r.planner << ',' << buf << '\n';
  }
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

// Manifest JSON: defaults + scenario blocks + planner list + optional sweeps.
// Each scenario block is env/level with either explicit seeds or
// seed_base+count; tasks are the cross product with planners and sweeps.
inline std::vector<BenchTask> parse_manifest(const nlohmann::json& j) {
  const nlohmann::json defaults = j.value("defaults", nlohmann::json::object());
  BenchTask base;
  base.spec.world_m = defaults.value("world_m", 80.0);
  base.spec.grid_cells = defaults.value("grid_cells", 128);
  base.spec.trailers = defaults.value("links", 3);
  base.sensor_range = defaults.value("sensor_range", 50.0);
  base.tmax_em = defaults.value("tmax_em", 300.0);
  base.tmax_mp = defaults.value("tmax_mp", 2.0);
  base.goal_radius = defaults.value("goal_radius", 1.5);
  base.alpha = defaults.value("alpha", 6.0);
  base.cmax = defaults.value("cmax", 4.0);
  base.beta = defaults.value("beta", 0.9);

  std::vector<PlannerKind> kinds;
  for (const auto& name : j.at("planners"))
    kinds.push_back(parse_planner_kind(name.get<std::string>()));

  std::vector<int> links_sweep{base.spec.trailers};
  std::vector<double> range_sweep{base.sensor_range};
  if (j.contains("sweeps")) {
    if (j["sweeps"].contains("links"))
      links_sweep = j["sweeps"]["links"].get<std::vector<int>>();
    if (j["sweeps"].contains("sensor_range"))
      range_sweep = j["sweeps"]["sensor_range"].get<std::vector<double>>();
  }

  std::vector<BenchTask> tasks;
  for (const auto& block : j.at("scenarios")) {
    std::vector<std::uint64_t> seeds;
    if (block.contains("seeds"))
      seeds = block["seeds"].get<std::vector<std::uint64_t>>();
    else
      for (std::uint64_t k = 0; k < block.value("count", 1u); ++k)
        seeds.push_back(block.value("seed_base", std::uint64_t{0}) + k);

    for (std::uint64_t seed : seeds) {
      for (PlannerKind kind : kinds) {
        for (int links : links_sweep) {
          for (double range : range_sweep) {
            BenchTask t = base;
            t.spec.env = parse_env_type(block.at("env").get<std::string>());
            t.spec.level = block.value("level", 1);
            t.spec.seed = seed;
            t.spec.trailers = links;
            if (t.spec.env == EnvType::kFile) {
              t.spec.map_path = block.at("map").get<std::string>();
              if (block.contains("sidecar"))
                t.spec.sidecar_path = block["sidecar"].get<std::string>();
            }
            t.kind = kind;
            t.sensor_range = range;
            t.bucket = to_string(t.spec.env) + "-L" + std::to_string(t.spec.level);
            tasks.push_back(std::move(t));
          }
        }
      }
    }
  }
  return tasks;
}

inline std::vector<BenchTask> parse_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path);
  return parse_manifest(nlohmann::json::parse(in));
}

}  // namespace snakeplan
