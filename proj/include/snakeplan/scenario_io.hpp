#pragma once

#include <fstream>
#include <string>

#include "json.hpp"
#include "snakeplan/environments.hpp"

namespace snakeplan {

// Sidecar JSON: env_type, level, seed, start [x, y, theta_0..theta_N],
// goal [x, y], robot {N, ...}.
inline nlohmann::json scenario_sidecar(const Scenario& sc, const ScenarioSpec& spec) {
  nlohmann::json j;
  j["env_type"] = to_string(spec.env);
  j["level"] = spec.level;
  j["seed"] = spec.seed;
  std::vector<double> start{sc.start.x, sc.start.y};
  for (int i = 0; i < sc.start.links; ++i) start.push_back(sc.start.theta[i]);
  j["start"] = start;
  j["goal"] = {sc.goal.x, sc.goal.y};
  j["robot"] = {{"N", sc.robot.trailers},
                {"body_len", sc.robot.body_len},
                {"body_wid", sc.robot.body_wid},
                {"hitch", sc.robot.hitch},
                {"v_max", sc.robot.v_max},
                {"psi_max", sc.robot.psi_max},
                {"a_max", sc.robot.a_max},
                {"omega_max", sc.robot.omega_max}};
  return j;
}

inline void save_scenario(const Scenario& sc, const ScenarioSpec& spec,
                          const std::string& prefix) {
  save_map(sc.world, prefix + ".map");
  std::ofstream out(prefix + ".json");
  if (!out) throw std::runtime_error("cannot write " + prefix + ".json");
  out << scenario_sidecar(sc, spec).dump(2) << '\n';
}

inline Scenario load_scenario(const std::string& map_path,
                              const std::string& sidecar_path) {
  Scenario sc;
  sc.world = load_map(map_path);
  std::ifstream in(sidecar_path);
  if (!in) throw std::runtime_error("cannot open " + sidecar_path);
  const nlohmann::json j = nlohmann::json::parse(in);

  if (j.contains("robot")) {
    const auto& r = j["robot"];
    sc.robot.trailers = r.value("N", sc.robot.trailers);
    sc.robot.body_len = r.value("body_len", sc.robot.body_len);
    sc.robot.body_wid = r.value("body_wid", sc.robot.body_wid);
    sc.robot.hitch = r.value("hitch", sc.robot.hitch);
    sc.robot.v_max = r.value("v_max", sc.robot.v_max);
    sc.robot.psi_max = r.value("psi_max", sc.robot.psi_max);
    sc.robot.a_max = r.value("a_max", sc.robot.a_max);
    sc.robot.omega_max = r.value("omega_max", sc.robot.omega_max);
  }
  const auto& start = j.at("start");
  sc.start = make_state(sc.robot, start.at(0).get<double>(), start.at(1).get<double>());
  for (int i = 0; i < sc.start.links && i + 2 < static_cast<int>(start.size()); ++i)
    sc.start.theta[i] = start.at(i + 2).get<double>();
  sc.goal = {j.at("goal").at(0).get<double>(), j.at("goal").at(1).get<double>()};
  sc.id = std::string(j.value("env_type", "file")) + "-L" +
          std::to_string(j.value("level", 0)) + "-s" +
          std::to_string(j.value("seed", std::uint64_t{0}));
  return sc;
}

// Trajectory JSON: states as [x, y, v, psi, theta...] rows plus controls.
// nlohmann prints shortest-round-trip doubles, so replay survives the trip.
inline nlohmann::json trajectory_json(const Trajectory& traj) {
  nlohmann::json j;
  j["dt"] = traj.dt;
  nlohmann::json states = nlohmann::json::array();
  for (const SnakeState& s : traj.states) {
    std::vector<double> row{s.x, s.y, s.v, s.psi};
    for (int i = 0; i < s.links; ++i) row.push_back(s.theta[i]);
    states.push_back(row);
  }
  j["states"] = states;
  nlohmann::json controls = nlohmann::json::array();
  for (const Control& u : traj.controls) controls.push_back({u.a, u.omega});
  j["controls"] = controls;
  return j;
}

inline void save_trajectory(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << trajectory_json(traj).dump() << '\n';
}

inline Trajectory load_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const nlohmann::json j = nlohmann::json::parse(in);
  Trajectory traj;
  traj.dt = j.at("dt").get<double>();
  for (const auto& row : j.at("states")) {
    SnakeState s;
    s.x = row.at(0).get<double>();
    s.y = row.at(1).get<double>();
    s.v = row.at(2).get<double>();
    s.psi = row.at(3).get<double>();
    s.links = static_cast<int>(row.size()) - 4;
    for (int i = 0; i < s.links; ++i) s.theta[i] = row.at(i + 4).get<double>();
    traj.states.push_back(s);
  }
  for (const auto& row : j.at("controls"))
    traj.controls.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
  return traj;
}

}  // namespace snakeplan
