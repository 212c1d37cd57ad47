#include "zonempc/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "zonempc/comfort.hpp"
#include "zonempc/errors.hpp"

namespace zonempc {

namespace fs = std::filesystem;

RunDirLock::RunDirLock(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir + ": " + ec.message());
  lock_path_ = (fs::path(dir) / ".zonempc.lock").string();
  if (fs::exists(lock_path_))
    throw DataError("output directory " + dir +
                    " is locked by another run (remove .zonempc.lock if stale)");
  std::ofstream lock(lock_path_);
  if (!lock) throw DataError("cannot create lock file in " + dir);
  lock << "locked\n";
}

RunDirLock::~RunDirLock() {
  std::error_code ec;
  fs::remove(lock_path_, ec);
}

std::string metrics_json(const RunResult& result) {
  nlohmann::ordered_json j;
  j["controller"] = result.controller_tag;
  j["scenario"] = result.scenario_tag;
  j["energy_kwh"] = {
      {"heat_cool", result.energy.heat_cool / 1000.0},
      {"vent_thermal", result.energy.vent_thermal / 1000.0},
      {"vent_fan", result.energy.vent_fan / 1000.0},
      {"total", result.energy.total / 1000.0},
  };
  j["penalty_Kh"] = result.penalty_Kh;
  j["max_co2_ppm"] = result.max_co2_ppm;
  j["cycles"] = result.solve_times_s.size();
  return j.dump(2) + "\n";
}

std::vector<std::string> export_run(const RunResult& result, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir + ": " + ec.message());

  std::vector<std::string> written;

  // Trajectory on the integration grid. W_W and Q_kgps apply over
  // [t, t + dt); the final row closes the day and carries zeros. Exogenous
  // values and the active comfort band are resolved per-instant so plots can
  // overlay exactly what the penalty metric used.
  const auto csv_path = (fs::path(dir) / "trajectory.csv").string();
  {
    std::ofstream out(csv_path);
    if (!out) throw DataError("cannot write " + csv_path);
    out << "t_hours,T_C,T_star_C,CO2_ppm,W_W,Q_kgps,T_out_C,N_oc,T_lo_C,T_hi_C\n";
    const auto& traj = result.trajectory;
    const auto& exo = result.scenario.exo;
    char buf[360];
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
      const bool has_step = i < traj.applied_W.size();
      const bool have_exo = !exo.t.empty() && exo.covers(traj.t[i], traj.t[i]);
      const double T_out = have_exo ? exo.T_out_at(traj.t[i]) : 0.0;
      const double N = have_exo ? exo.N_oc_at(traj.t[i]) : 0.0;
      const ComfortBounds b = comfort_bounds(N, result.scenario.comfort);
      std::snprintf(buf, sizeof buf,
                    "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g",
                    traj.t[i] / kSecondsPerHour, traj.states[i].T,
                    traj.states[i].T_star, traj.states[i].co2_ppm(),
                    has_step ? traj.applied_W[i] : 0.0,
                    has_step ? traj.applied_Q[i] : 0.0, T_out, N, b.T_lo, b.T_hi);
      out << buf << '\n';
    }
    if (!out) throw DataError("write failed: " + csv_path);
    written.push_back(csv_path);
  }

  const auto metrics_path = (fs::path(dir) / "metrics.json").string();
  {
    std::ofstream out(metrics_path);
    if (!out) throw DataError("cannot write " + metrics_path);
    out << metrics_json(result);
    if (!out) throw DataError("write failed: " + metrics_path);
    written.push_back(metrics_path);
  }

  const auto timings_path = (fs::path(dir) / "timings.json").string();
  {
    nlohmann::ordered_json j;
    j["solve_times_s"] = result.solve_times_s;
    std::ofstream out(timings_path);
    if (!out) throw DataError("cannot write " + timings_path);
    out << j.dump(2) << "\n";
    if (!out) throw DataError("write failed: " + timings_path);
    written.push_back(timings_path);
  }
  return written;
}

}  // namespace zonempc
