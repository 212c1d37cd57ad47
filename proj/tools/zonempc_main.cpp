// Command-line front end: closed-loop simulation and the controller studies.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zonempc/comfort.hpp"
#include "zonempc/errors.hpp"
#include "zonempc/harness.hpp"
#include "zonempc/io.hpp"
#include "zonempc/kernels.hpp"

namespace {

using namespace zonempc;
namespace fs = std::filesystem;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSolver = 3;

Scenario resolve_scenario(const std::string& ref, const std::string& day) {
  if (ref == "tc1" || ref == "tc2" || ref == "tc2_svs")
    return builtin_scenario(ref, day_type_from_name(day));
  return load_scenario(ref);  // path to a JSON config
}

void print_row(const RunResult& r) {
  std::printf("%-6s  heat/cool %9.2f kWh  vent %8.2f kWh  total %9.2f kWh  "
              "penalty %7.3f K.h  maxCO2 %7.1f ppm\n",
              r.controller_tag.c_str(), r.energy.heat_cool / 1000.0,
              (r.energy.vent_thermal + r.energy.vent_fan) / 1000.0,
              r.energy.total / 1000.0, r.penalty_Kh, r.max_co2_ppm);
}

nlohmann::ordered_json summary_entry(const RunResult& r) {
  return {{"controller", r.controller_tag},
          {"heat_cool_kwh", r.energy.heat_cool / 1000.0},
          {"vent_kwh", (r.energy.vent_thermal + r.energy.vent_fan) / 1000.0},
          {"total_kwh", r.energy.total / 1000.0},
          {"penalty_Kh", r.penalty_Kh},
          {"max_co2_ppm", r.max_co2_ppm}};
}

void write_json(const nlohmann::ordered_json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw DataError("write failed: " + path.string());
}

int cmd_simulate(const std::string& scenario_ref, const std::string& day,
                 const std::string& controller, double replan,
                 std::optional<std::uint64_t> seed, bool disturb,
                 const std::string& out_dir) {
  Scenario scenario = resolve_scenario(scenario_ref, day);
  RollingOptions opt;
  opt.replan_interval_s = replan;
  if (disturb) {
    DisturbanceSpec spec;
    spec.seed = seed.value_or(1);
    opt.disturbance = spec;
  }
  RunDirLock lock(out_dir);
  RunResult r = rolling_run(scenario, controller_from_name(controller), opt);
  export_run(r, out_dir);
  print_row(r);
  std::printf("wrote %s\n", (fs::path(out_dir) / "metrics.json").string().c_str());
  return 0;
}

int cmd_compare(const std::string& scenario_ref, const std::string& day, double replan,
                std::optional<std::uint64_t> seed, bool disturb,
                const std::string& out_dir) {
  Scenario scenario = resolve_scenario(scenario_ref, day);
  RollingOptions opt;
  opt.replan_interval_s = replan;
  if (disturb) {
    DisturbanceSpec spec;
    spec.seed = seed.value_or(1);
    opt.disturbance = spec;
  }
  RunDirLock lock(out_dir);
  const std::vector<ControllerKind> all = {ControllerKind::Mpc, ControllerKind::Lmpc,
                                           ControllerKind::OnOff};
  std::vector<RunResult> rows = compare_controllers(scenario, all, opt);
  nlohmann::ordered_json summary;
  summary["scenario"] = scenario.tag();
  summary["rows"] = nlohmann::ordered_json::array();
  std::printf("scenario %s\n", scenario.tag().c_str());
  for (const auto& r : rows) {
    print_row(r);
    export_run(r, (fs::path(out_dir) / r.controller_tag).string());
    summary["rows"].push_back(summary_entry(r));
  }
  write_json(summary, fs::path(out_dir) / "summary.json");
  return 0;
}

int cmd_horizon_study(const std::string& scenario_ref, const std::string& day,
                      double wmax_kw, const std::vector<int>& horizons,
                      const std::string& out_dir) {
  Scenario scenario = resolve_scenario(scenario_ref, day);
  scenario.params.W_max = wmax_kw * 1000.0;
  RunDirLock lock(out_dir);
  nlohmann::ordered_json study;
  study["scenario"] = scenario.tag();
  study["W_max_kW"] = wmax_kw;
  study["rows"] = nlohmann::ordered_json::array();
  std::printf("horizon study on %s, W_max = %.2f kW\n", scenario.tag().c_str(), wmax_kw);
  for (int h : horizons) {
    RollingOptions opt;
    opt.fixed_window_steps = h;
    RunResult r = rolling_run(scenario, ControllerKind::Mpc, opt);
    // The planner's own objective on the realized day: energy plus the
    // comfort slack penalty.
    const double objective_wh =
        r.energy.total + kSlackWeightWhPerKh * r.penalty_Kh;
    std::printf("  horizon %2d h: objective %9.2f kWh (energy %9.2f, penalty %6.3f K.h)\n",
                h, objective_wh / 1000.0, r.energy.total / 1000.0, r.penalty_Kh);
    export_run(r, (fs::path(out_dir) / ("h" + std::to_string(h))).string());
    study["rows"].push_back({{"horizon_h", h},
                             {"objective_kwh", objective_wh / 1000.0},
                             {"energy_kwh", r.energy.total / 1000.0},
                             {"penalty_Kh", r.penalty_Kh}});
  }
  write_json(study, fs::path(out_dir) / "study.json");
  return 0;
}

int cmd_uncertainty_study(const std::string& scenario_ref, const std::string& day,
                          int seeds, double replan, const std::string& out_dir) {
  Scenario scenario = resolve_scenario(scenario_ref, day);
  RunDirLock lock(out_dir);
  nlohmann::ordered_json study;
  study["scenario"] = scenario.tag();
  study["seeds"] = seeds;
  study["replan_s"] = replan;
  nlohmann::ordered_json per_seed = nlohmann::ordered_json::array();
  double mean_mpc = 0.0, mean_lmpc = 0.0;
  std::printf("uncertainty study on %s, %d seeds, replan %.0f s\n",
              scenario.tag().c_str(), seeds, replan);
  for (int s = 1; s <= seeds; ++s) {
    RollingOptions opt;
    opt.replan_interval_s = replan;
    DisturbanceSpec spec;
    spec.seed = static_cast<std::uint64_t>(s);
    opt.disturbance = spec;
    RunResult mpc = rolling_run(scenario, ControllerKind::Mpc, opt);
    RunResult lmpc = rolling_run(scenario, ControllerKind::Lmpc, opt);
    mean_mpc += mpc.penalty_Kh;
    mean_lmpc += lmpc.penalty_Kh;
    per_seed.push_back({{"seed", s},
                        {"penalty_mpc_Kh", mpc.penalty_Kh},
                        {"penalty_lmpc_Kh", lmpc.penalty_Kh},
                        {"energy_mpc_kwh", mpc.energy.total / 1000.0},
                        {"energy_lmpc_kwh", lmpc.energy.total / 1000.0}});
    std::printf("  seed %2d: penalty mpc %6.3f  lmpc %6.3f K.h\n", s, mpc.penalty_Kh,
                lmpc.penalty_Kh);
  }
  mean_mpc /= seeds;
  mean_lmpc /= seeds;
  study["per_seed"] = per_seed;
  study["mean_penalty_mpc_Kh"] = mean_mpc;
  study["mean_penalty_lmpc_Kh"] = mean_lmpc;
  std::printf("mean penalty: mpc %.3f K.h, lmpc %.3f K.h\n", mean_mpc, mean_lmpc);
  write_json(study, fs::path(out_dir) / "study.json");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-zone indoor microclimate control testbed: nonlinear MPC, "
               "linearized MPC, and an on/off baseline over a nonlinear "
               "air/inertia/CO2 plant"};
  app.require_subcommand(1);

  std::string scenario_ref = "tc1", day = "mild", controller = "mpc", out_dir;
  double replan = 3600.0, replan_unc = 360.0, wmax_kw = 3.5;
  int seeds = 20;
  std::vector<int> horizons = {2, 3, 4, 6};
  std::optional<std::uint64_t> seed;
  bool disturb = false;

  auto* sim = app.add_subcommand("simulate", "One closed-loop 24 h run");
  sim->add_option("--scenario", scenario_ref, "tc1|tc2|tc2_svs or a JSON config path");
  sim->add_option("--day", day, "cold|mild|hot (builtin scenarios)");
  sim->add_option("--controller", controller, "mpc|lmpc|onoff");
  sim->add_option("--replan", replan, "replan interval, seconds in [300, 3600]");
  sim->add_option("--seed", seed, "disturbance seed");
  sim->add_flag("--disturb", disturb, "perturb measurements and forecasts");
  sim->add_option("--out", out_dir, "output directory")->required();

  auto* cmp = app.add_subcommand("compare", "All three controllers on one scenario");
  cmp->add_option("--scenario", scenario_ref);
  cmp->add_option("--day", day);
  cmp->add_option("--replan", replan);
  cmp->add_option("--seed", seed);
  cmp->add_flag("--disturb", disturb);
  cmp->add_option("--out", out_dir)->required();

  auto* hor = app.add_subcommand("horizon-study",
                                 "MPC with fixed prediction windows of several lengths");
  hor->add_option("--scenario", scenario_ref);
  hor->add_option("--day", day);
  hor->add_option("--wmax-kw", wmax_kw, "heating power cap, kW");
  hor->add_option("--horizons", horizons, "window lengths in hours")->delimiter(',');
  hor->add_option("--out", out_dir)->required();

  auto* unc = app.add_subcommand("uncertainty-study",
                                 "MPC vs LMPC penalties under noisy measurements");
  unc->add_option("--scenario", scenario_ref);
  unc->add_option("--day", day);
  unc->add_option("--seeds", seeds, "number of seeds (1..N)");
  unc->add_option("--replan", replan_unc, "replan interval, seconds");
  unc->add_option("--out", out_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (sim->parsed())
      return cmd_simulate(scenario_ref, day, controller, replan, seed, disturb, out_dir);
    if (cmp->parsed())
      return cmd_compare(scenario_ref, day, replan, seed, disturb, out_dir);
    if (hor->parsed())
      return cmd_horizon_study(scenario_ref, day, wmax_kw, horizons, out_dir);
    if (unc->parsed())
      return cmd_uncertainty_study(scenario_ref, day, seeds, replan_unc, out_dir);
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitData;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return kExitSolver;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}
