#include "zonempc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "zonempc/comfort.hpp"
#include "zonempc/errors.hpp"

namespace zonempc {

namespace {

constexpr double kDaySeconds = 24.0 * kSecondsPerHour;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// Planning grid for one cycle: the first step spans the applied interval,
// the tail stays on the coarse control grid.
int horizon_steps(double remaining, double applied, double step,
                  std::optional<int> fixed_window) {
  if (fixed_window) return *fixed_window;
  const double tail = remaining - applied;
  if (tail <= 1e-9) return 1;
  return 1 + static_cast<int>(std::ceil(tail / step - 1e-9));
}

// Worst-case forecast coverage needed by the planner across all cycles.
double coverage_needed(double replan, double step, std::optional<int> fixed_window) {
  double worst = kDaySeconds;
  for (double t = 0.0; t < kDaySeconds; t += replan) {
    const double remaining = kDaySeconds - t;
    const double applied = std::min(replan, remaining);
    const int H = horizon_steps(remaining, applied, step, fixed_window);
    worst = std::max(worst, t + applied + step * (H - 1));
  }
  return worst;
}

}  // namespace

const char* controller_name(ControllerKind k) {
  switch (k) {
    case ControllerKind::Mpc:
      return "mpc";
    case ControllerKind::Lmpc:
      return "lmpc";
    case ControllerKind::OnOff:
      return "onoff";
  }
  return "?";
}

ControllerKind controller_from_name(const std::string& name) {
  if (name == "mpc") return ControllerKind::Mpc;
  if (name == "lmpc") return ControllerKind::Lmpc;
  if (name == "onoff") return ControllerKind::OnOff;
  throw DataError("unknown controller '" + name + "' (expected mpc|lmpc|onoff)");
}

std::pair<MicroclimateState, ExogenousSeries> perturb_inputs(
    const MicroclimateState& true_state, const ExogenousSeries& window,
    const DisturbanceSpec& spec, Rng& rng) {
  MicroclimateState state = true_state;
  ExogenousSeries exo = window;
  state.T += rng.normal(0.0, spec.sigma_T_room);
  if (!exo.t.empty()) {
    exo.T_out.front() += rng.normal(0.0, spec.sigma_T_out);
    exo.N_oc.front() =
        std::max(0.0, exo.N_oc.front() * rng.uniform(spec.occ_factor_lo, spec.occ_factor_hi));
  }
  return {state, exo};
}

RunResult rolling_run(const Scenario& scenario, ControllerKind controller,
                      const RollingOptions& opt) {
  const double replan = opt.replan_interval_s;
  const double step = opt.mpc.step_duration;
  if (!(replan >= 300.0 && replan <= 3600.0))
    throw std::domain_error("rolling_run: replan interval must lie in [300, 3600] s");
  const double cycles_exact = kDaySeconds / replan;
  if (std::fabs(cycles_exact - std::round(cycles_exact)) > 1e-9)
    throw std::domain_error("rolling_run: replan interval must divide 24 h evenly");
  if (std::fabs(replan / opt.dt_int - std::round(replan / opt.dt_int)) > 1e-9)
    throw std::domain_error("rolling_run: dt_int must divide the replan interval");
  if (opt.fixed_window_steps && *opt.fixed_window_steps < 1)
    throw std::domain_error("rolling_run: fixed window must be >= 1 step");

  const bool plans_ahead = controller != ControllerKind::OnOff;
  const double needed =
      plans_ahead ? coverage_needed(replan, step, opt.fixed_window_steps) : kDaySeconds;
  if (!scenario.exo.covers(0.0, needed))
    throw std::domain_error(
        "rolling_run: exogenous series too short for the planning windows (needs " +
        std::to_string(needed / kSecondsPerHour) + " h)");

  // The thermostat reacts at its own sampling cadence; planners follow the
  // replan interval.
  const double cycle_s = plans_ahead ? replan : std::min(replan, kOnOffDecisionInterval);
  if (plans_ahead && replan > step)
    throw std::domain_error("rolling_run: replan interval must not exceed the control step");

  MpcOptions mpc_options = opt.mpc;
  if (replan < step) mpc_options.first_step_duration_s = replan;
  if (opt.disturbance && mpc_options.comfort_margin_K == 0.0) {
    mpc_options.comfort_margin_K =
        opt.noise_margin_factor * opt.disturbance->sigma_T_room;
  }

  Rng rng(opt.disturbance ? opt.disturbance->seed : 0);

  RunResult result;
  result.controller_tag = controller_name(controller);
  result.scenario_tag = scenario.tag();
  result.scenario = scenario;
  result.realized.step_duration = opt.dt_int;

  MicroclimateState true_state = scenario.initial;
  ControlSchedule previous_plan;
  OnOffMode onoff_mode;
  double t = 0.0;

  while (t < kDaySeconds - 1e-9) {
    const double apply_s = std::min(cycle_s, kDaySeconds - t);

    // What the controller sees: possibly noise-perturbed measured state and
    // forecast window. The plant below always advances the true state.
    MicroclimateState measured = true_state;
    ExogenousSeries forecast = scenario.exo;
    if (opt.disturbance) {
      // Restrict the window so "first sample" is the one at the current time.
      ExogenousSeries window;
      const std::size_t start = [&] {
        std::size_t i = 0;
        while (i + 1 < forecast.t.size() && forecast.t[i + 1] <= t) ++i;
        return i;
      }();
      window.t.assign(forecast.t.begin() + start, forecast.t.end());
      window.T_out.assign(forecast.T_out.begin() + start, forecast.T_out.end());
      window.N_oc.assign(forecast.N_oc.begin() + start, forecast.N_oc.end());
      auto perturbed = perturb_inputs(measured, window, *opt.disturbance, rng);
      measured = perturbed.first;
      forecast = std::move(perturbed.second);
    }

    const int horizon =
        horizon_steps(kDaySeconds - t, apply_s, step, opt.fixed_window_steps);

    ControlSchedule plan;
    const double t_solve0 = now_seconds();
    try {
      switch (controller) {
        case ControllerKind::Mpc:
          plan = mpc_plan(measured, forecast, scenario.params, scenario.comfort,
                          horizon, t, mpc_options,
                          previous_plan.steps() > 0 ? &previous_plan : nullptr);
          break;
        case ControllerKind::Lmpc:
          plan = lmpc_plan(measured, forecast, scenario.params, scenario.comfort,
                           horizon, t, mpc_options);
          break;
        case ControllerKind::OnOff: {
          const OnOffDecision d =
              onoff_decide(measured, forecast.N_oc_at(t), scenario.day_type,
                           scenario.params, scenario.comfort, onoff_mode);
          onoff_mode = d.mode;
          plan.step_duration = step;
          plan.W.assign(1, d.W);
          plan.Q.assign(1, d.Q);
          break;
        }
      }
    } catch (const std::exception& e) {
      throw SolverError(std::string(controller_name(controller)) + " failed at cycle t=" +
                        std::to_string(t / kSecondsPerHour) + " h: " + e.what());
    }
    result.solve_times_s.push_back(now_seconds() - t_solve0);

    // Apply the first control values against the true plant.
    ControlSchedule applied;
    applied.step_duration = apply_s;
    applied.W.assign(1, plan.W.front());
    applied.Q.assign(1, plan.Q.front());
    Trajectory segment = simulate(true_state, applied, scenario.exo,
                                  scenario.params, scenario.comfort, opt.dt_int, t);
    true_state = segment.states.back();
    result.trajectory.append(segment);

    const auto n_sub = segment.applied_W.size();
    result.realized.W.insert(result.realized.W.end(), n_sub, plan.W.front());
    result.realized.Q.insert(result.realized.Q.end(), n_sub, plan.Q.front());

    // Warm start for the next cycle: the first step was applied in full.
    if (controller == ControllerKind::Mpc) {
      previous_plan = plan;
      if (previous_plan.steps() > 1) {
        previous_plan.W.erase(previous_plan.W.begin());
        previous_plan.Q.erase(previous_plan.Q.begin());
      }
    }
    t += apply_s;
  }

  result.energy = energy_objective(result.realized, scenario.exo, scenario.params);
  result.penalty_Kh = temperature_penalty(result.trajectory, scenario.exo, scenario.comfort);
  result.max_co2_ppm = 0.0;
  for (const auto& s : result.trajectory.states)
    result.max_co2_ppm = std::max(result.max_co2_ppm, s.co2_ppm());
  return result;
}

std::vector<RunResult> compare_controllers(const Scenario& scenario,
                                           const std::vector<ControllerKind>& controllers,
                                           const RollingOptions& options) {
  if (controllers.empty())
    throw std::domain_error("compare_controllers: controller set must be nonempty");
  std::vector<RunResult> rows;
  rows.reserve(controllers.size());
  for (const ControllerKind k : controllers) {
    rows.push_back(rolling_run(scenario, k, options));
  }
  return rows;
}

}  // namespace zonempc
