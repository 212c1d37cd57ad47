#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "zonempc/controllers.hpp"
#include "zonempc/cost.hpp"
#include "zonempc/dynamics.hpp"
#include "zonempc/rng.hpp"
#include "zonempc/scenario.hpp"

// Closed-loop execution: plan over the remaining day, apply the first control
// values against the true plant for one replan interval, feed the resulting
// state back, repeat. The plant always runs the full nonlinear dynamics
// regardless of which controller is planning; metrics are computed on the
// true trajectory with the true occupancy.
namespace zonempc {

struct DisturbanceSpec {
  double sigma_T_room = 1.0;  // K, additive Gaussian on the measured room T
  double sigma_T_out = 1.0;   // K, on the forecast's first outside-T sample
  double occ_factor_lo = 0.0; // uniform multiplicative range on the first
  double occ_factor_hi = 2.0; // occupancy sample
  std::uint64_t seed = 0;
};

enum class ControllerKind { Mpc, Lmpc, OnOff };

const char* controller_name(ControllerKind k);
ControllerKind controller_from_name(const std::string& name);  // throws DataError

struct RunResult {
  Trajectory trajectory;
  ControlSchedule realized;   // applied (W, Q) at integration-step granularity
  EnergyBreakdown energy;
  double penalty_Kh = 0.0;
  double max_co2_ppm = 0.0;
  std::vector<double> solve_times_s;  // per cycle, wall clock
  std::string controller_tag;
  std::string scenario_tag;
  Scenario scenario;  // context for export (exogenous series, comfort bounds)
};

struct RollingOptions {
  double replan_interval_s = kSecondsPerHour;  // must lie in [300, 3600]
  double dt_int = kDefaultIntegrationStep;
  std::optional<DisturbanceSpec> disturbance;
  // Shrinking horizon (plan to midnight) by default; a fixed sliding window
  // of this many control steps when set (horizon-study mode).
  std::optional<int> fixed_window_steps;
  // Under declared measurement noise the planners back off the comfort band
  // by this multiple of sigma_T_room (unless an explicit margin was set).
  double noise_margin_factor = 0.5;
  MpcOptions mpc;
};

// The on/off thermostat samples its sensors at this fixed cadence, decoupled
// from the planning interval of the predictive controllers.
constexpr double kOnOffDecisionInterval = 300.0;  // s

// Measurement/forecast perturbation for one cycle: room temperature noise and
// first-sample noise on the forecast window, occupancy clamped at zero.
// Draw order per cycle: room noise, outside noise, occupancy factor.
std::pair<MicroclimateState, ExogenousSeries> perturb_inputs(
    const MicroclimateState& true_state, const ExogenousSeries& window,
    const DisturbanceSpec& spec, Rng& rng);

RunResult rolling_run(const Scenario& scenario, ControllerKind controller,
                      const RollingOptions& options);

// Runs every controller on the identical scenario (identical seeds when
// disturbed) and returns one RunResult per controller, in the given order.
std::vector<RunResult> compare_controllers(const Scenario& scenario,
                                           const std::vector<ControllerKind>& controllers,
                                           const RollingOptions& options);

}  // namespace zonempc
