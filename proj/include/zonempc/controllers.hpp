#pragma once

#include <optional>

#include "zonempc/core.hpp"
#include "zonempc/comfort.hpp"
#include "zonempc/cost.hpp"
#include "zonempc/slp.hpp"

// The three control policies: nonlinear MPC (SLP over the full model),
// linearized MPC (one LP over a frozen-mass, frozen-inertia model), and the
// quantized on/off baseline.
namespace zonempc {

enum class DayType { Cold, Mild, Hot };

struct MpcOptions {
  double step_duration = kSecondsPerHour;
  double dt_int = kDefaultIntegrationStep;
  double slack_weight = kSlackWeightWhPerKh;
  // Symmetric tightening of the comfort band inside the planner, in K.
  // Zero for nominal runs; the harness raises it under declared measurement
  // noise so plans do not ride the band edge that noise will cross.
  double comfort_margin_K = 0.0;
  // Duration of the first control step (0 = same as the rest). A rolling
  // loop replanning faster than the hourly grid sets this to the replan
  // interval, so the move actually applied is optimized at its own
  // resolution while the tail stays on the coarse grid.
  double first_step_duration_s = 0.0;
  SlpOptions slp;
};

struct MpcPlanInfo {
  double objective = 0.0;      // optimizer objective of the winning start, Wh
  double slack_total = 0.0;    // K over all boundaries
  int starts_tried = 0;
  int iterations = 0;          // of the winning start
  SlpStatus status = SlpStatus::Converged;
};

// Plans (W, Q) over the horizon from the full nonlinear model. Multi-start:
// zero controls, minimum ventilation with steady-state heating toward the
// band, and the previous cycle's shifted schedule when provided.
ControlSchedule mpc_plan(const MicroclimateState& s0, const ExogenousSeries& exo,
                         const RoomParams& params, const ComfortSpec& comfort,
                         int horizon_steps, double t_start = 0.0,
                         const MpcOptions& options = {},
                         const ControlSchedule* warm_start = nullptr,
                         MpcPlanInfo* info = nullptr);

// Linearized MPC: ventilation pinned to the CO2 minimum, air mass frozen at
// m(T0), inertia temperature frozen at T_star(0), explicit first-order
// stepping with the integration step equal to the control step. The result
// is a pure LP over (T, W+, W-, slacks).
ControlSchedule lmpc_plan(const MicroclimateState& s0, const ExogenousSeries& exo,
                          const RoomParams& params, const ComfortSpec& comfort,
                          int horizon_steps, double t_start = 0.0,
                          const MpcOptions& options = {},
                          MpcPlanInfo* info = nullptr);

// Hysteresis state of the on/off controller.
struct OnOffMode {
  bool heat_on = false;
  bool cool_on = false;
  bool vent_on = false;
};

struct OnOffDecision {
  double W = 0.0;
  double Q = 0.0;
  OnOffMode mode;
};

// Quantized thermostat plus CO2 deadband ventilation:
//  - heating engages below the active lower bound and releases at T_comf,
//    cooling mirrors it around the upper bound;
//  - engaged power runs at regime ceil(10 * excursion / band) of max power,
//    clamped to [1, 10] while engaged;
//  - ventilation switches to full flow at 950 ppm and off at 850 ppm;
//  - on hot and mild days the heating/cooling is forced off when vacant.
OnOffDecision onoff_decide(const MicroclimateState& s, double N_oc,
                           DayType day_type, const RoomParams& params,
                           const ComfortSpec& comfort, const OnOffMode& prev);

}  // namespace zonempc
