#pragma once

#include <span>

#include "zonempc/core.hpp"

// The energy-consumption objective and the smooth form of it exposed to the
// optimizers.
namespace zonempc {

// Default weight converting comfort slack (K*h) into objective units (Wh).
// Large enough that slack is used only under genuine infeasibility
// (equipment saturation), small enough to stay well-conditioned.
constexpr double kSlackWeightWhPerKh = 1e5;

struct EnergyBreakdown {
  double heat_cool = 0.0;     // Wh, sum of |W| * hours
  double vent_thermal = 0.0;  // Wh, ventilation air conditioning
  double vent_fan = 0.0;      // Wh, propulsion
  double total = 0.0;         // Wh, exact sum of the three
};

// Fan-power coefficient alpha = (2 S_p rho)^-2.
double fan_coefficient(const RoomParams& params);

// Evaluates the three energy terms per control step and sums them, powers in
// W times step duration in hours. Throws if any Q > 0 while S_p is undefined
// or if the series does not cover the schedule.
EnergyBreakdown energy_objective(const ControlSchedule& schedule,
                                 const ExogenousSeries& exo,
                                 const RoomParams& params, double t_start = 0.0);

// Decision-vector layout shared by the MPC problem builders: per control
// step the split heating/cooling powers, ventilation flow, and the two
// comfort slacks. The split makes |W| linear; at an optimum W_pos and W_neg
// are never both positive because both cost.
struct DecisionLayout {
  int horizon = 0;

  int size() const { return 5 * horizon; }
  int w_pos(int j) const { return j; }
  int w_neg(int j) const { return horizon + j; }
  int q(int j) const { return 2 * horizon + j; }
  int s_lo(int j) const { return 3 * horizon + j; }
  int s_hi(int j) const { return 4 * horizon + j; }
};

// Precomputed per-step context for evaluating the optimizer objective.
// Steps may have unequal durations (the applied first move can be shorter
// than the hourly tail).
struct ObjectiveContext {
  DecisionLayout layout;
  std::vector<double> step_hours;          // duration of each step, h
  std::vector<double> vent_thermal_coeff;  // C_p * |T_in - T_out_j|, W per kg/s
  double alpha = 0.0;                      // fan coefficient
  double slack_weight = kSlackWeightWhPerKh;
};

// Smooth objective over the split decision vector, in Wh:
//   sum_j hours_j * [ (Wp_j + Wn_j) + coeff_j Q_j + alpha Q_j^3 ]
//   + slack_weight * sum_j hours_j (s_lo_j + s_hi_j).
// On a feasible vector with zero slacks this equals
// energy_objective(schedule).total exactly. If grad is non-empty it must
// have x.size() entries and receives the analytic gradient.
double objective_for_optimizer(std::span<const double> x, const ObjectiveContext& ctx,
                               std::span<double> grad = {});

}  // namespace zonempc
