#pragma once

#include "zonempc/comfort.hpp"
#include "zonempc/core.hpp"
#include "zonempc/cost.hpp"
#include "zonempc/slp.hpp"

// The nonlinear MPC optimization problem over one horizon, posed for the SLP
// solver. Decision vector per control step: split heating/cooling powers
// W+/W-, ventilation flow Q, and the two comfort slacks (DecisionLayout).
// Temperatures at control-step boundaries are predicted by single shooting
// through the full nonlinear model at the plant's integration step, with
// analytic sensitivities propagated alongside the states; the comfort band
// is enforced at those boundaries, softened by the slacks.
//
// The first control step may be shorter than the rest (the move actually
// applied in a rolling loop that replans faster than the hourly grid), so
// the applied move is optimized at its true resolution.
namespace zonempc {

class MpcProblem : public SlpEvaluator {
 public:
  MpcProblem(const MicroclimateState& s0, double t_start,
             const ExogenousSeries& exo, const RoomParams& params,
             const ComfortSpec& comfort, int horizon_steps,
             double step_duration = kSecondsPerHour,
             double dt_int = kDefaultIntegrationStep,
             double slack_weight = kSlackWeightWhPerKh,
             double comfort_margin_K = 0.0,
             double first_step_duration = 0.0);  // 0: uniform grid

  int num_vars() const override { return layout_.size(); }
  int num_constraints() const override { return 2 * layout_.horizon; }
  void eval(std::span<const double> x, SlpEvaluation& out) const override;

  const DecisionLayout& layout() const { return layout_; }
  const std::vector<double>& lower_bounds() const { return lb_; }
  const std::vector<double>& upper_bounds() const { return ub_; }
  const ObjectiveContext& objective_context() const { return objective_; }

  // Forecast quantities per control step / boundary.
  double T_out_step(int j) const { return T_out_[j]; }
  double N_oc_step(int j) const { return N_oc_[j]; }
  double Q_min_step(int j) const { return lb_[layout_.q(j)]; }
  double bound_lo(int k) const { return T_lo_[k]; }
  double bound_hi(int k) const { return T_hi_[k]; }

  // A decision vector drawn from a schedule (slacks zero), clamped to bounds.
  std::vector<double> vector_from_schedule(const ControlSchedule& schedule) const;
  ControlSchedule schedule_from_vector(std::span<const double> x) const;

 private:
  MicroclimateState s0_;
  RoomParams params_;
  ComfortSpec comfort_;
  DecisionLayout layout_;
  double step_duration_;  // nominal (tail) step, also the returned schedule's
  double dt_int_;
  std::vector<double> step_s_;         // per-step duration, s
  std::vector<int> substeps_;          // integration steps per control step
  std::vector<double> T_out_, N_oc_;   // per step, sampled at step start
  std::vector<double> T_lo_, T_hi_;    // per boundary 1..H
  std::vector<double> lb_, ub_;
  ObjectiveContext objective_;
};

}  // namespace zonempc
