#include "zonempc/cost.hpp"

#include <cmath>
#include <stdexcept>

#include "zonempc/kernels.hpp"

namespace zonempc {

double fan_coefficient(const RoomParams& params) {
  const double d = 2.0 * params.S_p * params.rho;
  return 1.0 / (d * d);
}

EnergyBreakdown energy_objective(const ControlSchedule& schedule,
                                 const ExogenousSeries& exo,
                                 const RoomParams& params, double t_start) {
  EnergyBreakdown out;
  if (schedule.steps() == 0) return out;
  if (!exo.covers(t_start, t_start + schedule.duration()))
    throw std::domain_error("energy_objective: series does not cover the schedule");

  const double hours = schedule.step_duration / kSecondsPerHour;
  out.heat_cool = kernels::sum_abs(schedule.W.data(), schedule.W.size()) * hours;

  double alpha = 0.0;
  bool have_alpha = false;
  for (std::size_t j = 0; j < schedule.steps(); ++j) {
    const double Q = schedule.Q[j];
    if (Q <= 0.0) continue;
    if (!have_alpha) {
      if (!(params.S_p > 0.0))
        throw std::domain_error("energy_objective: Q > 0 with S_p undefined");
      alpha = fan_coefficient(params);
      have_alpha = true;
    }
    const double T_out = exo.T_out_at(t_start + schedule.step_duration * static_cast<double>(j));
    out.vent_thermal += params.C_p * Q * std::fabs(params.T_in - T_out) * hours;
    out.vent_fan += alpha * Q * Q * Q * hours;
  }
  out.total = out.heat_cool + out.vent_thermal + out.vent_fan;
  return out;
}

double objective_for_optimizer(std::span<const double> x, const ObjectiveContext& ctx,
                               std::span<double> grad) {
  const DecisionLayout& L = ctx.layout;
  if (static_cast<int>(x.size()) != L.size())
    throw std::invalid_argument("objective_for_optimizer: decision vector size mismatch");
  if (static_cast<int>(ctx.vent_thermal_coeff.size()) != L.horizon ||
      static_cast<int>(ctx.step_hours.size()) != L.horizon)
    throw std::invalid_argument("objective_for_optimizer: context size mismatch");
  const bool want_grad = !grad.empty();
  if (want_grad && grad.size() != x.size())
    throw std::invalid_argument("objective_for_optimizer: gradient size mismatch");

  double f = 0.0;
  for (int j = 0; j < L.horizon; ++j) {
    const double h = ctx.step_hours[j];
    const double sw = ctx.slack_weight * h;
    const double q = x[L.q(j)];
    const double coeff = ctx.vent_thermal_coeff[j];
    f += h * (x[L.w_pos(j)] + x[L.w_neg(j)] + coeff * q + ctx.alpha * q * q * q);
    f += sw * (x[L.s_lo(j)] + x[L.s_hi(j)]);
    if (want_grad) {
      grad[L.w_pos(j)] = h;
      grad[L.w_neg(j)] = h;
      grad[L.q(j)] = h * (coeff + 3.0 * ctx.alpha * q * q);
      grad[L.s_lo(j)] = sw;
      grad[L.s_hi(j)] = sw;
    }
  }
  return f;
}

}  // namespace zonempc
