#include "zonempc/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "zonempc/errors.hpp"

namespace zonempc {

void Trajectory::append(const Trajectory& segment) {
  if (segment.t.empty()) return;
  if (t.empty()) {
    *this = segment;
    return;
  }
  if (segment.t.front() != t.back())
    throw std::invalid_argument("Trajectory::append: segment does not continue in time");
  states.pop_back();  // replaced by the segment's first state (exact handoff)
  states.insert(states.end(), segment.states.begin(), segment.states.end());
  t.pop_back();
  t.insert(t.end(), segment.t.begin(), segment.t.end());
  applied_W.insert(applied_W.end(), segment.applied_W.begin(), segment.applied_W.end());
  applied_Q.insert(applied_Q.end(), segment.applied_Q.begin(), segment.applied_Q.end());
}

MicroclimateState step_state(const MicroclimateState& s, double W, double Q,
                             double T_out, double N_oc, const RoomParams& params,
                             const ComfortSpec& comfort, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("step_state: dt must be > 0");
  if (Q < 0.0) throw std::domain_error("step_state: Q must be >= 0");

  const double m = air_mass(params, s.T);

  // Air heat balance: envelope, inertia coupling, occupants, equipment,
  // ventilation at T_in, infiltration at T_out.
  const double heat = params.U * (T_out - s.T) + params.U_star * (s.T_star - s.T) +
                      params.W_oc * N_oc + W + params.C_p * Q * (params.T_in - s.T) +
                      params.C_p * m * params.R_r * (T_out - s.T);
  // Inertia mass exchanges heat with room air only.
  const double heat_star = -params.U_star * (s.T_star - s.T);
  // CO2 mass balance: occupants exhale, ventilation and infiltration dilute
  // toward the environmental fraction.
  const double co2 = N_oc * comfort.Q_co2 + Q * (comfort.nu_env - s.nu_co2) +
                     m * params.R_r * (comfort.nu_env - s.nu_co2);

  MicroclimateState out;
  out.T = s.T + dt * heat / (m * params.C_p);
  out.T_star = s.T_star + dt * heat_star / params.mC_star;
  out.nu_co2 = s.nu_co2 + dt * co2 / m;
  return out;
}

Trajectory simulate(const MicroclimateState& s0, const ControlSchedule& schedule,
                    const ExogenousSeries& exo, const RoomParams& params,
                    const ComfortSpec& comfort, double dt_int, double t_start) {
  if (!(dt_int > 0.0)) throw std::domain_error("simulate: dt_int must be > 0");
  const double ratio = schedule.step_duration / dt_int;
  const auto substeps = static_cast<long long>(std::llround(ratio));
  if (substeps < 1 || std::fabs(ratio - static_cast<double>(substeps)) > 1e-9)
    throw std::domain_error("simulate: dt_int must divide the control step evenly");

  const double t_end = t_start + schedule.duration();
  if (!exo.covers(t_start, t_end))
    throw std::domain_error("simulate: exogenous series does not cover the schedule span");

  const auto n_steps = static_cast<std::size_t>(schedule.steps()) *
                       static_cast<std::size_t>(substeps);
  Trajectory traj;
  traj.t.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);
  traj.applied_W.reserve(n_steps);
  traj.applied_Q.reserve(n_steps);

  MicroclimateState s = s0;
  traj.t.push_back(t_start);
  traj.states.push_back(s);
  for (std::size_t j = 0; j < schedule.steps(); ++j) {
    const double W = schedule.W[j];
    const double Q = schedule.Q[j];
    for (long long k = 0; k < substeps; ++k) {
      const double time = t_start + schedule.step_duration * static_cast<double>(j) +
                          dt_int * static_cast<double>(k);
      s = step_state(s, W, Q, exo.T_out_at(time), exo.N_oc_at(time), params, comfort,
                     dt_int);
      traj.t.push_back(time + dt_int);
      traj.states.push_back(s);
      traj.applied_W.push_back(W);
      traj.applied_Q.push_back(Q);
    }
  }
  return traj;
}

MicroclimateState steady_state(double W, double Q, double T_out, double N_oc,
                               const RoomParams& params, const ComfortSpec& comfort) {
  if (Q < 0.0) throw std::domain_error("steady_state: Q must be >= 0");

  // With T_star = T the inertia equation is stationary; solve the air balance
  // for T with m(T) updated by fixed-point iteration.
  double T = T_out;
  double m = air_mass(params, T);
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    const double denom = params.U + params.C_p * Q + params.C_p * m * params.R_r;
    if (!(denom > 0.0))
      throw std::domain_error("steady_state: no heat-loss path, fixed point undefined");
    const double T_next = (params.U * T_out + W + params.W_oc * N_oc +
                           params.C_p * Q * params.T_in +
                           params.C_p * m * params.R_r * T_out) /
                          denom;
    const double delta = std::fabs(T_next - T);
    T = T_next;
    m = air_mass(params, T);
    if (delta <= 1e-9) {
      converged = true;
      break;
    }
  }
  if (!converged) throw SolverError("steady_state: fixed point did not converge");

  MicroclimateState s;
  s.T = T;
  s.T_star = T;
  const double dilution = Q + m * params.R_r;
  if (dilution > 0.0) {
    s.nu_co2 = comfort.nu_env + N_oc * comfort.Q_co2 / dilution;
  } else if (N_oc == 0.0) {
    s.nu_co2 = comfort.nu_env;
  } else {
    throw std::domain_error("steady_state: occupied room with no CO2 removal path");
  }
  return s;
}

}  // namespace zonempc
