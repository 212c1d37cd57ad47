#include "zonempc/controllers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "zonempc/dynamics.hpp"
#include "zonempc/errors.hpp"
#include "zonempc/lp.hpp"
#include "zonempc/mpc_problem.hpp"

namespace zonempc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ControlSchedule mpc_plan(const MicroclimateState& s0, const ExogenousSeries& exo,
                         const RoomParams& params, const ComfortSpec& comfort,
                         int horizon_steps, double t_start, const MpcOptions& options,
                         const ControlSchedule* warm_start, MpcPlanInfo* info) {
  if (horizon_steps < 1) throw std::domain_error("mpc_plan: horizon must be >= 1");
  MpcProblem problem(s0, t_start, exo, params, comfort, horizon_steps,
                     options.step_duration, options.dt_int, options.slack_weight,
                     options.comfort_margin_K, options.first_step_duration_s);
  const DecisionLayout& L = problem.layout();

  std::vector<std::vector<double>> starts;

  // Start 1: equipment off, ventilation at its floor.
  {
    ControlSchedule off;
    off.step_duration = options.step_duration;
    off.W.assign(horizon_steps, 0.0);
    off.Q.assign(horizon_steps, 0.0);
    starts.push_back(problem.vector_from_schedule(off));
  }
  // Start 2: minimum ventilation plus the steady heating/cooling power that
  // would hold the nearest comfortable temperature at each step.
  {
    ControlSchedule hold;
    hold.step_duration = options.step_duration;
    hold.W.resize(horizon_steps);
    hold.Q.resize(horizon_steps);
    for (int j = 0; j < horizon_steps; ++j) {
      const double Q = problem.Q_min_step(j);
      const double T_tgt = std::clamp(s0.T, problem.bound_lo(j), problem.bound_hi(j));
      const double m = air_mass(params, T_tgt);
      const double W = params.U * (T_tgt - problem.T_out_step(j)) +
                       params.U_star * (T_tgt - s0.T_star) +
                       params.C_p * Q * (T_tgt - params.T_in) +
                       params.C_p * m * params.R_r * (T_tgt - problem.T_out_step(j)) -
                       params.W_oc * problem.N_oc_step(j);
      hold.W[j] = std::clamp(W, params.W_min, params.W_max);
      hold.Q[j] = Q;
    }
    starts.push_back(problem.vector_from_schedule(hold));
  }
  // Start 3: previous cycle's plan, already shifted by the caller.
  if (warm_start != nullptr && warm_start->steps() > 0)
    starts.push_back(problem.vector_from_schedule(*warm_start));

  const SlpResult best = solve_slp_multistart(problem, starts, problem.lower_bounds(),
                                              problem.upper_bounds(), options.slp);
  if (best.status == SlpStatus::Infeasible)
    throw SolverError("mpc_plan: optimizer reported infeasibility despite slacks");

  if (info != nullptr) {
    info->objective = best.objective;
    info->starts_tried = static_cast<int>(starts.size());
    info->iterations = best.iterations;
    info->status = best.status;
    info->slack_total = 0.0;
    for (int j = 0; j < horizon_steps; ++j)
      info->slack_total += best.x[L.s_lo(j)] + best.x[L.s_hi(j)];
  }

  ControlSchedule schedule = problem.schedule_from_vector(best.x);
  schedule.validate(params);
  return schedule;
}

ControlSchedule lmpc_plan(const MicroclimateState& s0, const ExogenousSeries& exo,
                          const RoomParams& params, const ComfortSpec& comfort,
                          int horizon_steps, double t_start, const MpcOptions& options,
                          MpcPlanInfo* info) {
  if (horizon_steps < 1) throw std::domain_error("lmpc_plan: horizon must be >= 1");
  const int H = horizon_steps;
  std::vector<double> step_s(H, options.step_duration);
  if (options.first_step_duration_s > 0.0) step_s[0] = options.first_step_duration_s;
  std::vector<double> t_at(H + 1, t_start);  // step-start / boundary times
  for (int j = 0; j < H; ++j) t_at[j + 1] = t_at[j] + step_s[j];
  if (!exo.covers(t_start, t_at[H]))
    throw std::domain_error("lmpc_plan: series does not cover the horizon");

  const double m_bar = air_mass(params, s0.T);
  const double T_star_bar = s0.T_star;

  // Columns: T_1..T_H (free), W+, W-, s_lo, s_hi per step.
  auto col_T = [](int k) { return k - 1; };  // boundary k in 1..H
  auto col_wp = [H](int j) { return H + j; };
  auto col_wn = [H](int j) { return 2 * H + j; };
  auto col_slo = [H](int k) { return 3 * H + k - 1; };
  auto col_shi = [H](int k) { return 4 * H + k - 1; };

  LinearProgram lp;
  lp.n = 5 * H;
  lp.c.assign(lp.n, 0.0);
  lp.lb.assign(lp.n, 0.0);
  lp.ub.assign(lp.n, kInf);

  std::vector<double> Q_fix(H), T_out(H), N_step(H);
  for (int j = 0; j < H; ++j) {
    const double hours = step_s[j] / kSecondsPerHour;
    T_out[j] = exo.T_out_at(t_at[j]);
    N_step[j] = exo.N_oc_at(t_at[j]);
    Q_fix[j] = std::min(min_ventilation(N_step[j], comfort), params.Q_max);

    lp.lb[col_T(j + 1)] = -kInf;
    lp.ub[col_wp(j)] = params.W_max;
    lp.ub[col_wn(j)] = -params.W_min;
    lp.c[col_wp(j)] = hours;
    lp.c[col_wn(j)] = hours;
    lp.c[col_slo(j + 1)] = options.slack_weight * hours;
    lp.c[col_shi(j + 1)] = options.slack_weight * hours;
  }

  // Model equalities, one explicit Euler step per control step:
  //   T_{j+1} = a_j T_j + kappa_j (W+ - W-) + r_j, with T_0 given.
  lp.A_eq.assign(static_cast<std::size_t>(H) * lp.n, 0.0);
  lp.b_eq.assign(H, 0.0);
  for (int j = 0; j < H; ++j) {
    double* row = lp.A_eq.data() + static_cast<std::size_t>(j) * lp.n;
    const double kappa = step_s[j] / (m_bar * params.C_p);
    const double loss = params.U + params.U_star + params.C_p * Q_fix[j] +
                        params.C_p * m_bar * params.R_r;
    const double a_j = 1.0 - kappa * loss;
    const double r_j = kappa * (params.U * T_out[j] + params.U_star * T_star_bar +
                                params.W_oc * N_step[j] +
                                params.C_p * Q_fix[j] * params.T_in +
                                params.C_p * m_bar * params.R_r * T_out[j]);
    row[col_T(j + 1)] = 1.0;
    row[col_wp(j)] = -kappa;
    row[col_wn(j)] = kappa;
    if (j == 0) {
      lp.b_eq[j] = r_j + a_j * s0.T;
    } else {
      row[col_T(j)] = -a_j;
      lp.b_eq[j] = r_j;
    }
  }

  // Comfort band at each boundary (intersection of the adjacent steps'
  // bands, same semantics as the nonlinear problem), softened by slacks.
  lp.A_ub.assign(static_cast<std::size_t>(2 * H) * lp.n, 0.0);
  lp.b_ub.assign(2 * H, 0.0);
  for (int k = 1; k <= H; ++k) {
    const ComfortBounds before = comfort_bounds(N_step[k - 1], comfort);
    const ComfortBounds after = comfort_bounds(exo.N_oc_at(t_at[k]), comfort);
    double lo = std::max(before.T_lo, after.T_lo);
    double hi = std::min(before.T_hi, after.T_hi);
    const double margin = std::min(options.comfort_margin_K, 0.45 * (hi - lo));
    lo += margin;
    hi -= margin;
    double* lo_row = lp.A_ub.data() + static_cast<std::size_t>(2 * (k - 1)) * lp.n;
    double* hi_row = lp.A_ub.data() + static_cast<std::size_t>(2 * (k - 1) + 1) * lp.n;
    lo_row[col_T(k)] = -1.0;
    lo_row[col_slo(k)] = -1.0;
    lp.b_ub[2 * (k - 1)] = -lo;
    hi_row[col_T(k)] = 1.0;
    hi_row[col_shi(k)] = -1.0;
    lp.b_ub[2 * (k - 1) + 1] = hi;
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw SolverError("lmpc_plan: LP not optimal despite elastic comfort bounds");

  ControlSchedule schedule;
  schedule.step_duration = options.step_duration;
  schedule.W.resize(H);
  schedule.Q = Q_fix;
  for (int j = 0; j < H; ++j) {
    schedule.W[j] = std::clamp(sol.x[col_wp(j)] - sol.x[col_wn(j)], params.W_min,
                               params.W_max);
  }
  schedule.validate(params);

  if (info != nullptr) {
    double vent = 0.0;
    const double alpha = params.Q_max > 0.0 ? fan_coefficient(params) : 0.0;
    for (int j = 0; j < H; ++j) {
      const double hours = step_s[j] / kSecondsPerHour;
      vent += hours * (params.C_p * Q_fix[j] * std::fabs(params.T_in - T_out[j]) +
                       alpha * Q_fix[j] * Q_fix[j] * Q_fix[j]);
    }
    info->objective = sol.objective + vent;
    info->starts_tried = 1;
    info->iterations = sol.iterations;
    info->status = SlpStatus::Converged;
    info->slack_total = 0.0;
    for (int k = 1; k <= H; ++k)
      info->slack_total += sol.x[col_slo(k)] + sol.x[col_shi(k)];
  }
  return schedule;
}

OnOffDecision onoff_decide(const MicroclimateState& s, double N_oc, DayType day_type,
                           const RoomParams& params, const ComfortSpec& comfort,
                           const OnOffMode& prev) {
  const ComfortBounds bounds = comfort_bounds(N_oc, comfort);
  OnOffDecision d;
  d.mode = prev;

  // Thermostat hysteresis: engage at the active bound, release at T_comf.
  if (d.mode.heat_on) {
    if (s.T >= comfort.T_comf) d.mode.heat_on = false;
  } else if (s.T < bounds.T_lo) {
    d.mode.heat_on = true;
  }
  if (d.mode.cool_on) {
    if (s.T <= comfort.T_comf) d.mode.cool_on = false;
  } else if (s.T > bounds.T_hi) {
    d.mode.cool_on = true;
  }
  if (d.mode.heat_on && d.mode.cool_on) {
    // Unreachable from consistent prior states; resolve toward release.
    d.mode.heat_on = s.T < comfort.T_comf;
    d.mode.cool_on = !d.mode.heat_on;
  }

  const bool vacancy_off =
      N_oc <= 0.0 && (day_type == DayType::Hot || day_type == DayType::Mild);
  if (vacancy_off) {
    d.mode.heat_on = false;
    d.mode.cool_on = false;
  }

  auto regime = [&comfort](double excursion) {
    const int r = static_cast<int>(std::ceil(10.0 * excursion / comfort.band));
    return std::clamp(r, 1, 10);
  };
  if (d.mode.heat_on) {
    d.W = params.W_max * regime(bounds.T_lo - s.T) / 10.0;
  } else if (d.mode.cool_on) {
    d.W = params.W_min * regime(s.T - bounds.T_hi) / 10.0;
  }

  // CO2 deadband: full flow at 950 ppm, off at 850 ppm, held in between.
  if (d.mode.vent_on) {
    if (s.nu_co2 <= ppm(850)) d.mode.vent_on = false;
  } else if (s.nu_co2 >= ppm(950)) {
    d.mode.vent_on = true;
  }
  d.Q = d.mode.vent_on ? params.Q_max : 0.0;
  return d;
}

}  // namespace zonempc
