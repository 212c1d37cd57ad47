#include "zonempc/mpc_problem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace zonempc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

int exact_substeps(double duration, double dt) {
  const double ratio = duration / dt;
  const auto n = static_cast<int>(std::llround(ratio));
  if (n < 1 || std::fabs(ratio - n) > 1e-9)
    throw std::domain_error("MpcProblem: dt_int must divide every control step");
  return n;
}
}  // namespace

MpcProblem::MpcProblem(const MicroclimateState& s0, double t_start,
                       const ExogenousSeries& exo, const RoomParams& params,
                       const ComfortSpec& comfort, int horizon_steps,
                       double step_duration, double dt_int, double slack_weight,
                       double comfort_margin_K, double first_step_duration)
    : s0_(s0), params_(params), comfort_(comfort), step_duration_(step_duration),
      dt_int_(dt_int) {
  if (horizon_steps < 1)
    throw std::domain_error("MpcProblem: horizon must be >= 1 step");

  layout_.horizon = horizon_steps;
  const int H = horizon_steps;
  step_s_.assign(H, step_duration);
  if (first_step_duration > 0.0) step_s_[0] = first_step_duration;
  substeps_.resize(H);
  double span = 0.0;
  for (int j = 0; j < H; ++j) {
    substeps_[j] = exact_substeps(step_s_[j], dt_int);
    span += step_s_[j];
  }
  if (!exo.covers(t_start, t_start + span))
    throw std::domain_error("MpcProblem: series does not cover the horizon");

  T_out_.resize(H);
  N_oc_.resize(H);
  T_lo_.resize(H);
  T_hi_.resize(H);
  lb_.assign(layout_.size(), 0.0);
  ub_.assign(layout_.size(), kInf);

  objective_.layout = layout_;
  objective_.alpha = params.Q_max > 0.0 ? fan_coefficient(params) : 0.0;
  objective_.slack_weight = slack_weight;
  objective_.vent_thermal_coeff.resize(H);
  objective_.step_hours.resize(H);

  double t_step = t_start;
  for (int j = 0; j < H; ++j) {
    T_out_[j] = exo.T_out_at(t_step);
    N_oc_[j] = exo.N_oc_at(t_step);
    objective_.step_hours[j] = step_s_[j] / kSecondsPerHour;
    objective_.vent_thermal_coeff[j] =
        params.C_p * std::fabs(params.T_in - T_out_[j]);

    // Band at the end-of-step boundary: the intersection of the bands of the
    // two steps meeting there. States move monotonically within a step under
    // constant inputs, so pinning both endpoints to the step's band keeps the
    // whole occupied interval inside it (the metric samples occupancy
    // per-instant, left-constant).
    const double t_bound = t_step + step_s_[j];
    const ComfortBounds before = comfort_bounds(N_oc_[j], comfort);
    const ComfortBounds after = comfort_bounds(exo.N_oc_at(t_bound), comfort);
    T_lo_[j] = std::max(before.T_lo, after.T_lo);
    T_hi_[j] = std::min(before.T_hi, after.T_hi);
    const double margin =
        std::min(comfort_margin_K, 0.45 * (T_hi_[j] - T_lo_[j]));
    T_lo_[j] += margin;
    T_hi_[j] -= margin;

    ub_[layout_.w_pos(j)] = params.W_max;
    ub_[layout_.w_neg(j)] = -params.W_min;
    // CO2 is handled through the ventilation box: the minimum of the mass
    // balance, capped by what the equipment can deliver.
    lb_[layout_.q(j)] = std::min(min_ventilation(N_oc_[j], comfort), params.Q_max);
    ub_[layout_.q(j)] = params.Q_max;
    t_step = t_bound;
  }
}

void MpcProblem::eval(std::span<const double> x, SlpEvaluation& out) const {
  const int H = layout_.horizon;
  const int n = layout_.size();
  const int m = 2 * H;
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("MpcProblem::eval: dimension mismatch");

  out.grad.assign(n, 0.0);
  out.g.assign(m, 0.0);
  out.jac.assign(static_cast<std::size_t>(m) * n, 0.0);
  out.f = objective_for_optimizer(x, objective_, out.grad);

  // Single shooting with forward sensitivities of (T, T_star) w.r.t. the
  // net power and flow of every step: columns [W_0..W_{H-1}, Q_0..Q_{H-1}].
  const int nu = 2 * H;
  std::vector<double> JT(nu, 0.0), JS(nu, 0.0), JT_next(nu, 0.0), JS_next(nu, 0.0);
  double T = s0_.T;
  double S = s0_.T_star;
  const double dt = dt_int_;

  for (int j = 0; j < H; ++j) {
    const double W = x[layout_.w_pos(j)] - x[layout_.w_neg(j)];
    const double Q = x[layout_.q(j)];
    const double T_out = T_out_[j];
    const double N = N_oc_[j];
    for (int k = 0; k < substeps_[j]; ++k) {
      const double m_air = air_mass(params_, T);
      const double mc = m_air * params_.C_p;
      const double A = params_.U * (T_out - T) + params_.U_star * (S - T) +
                       params_.W_oc * N + W + params_.C_p * Q * (params_.T_in - T);
      const double fT = A / mc + params_.R_r * (T_out - T);
      const double fS = params_.U_star * (T - S) / params_.mC_star;

      const double dA_dT = -(params_.U + params_.U_star + params_.C_p * Q);
      const double dm_dT = -m_air / (T + kCelsiusToKelvin);
      const double dfT_dT = dA_dT / mc - A * dm_dT / (m_air * mc) - params_.R_r;
      const double dfT_dS = params_.U_star / mc;
      const double dfT_dW = 1.0 / mc;
      const double dfT_dQ = (params_.T_in - T) / m_air;
      const double dfS_dT = params_.U_star / params_.mC_star;

      for (int c = 0; c < nu; ++c) {
        JT_next[c] = JT[c] + dt * (dfT_dT * JT[c] + dfT_dS * JS[c]);
        JS_next[c] = JS[c] + dt * (dfS_dT * JT[c] - dfS_dT * JS[c]);
      }
      JT_next[j] += dt * dfT_dW;
      JT_next[H + j] += dt * dfT_dQ;
      std::swap(JT, JT_next);
      std::swap(JS, JS_next);

      T += dt * fT;
      S += dt * fS;
    }

    // Boundary k = j+1: T_lo - T - s_lo <= 0 and T - T_hi - s_hi <= 0.
    const int row_lo = 2 * j;
    const int row_hi = 2 * j + 1;
    out.g[row_lo] = T_lo_[j] - T - x[layout_.s_lo(j)];
    out.g[row_hi] = T - T_hi_[j] - x[layout_.s_hi(j)];
    double* jac_lo = out.jac.data() + static_cast<std::size_t>(row_lo) * n;
    double* jac_hi = out.jac.data() + static_cast<std::size_t>(row_hi) * n;
    for (int c = 0; c <= j; ++c) {
      jac_lo[layout_.w_pos(c)] = -JT[c];
      jac_lo[layout_.w_neg(c)] = JT[c];
      jac_lo[layout_.q(c)] = -JT[H + c];
      jac_hi[layout_.w_pos(c)] = JT[c];
      jac_hi[layout_.w_neg(c)] = -JT[c];
      jac_hi[layout_.q(c)] = JT[H + c];
    }
    jac_lo[layout_.s_lo(j)] = -1.0;
    jac_hi[layout_.s_hi(j)] = -1.0;
  }
}

std::vector<double> MpcProblem::vector_from_schedule(const ControlSchedule& schedule) const {
  const int H = layout_.horizon;
  std::vector<double> x(layout_.size(), 0.0);
  const int steps = static_cast<int>(schedule.steps());
  for (int j = 0; j < H; ++j) {
    const int src = std::min(j, steps - 1);
    const double W = steps > 0 ? schedule.W[src] : 0.0;
    const double Q = steps > 0 ? schedule.Q[src] : 0.0;
    x[layout_.w_pos(j)] = std::clamp(W > 0.0 ? W : 0.0, 0.0, ub_[layout_.w_pos(j)]);
    x[layout_.w_neg(j)] = std::clamp(W < 0.0 ? -W : 0.0, 0.0, ub_[layout_.w_neg(j)]);
    x[layout_.q(j)] = std::clamp(Q, lb_[layout_.q(j)], ub_[layout_.q(j)]);
  }
  return x;
}

ControlSchedule MpcProblem::schedule_from_vector(std::span<const double> x) const {
  const int H = layout_.horizon;
  ControlSchedule schedule;
  schedule.step_duration = step_duration_;
  schedule.W.resize(H);
  schedule.Q.resize(H);
  for (int j = 0; j < H; ++j) {
    const double W = x[layout_.w_pos(j)] - x[layout_.w_neg(j)];
    schedule.W[j] = std::clamp(W, params_.W_min, params_.W_max);
    schedule.Q[j] = std::clamp(x[layout_.q(j)], 0.0, params_.Q_max);
  }
  return schedule;
}

}  // namespace zonempc
