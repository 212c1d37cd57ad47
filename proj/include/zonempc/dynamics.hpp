#pragma once

#include "zonempc/core.hpp"

// The plant: coupled air / inertia-mass / CO2 balance integrated with a
// first-order explicit scheme. The air mass m(T) is recomputed from the
// current temperature every step (full nonlinear model); the frozen-mass
// approximation exists only inside the linearized controller.
namespace zonempc {

constexpr double kDefaultIntegrationStep = 60.0;  // s

// Simulated trajectory on a uniform integration grid. states has one more
// entry than applied_W/applied_Q; applied values act on [t[i], t[i+1]).
struct Trajectory {
  std::vector<double> t;  // s, uniform spacing dt
  std::vector<MicroclimateState> states;
  std::vector<double> applied_W;
  std::vector<double> applied_Q;

  double dt() const { return t.size() > 1 ? t[1] - t[0] : 0.0; }
  // Concatenates a segment whose first state continues this trajectory.
  void append(const Trajectory& segment);
};

// One explicit Euler step of the three balance equations.
MicroclimateState step_state(const MicroclimateState& s, double W, double Q,
                             double T_out, double N_oc,
                             const RoomParams& params,
                             const ComfortSpec& comfort, double dt);

// Integrates a control schedule, holding each (W, Q) constant within its
// control step. The schedule starts at absolute time t_start (seconds on the
// exogenous series' clock).
Trajectory simulate(const MicroclimateState& s0, const ControlSchedule& schedule,
                    const ExogenousSeries& exo, const RoomParams& params,
                    const ComfortSpec& comfort,
                    double dt_int = kDefaultIntegrationStep, double t_start = 0.0);

// Fixed point of the balance equations under constant inputs (T_star = T).
// Analytic up to one fixed-point iteration on m(T), tolerance 1e-9 K.
MicroclimateState steady_state(double W, double Q, double T_out, double N_oc,
                               const RoomParams& params,
                               const ComfortSpec& comfort);

}  // namespace zonempc
