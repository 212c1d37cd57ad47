#pragma once

#include "zonempc/core.hpp"
#include "zonempc/dynamics.hpp"

// Comfort constraints, the CO2-driven minimum ventilation law, and the
// temperature-penalty metric.
namespace zonempc {

// Per-instant temperature bounds and minimum ventilation.
struct ComfortBounds {
  double T_lo = 0.0;  // degC
  double T_hi = 0.0;  // degC
  double Q_lo = 0.0;  // kg/s (uncapped; callers clamp against Q_max)
};

// Minimum ventilation mass flow keeping steady-state CO2 at or below the
// comfort cap: N_oc * Q_co2 / (nu_max - nu_env). The denominator is the
// positive concentration headroom; infiltration is ignored, which makes the
// bound conservative.
double min_ventilation(double N_oc, const ComfortSpec& comfort);

// Occupied rooms get the narrow band around T_comf, vacant rooms the wide
// one. The switch follows occupancy, not clock time.
ComfortBounds comfort_bounds(double N_oc, const ComfortSpec& comfort);

// Time integral of the excursion beyond the occupancy-dependent band,
// left-rectangle rule on the trajectory grid. Result in K*h.
double temperature_penalty(const Trajectory& traj, const ExogenousSeries& exo,
                           const ComfortSpec& comfort);

}  // namespace zonempc
