#include "zonempc/comfort.hpp"

#include <stdexcept>

#include "zonempc/kernels.hpp"

namespace zonempc {

double min_ventilation(double N_oc, const ComfortSpec& comfort) {
  if (!(comfort.nu_max > comfort.nu_env))
    throw std::domain_error("min_ventilation: need nu_max > nu_env");
  if (N_oc <= 0.0) return 0.0;
  return N_oc * comfort.Q_co2 / (comfort.nu_max - comfort.nu_env);
}

ComfortBounds comfort_bounds(double N_oc, const ComfortSpec& comfort) {
  ComfortBounds b;
  if (N_oc > 0.0) {
    b.T_lo = comfort.T_comf - comfort.band;
    b.T_hi = comfort.T_comf + comfort.band;
  } else {
    b.T_lo = comfort.T_lo_vacant;
    b.T_hi = comfort.T_hi_vacant;
  }
  b.Q_lo = min_ventilation(N_oc, comfort);
  return b;
}

double temperature_penalty(const Trajectory& traj, const ExogenousSeries& exo,
                           const ComfortSpec& comfort) {
  if (traj.t.empty()) return 0.0;
  const std::size_t n = traj.applied_W.size();
  if (n == 0) return 0.0;
  if (!exo.covers(traj.t.front(), traj.t[n - 1]))
    throw std::domain_error("temperature_penalty: series does not cover the trajectory");

  std::vector<double> T(n), lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    T[i] = traj.states[i].T;
    const ComfortBounds b = comfort_bounds(exo.N_oc_at(traj.t[i]), comfort);
    lo[i] = b.T_lo;
    hi[i] = b.T_hi;
  }
  const double dt_hours = traj.dt() / kSecondsPerHour;
  return kernels::band_excess(T.data(), lo.data(), hi.data(), n) * dt_hours;
}

}  // namespace zonempc
