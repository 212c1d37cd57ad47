#include "zonempc/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace zonempc {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void RoomParams::validate() const {
  require(V > 0.0, "RoomParams: V must be > 0");
  require(U > 0.0 && U_star > 0.0 && mC_star > 0.0,
          "RoomParams: U, U_star, mC_star must be > 0");
  require(R_r >= 0.0, "RoomParams: R_r must be >= 0");
  require(W_min <= 0.0 && W_max >= 0.0, "RoomParams: need W_min <= 0 <= W_max");
  require(Q_max >= 0.0, "RoomParams: Q_max must be >= 0");
  require(Q_max == 0.0 || S_p > 0.0,
          "RoomParams: S_p must be > 0 when a ventilation system is present");
  require(C_p > 0.0 && rho > 0.0 && P_atm > 0.0 && R_gas > 0.0,
          "RoomParams: physical constants must be > 0");
}

void ComfortSpec::validate() const {
  require(band > 0.0, "ComfortSpec: band must be > 0");
  require(T_lo_vacant <= T_comf - band,
          "ComfortSpec: vacant lower bound must not be tighter than occupied");
  require(T_comf + band <= T_hi_vacant,
          "ComfortSpec: vacant upper bound must not be tighter than occupied");
  require(nu_env < nu_max, "ComfortSpec: need nu_env < nu_max");
  require(nu_env >= 0.0 && Q_co2 >= 0.0, "ComfortSpec: CO2 parameters must be >= 0");
}

void ExogenousSeries::validate() const {
  require(t.size() == T_out.size() && t.size() == N_oc.size(),
          "ExogenousSeries: t, T_out, N_oc must have equal lengths");
  require(!t.empty(), "ExogenousSeries: empty series");
  for (std::size_t i = 1; i < t.size(); ++i) {
    require(t[i] > t[i - 1], "ExogenousSeries: timestamps must be strictly increasing");
  }
  for (double n : N_oc) require(n >= 0.0, "ExogenousSeries: occupancy must be >= 0");
}

bool ExogenousSeries::covers(double t0, double t1) const {
  return !t.empty() && t.front() <= t0 && t.back() >= t1;
}

std::size_t ExogenousSeries::index_at(double time) const {
  if (time < t.front())
    throw std::invalid_argument("ExogenousSeries: lookup before series start");
  auto it = std::upper_bound(t.begin(), t.end(), time);
  return static_cast<std::size_t>(it - t.begin()) - 1;
}

double ExogenousSeries::T_out_at(double time) const { return T_out[index_at(time)]; }

double ExogenousSeries::N_oc_at(double time) const { return N_oc[index_at(time)]; }

void ControlSchedule::validate(const RoomParams& params) const {
  require(step_duration > 0.0, "ControlSchedule: step_duration must be > 0");
  require(W.size() == Q.size(), "ControlSchedule: W and Q must have equal lengths");
  for (std::size_t i = 0; i < W.size(); ++i) {
    if (!(W[i] >= params.W_min && W[i] <= params.W_max))
      throw std::invalid_argument("ControlSchedule: W out of equipment bounds at step " +
                                  std::to_string(i));
    if (!(Q[i] >= 0.0 && Q[i] <= params.Q_max))
      throw std::invalid_argument("ControlSchedule: Q out of equipment bounds at step " +
                                  std::to_string(i));
  }
}

double air_mass(const RoomParams& params, double T) {
  if (!(T > -kCelsiusToKelvin))
    throw std::domain_error("air_mass: temperature at or below absolute zero");
  return params.P_atm * params.V / (params.R_gas * (T + kCelsiusToKelvin));
}

}  // namespace zonempc
