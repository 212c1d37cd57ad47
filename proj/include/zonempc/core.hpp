#pragma once

#include <cstddef>
#include <vector>

// Shared domain types for the single-zone microclimate model. Everything is
// immutable after construction/validation and safe to share across runs.
//
// Units policy: SI throughout (seconds, watts, joules, kg, mass fraction).
// Temperatures are degree Celsius, which is safe because the model only uses
// differences and one affine conversion to kelvin inside air_mass(). The
// infiltration rate is stored in 1/s; scenario loaders convert from the 1/h
// convention of config files exactly once.
namespace zonempc {

constexpr double kCelsiusToKelvin = 273.15;
constexpr double kSecondsPerHour = 3600.0;

// Room air state: temperature, inertia-mass effective temperature, CO2 mass
// fraction (dimensionless; "ppm" means fraction * 1e6).
struct MicroclimateState {
  double T = 21.0;        // degC
  double T_star = 21.0;   // degC
  double nu_co2 = 400e-6; // mass fraction

  double co2_ppm() const { return nu_co2 * 1e6; }
};

constexpr double ppm(double parts_per_million) { return parts_per_million * 1e-6; }

// Physical and equipment constants for one zone (Table-style scenario input).
struct RoomParams {
  double U = 0.0;        // envelope heat transfer, W/K
  double U_star = 0.0;   // inertia-to-air heat transfer, W/K
  double mC_star = 0.0;  // inertia heat capacity m*C*, J/K
  double V = 0.0;        // room volume, m^3
  double R_r = 0.0;      // infiltration air-change rate, 1/s (converted from 1/h at load)
  double W_min = 0.0;    // max cooling power (<= 0), W
  double W_max = 0.0;    // max heating power (>= 0), W
  double W_oc = 0.0;     // heat per occupant, W
  double Q_max = 0.0;    // max ventilation mass flow, kg/s (0 = no ventilation system)
  double T_in = 21.0;    // ventilation inflow temperature, degC
  double S_p = 0.0;      // inflow pipe cross-section, m^2 (0 = undefined)

  double C_p = 1000.0;   // air specific heat, J/(kg K)
  double rho = 1.2;      // air density, kg/m^3
  double P_atm = 1e5;    // Pa
  double R_gas = 287.03; // J/(kg K)

  void validate() const;  // throws std::invalid_argument
};

// Comfort setpoints and CO2 policy.
struct ComfortSpec {
  double T_comf = 22.0;       // degC
  double band = 1.0;          // occupied half-width, K
  double T_lo_vacant = 15.0;  // degC
  double T_hi_vacant = 25.0;  // degC
  double nu_max = ppm(1000);  // CO2 comfort cap, mass fraction
  double nu_env = ppm(400);   // environmental CO2, mass fraction
  double Q_co2 = 1.2e-5;      // exhaled CO2 per person, kg/s

  void validate() const;
};

// Time-indexed outside temperature and occupancy forecast. Lookup between
// grid points is piecewise-constant from the left.
struct ExogenousSeries {
  std::vector<double> t;     // s, strictly increasing
  std::vector<double> T_out; // degC
  std::vector<double> N_oc;  // persons; integer in scenarios, real-valued internally

  void validate() const;
  bool covers(double t0, double t1) const;
  double T_out_at(double time) const;
  double N_oc_at(double time) const;

 private:
  std::size_t index_at(double time) const;
};

// Piecewise-constant control sequence: one (W, Q) pair per control step.
struct ControlSchedule {
  double step_duration = kSecondsPerHour;  // s
  std::vector<double> W;                   // heating(+)/cooling(-) power, W
  std::vector<double> Q;                   // ventilation mass flow, kg/s

  std::size_t steps() const { return W.size(); }
  double duration() const { return step_duration * static_cast<double>(W.size()); }
  // Bounds check against equipment limits; violations are rejected, never clamped.
  void validate(const RoomParams& params) const;
};

// Mass of room air from the ideal gas law, m = P V / (R T_abs).
double air_mass(const RoomParams& params, double T);

}  // namespace zonempc
