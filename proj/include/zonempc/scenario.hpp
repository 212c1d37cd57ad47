#pragma once

#include <string>

#include "zonempc/controllers.hpp"
#include "zonempc/core.hpp"

// Scenario presets and file loading. The built-in weather and occupancy
// profiles are synthetic stand-ins parameterized by (mean, amplitude, peak
// hour) and documented in the README; tests built on them check orderings
// and properties, not absolute energy numbers.
namespace zonempc {

struct Scenario {
  std::string name;      // e.g. "tc1"
  DayType day_type = DayType::Mild;
  RoomParams params;
  ComfortSpec comfort;
  ExogenousSeries exo;   // spans 50 h so sliding windows stay covered
  MicroclimateState initial;

  std::string tag() const;  // "tc1/cold"
};

const char* day_type_name(DayType d);
DayType day_type_from_name(const std::string& name);  // throws DataError

// Table-driven presets:
//   tc1     - large lecture room, full HVAC (heating, cooling, ventilation)
//   tc2     - small apartment, no ventilation system
//   tc2_svs - the same apartment with a supply ventilation system
// Day type selects the synthetic weather profile; occupancy follows the
// room type (office profile for tc1, home profile for tc2).
Scenario builtin_scenario(const std::string& name, DayType day_type);

// 24h-periodic synthetic profiles, hourly samples over [0, span_hours].
ExogenousSeries default_exogenous(const std::string& scenario_name, DayType day_type,
                                  double span_hours = 50.0);

// JSON scenario config; see README for the schema. Relative CSV paths are
// resolved against the config file's directory.
Scenario load_scenario(const std::string& path);

// CSV with header "t_hours,T_out_C,N_oc", hours from 0, strictly increasing.
ExogenousSeries load_series(const std::string& path);

// Inverse of load_series; values survive the text round-trip exactly.
void save_series(const ExogenousSeries& exo, const std::string& path);

}  // namespace zonempc
