#include "zonempc/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "zonempc/errors.hpp"

namespace zonempc {

namespace {

constexpr double kPi = 3.14159265358979323846;

RoomParams tc1_params() {
  RoomParams p;
  p.U = 55.0;
  p.U_star = 200.0;
  p.mC_star = 107e6;
  p.V = 540.0;
  p.R_r = 0.1 / kSecondsPerHour;
  p.W_min = -15e3;
  p.W_max = 5e3;
  p.W_oc = 120.0;
  p.Q_max = 0.55;
  p.T_in = 21.0;
  p.S_p = 500e-4;  // 500 cm^2
  return p;
}

RoomParams tc2_params() {
  RoomParams p;
  p.U = 15.0;
  p.U_star = 200.0;
  p.mC_star = 20e6;
  p.V = 105.0;
  p.R_r = 0.2 / kSecondsPerHour;
  p.W_min = -2e3;
  p.W_max = 0.95e3;
  p.W_oc = 120.0;
  p.Q_max = 0.0;  // no ventilation system
  p.T_in = 21.0;
  p.S_p = 0.0;
  return p;
}

RoomParams tc2_svs_params() {
  RoomParams p = tc2_params();
  p.W_max = 1.1e3;
  p.Q_max = 0.05;
  p.T_in = 21.0;
  p.S_p = 120e-4;  // 120 cm^2
  return p;
}

double weather_at(DayType day, double hour) {
  double mean = 12.0, amp = 5.0;
  switch (day) {
    case DayType::Cold:
      mean = -18.0;
      amp = 4.0;
      break;
    case DayType::Mild:
      mean = 12.0;
      amp = 5.0;
      break;
    case DayType::Hot:
      mean = 27.0;
      amp = 5.0;
      break;
  }
  return mean + amp * std::cos(2.0 * kPi * (hour - 15.0) / 24.0);  // peak 15:00
}

double office_occupancy(double hour_of_day) {
  const double h = hour_of_day;
  if (h >= 9.0 && h < 12.0) return 25.0;  // lecture blocks
  if (h >= 14.0 && h < 17.0) return 25.0;
  if (h >= 8.0 && h < 19.0) return 5.0;
  return 0.0;
}

double home_occupancy(double hour_of_day) {
  const double h = hour_of_day;
  if (h < 8.0 || h >= 19.0) return 2.0;
  return 0.0;
}

}  // namespace

std::string Scenario::tag() const { return name + "/" + day_type_name(day_type); }

const char* day_type_name(DayType d) {
  switch (d) {
    case DayType::Cold:
      return "cold";
    case DayType::Mild:
      return "mild";
    case DayType::Hot:
      return "hot";
  }
  return "?";
}

DayType day_type_from_name(const std::string& name) {
  if (name == "cold") return DayType::Cold;
  if (name == "mild") return DayType::Mild;
  if (name == "hot") return DayType::Hot;
  throw DataError("unknown day type '" + name + "' (expected cold|mild|hot)");
}

ExogenousSeries default_exogenous(const std::string& scenario_name, DayType day_type,
                                  double span_hours) {
  const bool office = scenario_name == "tc1";
  ExogenousSeries exo;
  const int n = static_cast<int>(span_hours) + 1;
  for (int h = 0; h < n; ++h) {
    const double hour = static_cast<double>(h);
    exo.t.push_back(hour * kSecondsPerHour);
    exo.T_out.push_back(weather_at(day_type, hour));
    const double hod = std::fmod(hour, 24.0);
    exo.N_oc.push_back(office ? office_occupancy(hod) : home_occupancy(hod));
  }
  exo.validate();
  return exo;
}

Scenario builtin_scenario(const std::string& name, DayType day_type) {
  Scenario s;
  s.name = name;
  s.day_type = day_type;
  if (name == "tc1") {
    s.params = tc1_params();
  } else if (name == "tc2") {
    s.params = tc2_params();
  } else if (name == "tc2_svs") {
    s.params = tc2_svs_params();
  } else {
    throw DataError("unknown scenario '" + name + "' (expected tc1|tc2|tc2_svs)");
  }
  s.comfort = ComfortSpec{};
  s.exo = default_exogenous(name, day_type);
  s.initial = MicroclimateState{21.0, 21.0, s.comfort.nu_env};
  s.params.validate();
  s.comfort.validate();
  return s;
}

ExogenousSeries load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open series file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  auto strip = [](std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    return s;
  };
  if (strip(line) != "t_hours,T_out_C,N_oc")
    throw DataError(path + ": expected header 't_hours,T_out_C,N_oc'");

  ExogenousSeries exo;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = strip(line);
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    double vals[3];
    for (int k = 0; k < 3; ++k) {
      if (!std::getline(ss, field, ','))
        throw DataError(path + ": row " + std::to_string(row) + ": expected 3 fields");
      try {
        std::size_t pos = 0;
        vals[k] = std::stod(field, &pos);
        while (pos < field.size() && field[pos] == ' ') ++pos;
        if (pos != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw DataError(path + ": row " + std::to_string(row) + ": bad number '" +
                        field + "'");
      }
    }
    if (!exo.t.empty() && vals[0] * kSecondsPerHour <= exo.t.back())
      throw DataError(path + ": row " + std::to_string(row) +
                      ": t_hours must be strictly increasing");
    if (vals[2] < 0.0)
      throw DataError(path + ": row " + std::to_string(row) + ": negative occupancy");
    exo.t.push_back(vals[0] * kSecondsPerHour);
    exo.T_out.push_back(vals[1]);
    exo.N_oc.push_back(vals[2]);
  }
  if (exo.t.empty()) throw DataError(path + ": no data rows");
  exo.validate();
  return exo;
}

void save_series(const ExogenousSeries& exo, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write series file: " + path);
  out << "t_hours,T_out_C,N_oc\n";
  char buf[128];
  for (std::size_t i = 0; i < exo.t.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", exo.t[i] / kSecondsPerHour,
                  exo.T_out[i], exo.N_oc[i]);
    out << buf << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open scenario config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw DataError(path + ": invalid JSON: " + e.what());
  }

  try {
    Scenario s;
    const std::string base = j.value("base", std::string("tc1"));
    const std::string day = j.value("day_type", std::string("mild"));
    s = builtin_scenario(base, day_type_from_name(day));
    s.name = j.value("name", base);

    if (j.contains("params")) {
      const auto& p = j["params"];
      auto& rp = s.params;
      rp.U = p.value("U_W_per_K", rp.U);
      rp.U_star = p.value("U_star_W_per_K", rp.U_star);
      if (p.contains("mC_star_MJ_per_K")) rp.mC_star = p["mC_star_MJ_per_K"].get<double>() * 1e6;
      rp.V = p.value("V_m3", rp.V);
      if (p.contains("R_r_per_h")) rp.R_r = p["R_r_per_h"].get<double>() / kSecondsPerHour;
      rp.W_min = p.value("W_min_W", rp.W_min);
      rp.W_max = p.value("W_max_W", rp.W_max);
      rp.W_oc = p.value("W_oc_W", rp.W_oc);
      rp.Q_max = p.value("Q_max_kg_per_s", rp.Q_max);
      rp.T_in = p.value("T_in_C", rp.T_in);
      if (p.contains("S_p_cm2")) rp.S_p = p["S_p_cm2"].get<double>() * 1e-4;
    }
    if (j.contains("comfort")) {
      const auto& c = j["comfort"];
      auto& cs = s.comfort;
      cs.T_comf = c.value("T_comf_C", cs.T_comf);
      cs.band = c.value("band_K", cs.band);
      cs.T_lo_vacant = c.value("T_lo_vacant_C", cs.T_lo_vacant);
      cs.T_hi_vacant = c.value("T_hi_vacant_C", cs.T_hi_vacant);
      if (c.contains("nu_max_ppm")) cs.nu_max = ppm(c["nu_max_ppm"].get<double>());
      if (c.contains("nu_env_ppm")) cs.nu_env = ppm(c["nu_env_ppm"].get<double>());
      cs.Q_co2 = c.value("Q_co2_kg_per_s", cs.Q_co2);
    }
    if (j.contains("initial")) {
      const auto& i0 = j["initial"];
      s.initial.T = i0.value("T_C", s.initial.T);
      s.initial.T_star = i0.value("T_star_C", s.initial.T_star);
      if (i0.contains("co2_ppm")) s.initial.nu_co2 = ppm(i0["co2_ppm"].get<double>());
    }
    if (j.contains("series_csv")) {
      const auto csv = std::filesystem::path(path).parent_path() /
                       j["series_csv"].get<std::string>();
      s.exo = load_series(csv.string());
    }

    s.params.validate();
    s.comfort.validate();
    if (!s.exo.covers(0.0, 24.0 * kSecondsPerHour))
      throw DataError(path + ": exogenous series must span at least 24 h");
    return s;
  } catch (const DataError&) {
    throw;
  } catch (const std::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace zonempc
