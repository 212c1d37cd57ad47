#include <stdexcept>

#include "doctest.h"
#include "zonempc/core.hpp"
#include "zonempc/rng.hpp"
#include "zonempc/scenario.hpp"

using namespace zonempc;

TEST_CASE("air_mass: hand-evaluated ideal gas values") {
  RoomParams p;
  p.V = 105.0;
  CHECK(air_mass(p, 21.0) == doctest::Approx(124.37).epsilon(1e-3));
  p.V = 540.0;
  CHECK(air_mass(p, 21.0) == doctest::Approx(639.6).epsilon(1e-3));
}

TEST_CASE("air_mass: rejects non-physical temperature") {
  RoomParams p;
  p.V = 105.0;
  CHECK_THROWS_AS(air_mass(p, -273.15), std::domain_error);
  CHECK_THROWS_AS(air_mass(p, -300.0), std::domain_error);
}

TEST_CASE("air_mass: strictly decreasing in T, strictly increasing in V") {
  Rng rng(3);
  RoomParams p;
  for (int i = 0; i < 100; ++i) {
    p.V = rng.uniform(20.0, 800.0);
    const double T = rng.uniform(-30.0, 40.0);
    const double dT = rng.uniform(0.01, 5.0);
    CHECK(air_mass(p, T + dT) < air_mass(p, T));
    RoomParams p2 = p;
    p2.V = p.V + rng.uniform(0.01, 50.0);
    CHECK(air_mass(p2, T) > air_mass(p, T));
  }
}

TEST_CASE("ControlSchedule: bound violations are rejected, not clamped") {
  const RoomParams p = builtin_scenario("tc1", DayType::Mild).params;
  ControlSchedule s;
  s.W = {1000.0, 6000.0};  // above W_max = 5 kW
  s.Q = {0.1, 0.1};
  CHECK_THROWS_AS(s.validate(p), std::invalid_argument);
  s.W = {1000.0, 1000.0};
  s.Q = {0.1, -0.01};
  CHECK_THROWS_AS(s.validate(p), std::invalid_argument);
  s.Q = {0.1, 0.55};
  CHECK_NOTHROW(s.validate(p));
  s.W.push_back(0.0);  // length mismatch
  CHECK_THROWS_AS(s.validate(p), std::invalid_argument);
}

TEST_CASE("ExogenousSeries: piecewise-constant left lookup") {
  ExogenousSeries exo;
  exo.t = {0.0, 3600.0, 7200.0};
  exo.T_out = {1.0, 2.0, 3.0};
  exo.N_oc = {0.0, 5.0, 0.0};
  exo.validate();
  CHECK(exo.T_out_at(0.0) == 1.0);
  CHECK(exo.T_out_at(3599.9) == 1.0);
  CHECK(exo.T_out_at(3600.0) == 2.0);
  CHECK(exo.N_oc_at(5400.0) == 5.0);
  CHECK(exo.T_out_at(10000.0) == 3.0);  // beyond the last point: last value
  CHECK(exo.covers(0.0, 7200.0));
  CHECK_FALSE(exo.covers(0.0, 7200.1));
  CHECK_THROWS_AS(exo.T_out_at(-1.0), std::invalid_argument);
}

TEST_CASE("ExogenousSeries: validation catches bad series") {
  ExogenousSeries exo;
  exo.t = {0.0, 0.0};
  exo.T_out = {1.0, 1.0};
  exo.N_oc = {0.0, 0.0};
  CHECK_THROWS_AS(exo.validate(), std::invalid_argument);
  exo.t = {0.0, 60.0};
  exo.N_oc = {0.0, -1.0};
  CHECK_THROWS_AS(exo.validate(), std::invalid_argument);
  exo.N_oc = {0.0};
  CHECK_THROWS_AS(exo.validate(), std::invalid_argument);
}

TEST_CASE("RoomParams and ComfortSpec invariants") {
  RoomParams p = builtin_scenario("tc1", DayType::Mild).params;
  CHECK_NOTHROW(p.validate());
  p.W_min = 10.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = builtin_scenario("tc2_svs", DayType::Mild).params;
  p.S_p = 0.0;  // ventilation present but no pipe section
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  ComfortSpec c;
  CHECK_NOTHROW(c.validate());
  c.T_lo_vacant = 21.5;  // tighter than the occupied band
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ComfortSpec{};
  c.nu_env = c.nu_max;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
