#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "zonempc/comfort.hpp"
#include "zonempc/controllers.hpp"
#include "zonempc/dynamics.hpp"
#include "zonempc/mpc_problem.hpp"
#include "zonempc/rng.hpp"
#include "zonempc/scenario.hpp"
#include "zonempc/harness.hpp"

using namespace zonempc;

namespace {

Scenario free_float_scenario() {
  // Constant 20 degC outside, vacant all day, start inside the wide band:
  // doing nothing is feasible and optimal.
  Scenario sc = builtin_scenario("tc1", DayType::Mild);
  for (auto& T : sc.exo.T_out) T = 20.0;
  for (auto& N : sc.exo.N_oc) N = 0.0;
  sc.initial = {21.0, 21.0, sc.comfort.nu_env};
  return sc;
}

Scenario hold_edge_scenario() {
  // Constant 0 degC outside, vacant, start exactly at the vacant lower edge:
  // both planners must hold 15 degC, a near-linear regime.
  Scenario sc = builtin_scenario("tc1", DayType::Mild);
  for (auto& T : sc.exo.T_out) T = 0.0;
  for (auto& N : sc.exo.N_oc) N = 0.0;
  sc.initial = {15.0, 15.0, sc.comfort.nu_env};
  return sc;
}

}  // namespace

TEST_CASE("mpc_plan: free-floating day needs no energy") {
  const Scenario sc = free_float_scenario();
  const ControlSchedule plan =
      mpc_plan(sc.initial, sc.exo, sc.params, sc.comfort, 24);
  const EnergyBreakdown e = energy_objective(plan, sc.exo, sc.params);
  CHECK(e.total <= 100.0);  // 0.1 kWh
  plan.validate(sc.params);
}

TEST_CASE("mpc_plan: zero horizon is rejected") {
  const Scenario sc = free_float_scenario();
  CHECK_THROWS_AS(mpc_plan(sc.initial, sc.exo, sc.params, sc.comfort, 0),
                  std::domain_error);
}

TEST_CASE("mpc_plan vs lmpc_plan: near-linear regime agrees within 5 percent") {
  const Scenario sc = hold_edge_scenario();
  const ControlSchedule mpc = mpc_plan(sc.initial, sc.exo, sc.params, sc.comfort, 12);
  const ControlSchedule lmpc = lmpc_plan(sc.initial, sc.exo, sc.params, sc.comfort, 12);
  const double e_mpc = energy_objective(mpc, sc.exo, sc.params).total;
  const double e_lmpc = energy_objective(lmpc, sc.exo, sc.params).total;
  CHECK(e_mpc > 0.0);
  CHECK(std::fabs(e_mpc - e_lmpc) <= 0.05 * std::max(e_mpc, e_lmpc));
}

TEST_CASE("lmpc_plan: ventilation is pinned to the CO2 minimum") {
  const Scenario sc = builtin_scenario("tc1", DayType::Cold);
  const ControlSchedule plan =
      lmpc_plan(sc.initial, sc.exo, sc.params, sc.comfort, 24);
  for (int j = 0; j < 24; ++j) {
    const double N = sc.exo.N_oc_at(j * kSecondsPerHour);
    CHECK(plan.Q[j] == std::min(min_ventilation(N, sc.comfort), sc.params.Q_max));
  }
  plan.validate(sc.params);
}

TEST_CASE("open-loop cold day: LMPC model error shows up as comfort penalty") {
  const Scenario sc = builtin_scenario("tc1", DayType::Cold);
  const ControlSchedule mpc = mpc_plan(sc.initial, sc.exo, sc.params, sc.comfort, 24);
  const ControlSchedule lmpc = lmpc_plan(sc.initial, sc.exo, sc.params, sc.comfort, 24);
  const Trajectory t_mpc = simulate(sc.initial, mpc, sc.exo, sc.params, sc.comfort);
  const Trajectory t_lmpc = simulate(sc.initial, lmpc, sc.exo, sc.params, sc.comfort);
  const double p_mpc = temperature_penalty(t_mpc, sc.exo, sc.comfort);
  const double p_lmpc = temperature_penalty(t_lmpc, sc.exo, sc.comfort);
  CHECK(p_mpc <= 0.1);
  CHECK(p_lmpc > p_mpc);
}

TEST_CASE("MpcProblem: analytic derivatives agree with central differences") {
  const Scenario sc = builtin_scenario("tc1", DayType::Cold);
  MpcProblem problem(sc.initial, 0.0, sc.exo, sc.params, sc.comfort, 6);
  Rng rng(31);
  const auto& lb = problem.lower_bounds();
  const auto& ub = problem.upper_bounds();
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<double> x(problem.num_vars());
    for (int i = 0; i < problem.num_vars(); ++i) {
      const double hi = std::isfinite(ub[i]) ? ub[i] : 10.0;
      x[i] = rng.uniform(lb[i] + 0.01 * (hi - lb[i]), lb[i] + 0.99 * (hi - lb[i]));
    }
    CHECK(finite_diff_check(problem, x, 1e-4) <= 1e-4);
  }
}

TEST_CASE("onoff_decide: dead center of the band does nothing") {
  const Scenario sc = builtin_scenario("tc2", DayType::Mild);
  const MicroclimateState s{22.0, 22.0, ppm(400)};
  const OnOffDecision d =
      onoff_decide(s, 2.0, sc.day_type, sc.params, sc.comfort, OnOffMode{});
  CHECK(d.W == 0.0);
  CHECK(d.Q == 0.0);
  CHECK_FALSE(d.mode.heat_on);
  CHECK_FALSE(d.mode.cool_on);
  CHECK_FALSE(d.mode.vent_on);
}

TEST_CASE("onoff_decide: quantized proportional heating regime") {
  const Scenario sc = builtin_scenario("tc2", DayType::Cold);  // W_max = 950 W
  const MicroclimateState s{20.5, 21.0, ppm(500)};
  const OnOffDecision d =
      onoff_decide(s, 1.0, sc.day_type, sc.params, sc.comfort, OnOffMode{});
  CHECK(d.mode.heat_on);
  CHECK(d.W == doctest::Approx(475.0));  // regime 5 of 950 W
  // Deep violation saturates at regime 10.
  const MicroclimateState cold{19.0, 21.0, ppm(500)};
  CHECK(onoff_decide(cold, 1.0, sc.day_type, sc.params, sc.comfort, OnOffMode{}).W ==
        doctest::Approx(950.0));
}

TEST_CASE("onoff_decide: heating releases at the comfort setpoint") {
  const Scenario sc = builtin_scenario("tc2", DayType::Cold);
  OnOffMode mode;
  mode.heat_on = true;
  // Inside the band but below T_comf: stays engaged at the trickle regime.
  const MicroclimateState warm{21.5, 21.0, ppm(500)};
  OnOffDecision d = onoff_decide(warm, 1.0, sc.day_type, sc.params, sc.comfort, mode);
  CHECK(d.mode.heat_on);
  CHECK(d.W == doctest::Approx(95.0));  // regime 1
  // At T_comf it lets go.
  const MicroclimateState done{22.0, 21.0, ppm(500)};
  d = onoff_decide(done, 1.0, sc.day_type, sc.params, sc.comfort, mode);
  CHECK_FALSE(d.mode.heat_on);
  CHECK(d.W == 0.0);
}

TEST_CASE("onoff_decide: CO2 deadband hysteresis") {
  const Scenario sc = builtin_scenario("tc2_svs", DayType::Mild);
  const MicroclimateState high{22.0, 22.0, ppm(960)};
  OnOffDecision d =
      onoff_decide(high, 2.0, sc.day_type, sc.params, sc.comfort, OnOffMode{});
  CHECK(d.mode.vent_on);
  CHECK(d.Q == doctest::Approx(0.05));
  // Mid-deadband holds the previous state, both ways.
  const MicroclimateState mid{22.0, 22.0, ppm(900)};
  d = onoff_decide(mid, 2.0, sc.day_type, sc.params, sc.comfort, d.mode);
  CHECK(d.mode.vent_on);
  CHECK(d.Q == doctest::Approx(0.05));
  OnOffMode off_mode;
  d = onoff_decide(mid, 2.0, sc.day_type, sc.params, sc.comfort, off_mode);
  CHECK_FALSE(d.mode.vent_on);
  // Below the lower edge it switches off.
  const MicroclimateState low{22.0, 22.0, ppm(840)};
  OnOffMode on_mode;
  on_mode.vent_on = true;
  d = onoff_decide(low, 2.0, sc.day_type, sc.params, sc.comfort, on_mode);
  CHECK_FALSE(d.mode.vent_on);
  CHECK(d.Q == 0.0);
}

TEST_CASE("onoff_decide: vacancy rule switches W off on hot and mild days") {
  const MicroclimateState cold_room{14.0, 18.0, ppm(500)};
  for (auto day : {DayType::Mild, DayType::Hot}) {
    const Scenario sc = builtin_scenario("tc2", day);
    const OnOffDecision d =
        onoff_decide(cold_room, 0.0, day, sc.params, sc.comfort, OnOffMode{});
    CHECK(d.W == 0.0);
    CHECK_FALSE(d.mode.heat_on);
  }
  // Cold days keep heating available when vacant.
  const Scenario sc = builtin_scenario("tc2", DayType::Cold);
  const OnOffDecision d =
      onoff_decide(cold_room, 0.0, DayType::Cold, sc.params, sc.comfort, OnOffMode{});
  CHECK(d.W > 0.0);
}

TEST_CASE("onoff_decide: deterministic state machine") {
  const Scenario sc = builtin_scenario("tc2_svs", DayType::Mild);
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    MicroclimateState s{rng.uniform(12.0, 30.0), rng.uniform(12.0, 30.0),
                        ppm(rng.uniform(350.0, 1500.0))};
    OnOffMode mode{rng.uniform01() < 0.5, false, rng.uniform01() < 0.5};
    const double N = rng.uniform01() < 0.5 ? 0.0 : 2.0;
    const OnOffDecision a = onoff_decide(s, N, sc.day_type, sc.params, sc.comfort, mode);
    const OnOffDecision b = onoff_decide(s, N, sc.day_type, sc.params, sc.comfort, mode);
    CHECK(a.W == b.W);
    CHECK(a.Q == b.Q);
    CHECK(a.mode.heat_on == b.mode.heat_on);
    CHECK(a.mode.cool_on == b.mode.cool_on);
    CHECK(a.mode.vent_on == b.mode.vent_on);
  }
}

TEST_CASE("planner objective dominance: MPC beats LMPC plans and on/off runs") {
  // The planner's own objective (energy plus slack-weighted comfort penalty)
  // evaluated under the true plant; MPC optimizes over a superset of what
  // the others can do, up to solver tolerance.
  for (auto day : {DayType::Cold, DayType::Mild}) {
    const Scenario sc = builtin_scenario("tc1", day);
    auto objective_of = [&](const ControlSchedule& s, const Trajectory& traj) {
      return energy_objective(s, sc.exo, sc.params).total +
             kSlackWeightWhPerKh * temperature_penalty(traj, sc.exo, sc.comfort);
    };
    const ControlSchedule mpc = mpc_plan(sc.initial, sc.exo, sc.params, sc.comfort, 24);
    const ControlSchedule lmpc = lmpc_plan(sc.initial, sc.exo, sc.params, sc.comfort, 24);
    const double f_mpc =
        objective_of(mpc, simulate(sc.initial, mpc, sc.exo, sc.params, sc.comfort));
    const double f_lmpc =
        objective_of(lmpc, simulate(sc.initial, lmpc, sc.exo, sc.params, sc.comfort));

    RollingOptions opt;
    const RunResult onoff = rolling_run(sc, ControllerKind::OnOff, opt);
    const double f_onoff =
        onoff.energy.total + kSlackWeightWhPerKh * onoff.penalty_Kh;

    CHECK(f_mpc <= 1.01 * f_lmpc);
    CHECK(f_mpc <= 1.01 * f_onoff);
  }
}
