#include <stdexcept>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "zonempc/lp.hpp"
#include "zonempc/slp.hpp"

using namespace zonempc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// f = c'x subject to Ax <= b: SLP must reproduce solve_lp.
struct LinearToy : SlpEvaluator {
  std::vector<double> c;
  std::vector<double> A;  // m x n
  std::vector<double> b;
  int n_vars, m_cons;
  LinearToy(std::vector<double> c_, std::vector<double> A_, std::vector<double> b_)
      : c(std::move(c_)), A(std::move(A_)), b(std::move(b_)),
        n_vars(static_cast<int>(c.size())), m_cons(static_cast<int>(b.size())) {}
  int num_vars() const override { return n_vars; }
  int num_constraints() const override { return m_cons; }
  void eval(std::span<const double> x, SlpEvaluation& out) const override {
    out.f = 0.0;
    out.grad.assign(c.begin(), c.end());
    for (int j = 0; j < n_vars; ++j) out.f += c[j] * x[j];
    out.g.assign(m_cons, 0.0);
    out.jac = A;
    for (int i = 0; i < m_cons; ++i) {
      out.g[i] = -b[i];
      for (int j = 0; j < n_vars; ++j)
        out.g[i] += A[static_cast<std::size_t>(i) * n_vars + j] * x[j];
    }
  }
};

struct Quadratic1D : SlpEvaluator {
  int num_vars() const override { return 1; }
  int num_constraints() const override { return 0; }
  void eval(std::span<const double> x, SlpEvaluation& out) const override {
    out.f = (x[0] - 2.0) * (x[0] - 2.0);
    out.grad = {2.0 * (x[0] - 2.0)};
    out.g.clear();
    out.jac.clear();
  }
};

// min q (t - 5) + t over t in [0, 10], q in [0, 1]; optimum (t, q) = (0, 1).
struct BilinearToy : SlpEvaluator {
  int num_vars() const override { return 2; }
  int num_constraints() const override { return 0; }
  void eval(std::span<const double> x, SlpEvaluation& out) const override {
    const double t = x[0], q = x[1];
    out.f = q * (t - 5.0) + t;
    out.grad = {1.0 + q, t - 5.0};
    out.g.clear();
    out.jac.clear();
  }
};

struct WrongGradient : SlpEvaluator {
  int num_vars() const override { return 1; }
  int num_constraints() const override { return 0; }
  void eval(std::span<const double> x, SlpEvaluation& out) const override {
    out.f = x[0] * x[0];
    out.grad = {2.0 * x[0] + 1.0};  // deliberately off by one
    out.g.clear();
    out.jac.clear();
  }
};

// Smooth constrained problem whose optimum lies on the constraint face:
// min (x0-3)^2 + (x1+1)^2 s.t. x0 + x1 <= 1; optimum (2.5, -1.5), f = 0.5.
struct ConstrainedQuad : SlpEvaluator {
  int num_vars() const override { return 2; }
  int num_constraints() const override { return 1; }
  void eval(std::span<const double> x, SlpEvaluation& out) const override {
    out.f = (x[0] - 3.0) * (x[0] - 3.0) + (x[1] + 1.0) * (x[1] + 1.0);
    out.grad = {2.0 * (x[0] - 3.0), 2.0 * (x[1] + 1.0)};
    out.g = {x[0] + x[1] - 1.0};
    out.jac = {1.0, 1.0};
  }
};

}  // namespace

TEST_CASE("solve_slp: linear problems reduce to the LP solution") {
  LinearToy toy({-1.0, -2.0}, {1.0, 1.0}, {1.5});
  const std::vector<double> lb = {0.0, 0.0}, ub = {1.0, 1.0};

  LinearProgram lp;
  lp.n = 2;
  lp.c = toy.c;
  lp.A_ub = toy.A;
  lp.b_ub = toy.b;
  lp.lb = lb;
  lp.ub = ub;
  const LpSolution ref = solve_lp(lp);
  REQUIRE(ref.status == LpStatus::Optimal);

  const std::vector<double> x0 = {0.0, 0.0};
  const SlpResult got = solve_slp(toy, x0, lb, ub);
  REQUIRE(got.status == SlpStatus::Converged);
  CHECK(got.objective == doctest::Approx(ref.objective).epsilon(1e-9));
  CHECK(got.x[0] == doctest::Approx(ref.x[0]).epsilon(1e-9));
  CHECK(got.x[1] == doctest::Approx(ref.x[1]).epsilon(1e-9));
}

TEST_CASE("solve_slp: boundary optimum of a smooth objective") {
  Quadratic1D q;
  const std::vector<double> x0 = {0.2}, lb = {0.0}, ub = {1.0};
  const SlpResult r = solve_slp(q, x0, lb, ub);
  REQUIRE(r.status == SlpStatus::Converged);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("solve_slp: bilinear toy matches the grid-search oracle") {
  BilinearToy toy;
  const std::vector<double> lb = {0.0, 0.0}, ub = {10.0, 1.0};

  // 101 x 101 brute force.
  double best = kInf;
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const double t = 10.0 * i / 100.0, q = 1.0 * j / 100.0;
      best = std::min(best, q * (t - 5.0) + t);
    }
  }

  const std::vector<double> x0 = {7.0, 0.3};
  const SlpResult r = solve_slp(toy, x0, lb, ub);
  REQUIRE(r.status == SlpStatus::Converged);
  CHECK(std::fabs(r.objective - best) <= 1e-3);
  CHECK(r.x[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("solve_slp: restarting from the solution is a fixed point") {
  BilinearToy toy;
  const std::vector<double> lb = {0.0, 0.0}, ub = {10.0, 1.0};
  const SlpResult first = solve_slp(toy, std::vector<double>{7.0, 0.3}, lb, ub);
  const SlpResult second = solve_slp(toy, first.x, lb, ub);
  CHECK(std::fabs(second.objective - first.objective) <=
        1e-6 * (1.0 + std::fabs(first.objective)));
  CHECK(second.x[0] == first.x[0]);
  CHECK(second.x[1] == first.x[1]);
}

TEST_CASE("solve_slp: accepted merit values never increase") {
  ConstrainedQuad prob;
  const std::vector<double> lb = {-5.0, -5.0}, ub = {5.0, 5.0};
  const SlpResult r = solve_slp(prob, std::vector<double>{-4.0, 4.0}, lb, ub);
  REQUIRE(r.status == SlpStatus::Converged);
  CHECK(r.objective == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(r.x[0] == doctest::Approx(2.5).epsilon(1e-3));
  CHECK(r.x[1] == doctest::Approx(-1.5).epsilon(1e-3));
  int accepted = 0;
  for (const auto& rec : r.history) {
    if (rec.accepted) {
      ++accepted;
      CHECK(rec.merit_after <= rec.merit_before + 1e-12);
    }
  }
  CHECK(accepted > 0);
}

TEST_CASE("solve_slp: infeasible constraint set is reported") {
  // g1: x <= -1, g2: -x <= -1 (x >= 1): empty.
  LinearToy toy({1.0}, {1.0, -1.0}, {-1.0, -1.0});
  const std::vector<double> lb = {-10.0}, ub = {10.0};
  const SlpResult r = solve_slp(toy, std::vector<double>{0.0}, lb, ub);
  CHECK(r.status == SlpStatus::Infeasible);
}

TEST_CASE("solve_slp_multistart: more starts never hurt") {
  BilinearToy toy;
  const std::vector<double> lb = {0.0, 0.0}, ub = {10.0, 1.0};
  const SlpResult one = solve_slp_multistart(toy, {{10.0, 0.0}}, lb, ub);
  const SlpResult two = solve_slp_multistart(toy, {{10.0, 0.0}, {0.5, 0.9}}, lb, ub);
  const SlpResult three =
      solve_slp_multistart(toy, {{10.0, 0.0}, {0.5, 0.9}, {5.0, 0.5}}, lb, ub);
  CHECK(two.objective <= one.objective + 1e-12);
  CHECK(three.objective <= two.objective + 1e-12);
  CHECK_THROWS_AS(solve_slp_multistart(toy, {}, lb, ub), std::invalid_argument);
}

TEST_CASE("finite_diff_check: exact for quadratics, loud for wrong gradients") {
  Quadratic1D q;
  CHECK(finite_diff_check(q, std::vector<double>{0.37}, 1e-4) <= 1e-8);
  ConstrainedQuad cq;
  CHECK(finite_diff_check(cq, std::vector<double>{0.3, -0.2}, 1e-4) <= 1e-8);
  WrongGradient w;
  CHECK(finite_diff_check(w, std::vector<double>{0.5}, 1e-4) > 1e-2);
}
