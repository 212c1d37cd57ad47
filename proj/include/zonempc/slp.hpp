#pragma once

#include <span>
#include <vector>

// Nonlinear non-convex optimizer: sequential linear programming with a box
// trust region and an l1 exact-penalty merit function. Suited to problems
// whose nonlinearities are bilinear or mildly smooth, which is all the MPC
// problem contains; each subproblem is solved by the in-repo LP solver.
namespace zonempc {

// Problem evaluator: smooth objective f(x) and inequality constraints
// g(x) <= 0 with analytic first derivatives (verify with finite_diff_check).
struct SlpEvaluation {
  double f = 0.0;
  std::vector<double> grad;  // n
  std::vector<double> g;     // m
  std::vector<double> jac;   // m x n, row-major
};

class SlpEvaluator {
 public:
  virtual ~SlpEvaluator() = default;
  virtual int num_vars() const = 0;
  virtual int num_constraints() const = 0;
  virtual void eval(std::span<const double> x, SlpEvaluation& out) const = 0;
};

struct SlpOptions {
  int max_iterations = 200;
  double tol_opt = 1e-6;   // predicted decrease <= tol_opt * (1 + |f|)
  double tol_feas = 1e-6;  // per-constraint, scaled by max(1, |g_i(x0)|)
  double initial_radius_fraction = 0.10;  // of the variable range
  double radius_floor_fraction = 1e-8;
  double fallback_range = 100.0;  // stand-in range for unbounded variables
  double sigma0 = 10.0;           // initial l1 penalty weight
  double sigma_cap = 1e12;
};

enum class SlpStatus { Converged, IterationLimit, Infeasible };

struct SlpIterateRecord {
  double f = 0.0;
  double violation = 0.0;
  double sigma = 0.0;
  double merit_before = 0.0;
  double merit_after = 0.0;
  bool accepted = false;
};

struct SlpResult {
  SlpStatus status = SlpStatus::IterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  double violation = 0.0;  // max positive constraint value
  int iterations = 0;
  std::vector<SlpIterateRecord> history;
};

SlpResult solve_slp(const SlpEvaluator& problem, std::span<const double> x0,
                    std::span<const double> lb, std::span<const double> ub,
                    const SlpOptions& options = {});

// Runs solve_slp from each start and returns the best result: feasible ones
// beat infeasible ones, then lower objective wins; ties keep the earlier
// start, so adding starts never worsens the outcome.
SlpResult solve_slp_multistart(const SlpEvaluator& problem,
                               const std::vector<std::vector<double>>& starts,
                               std::span<const double> lb,
                               std::span<const double> ub,
                               const SlpOptions& options = {});

// Central finite differences against the evaluator's analytic derivatives;
// returns the worst relative error over the objective gradient and the
// constraint Jacobian. x must be interior to the bounds by at least h.
double finite_diff_check(const SlpEvaluator& problem, std::span<const double> x,
                         double h);

}  // namespace zonempc
