#pragma once

#include <vector>

// Self-contained dense linear-programming solver used by the linearized MPC
// and as the subproblem engine of the SLP optimizer. Deterministic: identical
// input produces an identical pivot path and solution.
namespace zonempc {

// min c'x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  lb <= x <= ub.
// Matrices are row-major with n columns; +-infinity bounds are allowed.
struct LinearProgram {
  int n = 0;
  std::vector<double> c;
  std::vector<double> A_eq, b_eq;
  std::vector<double> A_ub, b_ub;
  std::vector<double> lb, ub;

  int m_eq() const { return static_cast<int>(b_eq.size()); }
  int m_ub() const { return static_cast<int>(b_ub.size()); }
  void validate() const;  // throws std::invalid_argument on dimension mismatch
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;        // primal point (when optimal)
  double objective = 0.0;
  // KKT multipliers at optimality: c + A_ub' dual_ub + A_eq' dual_eq - mu_lb
  // + mu_ub = 0 with dual_ub >= 0. Sized m_ub / m_eq when status == Optimal.
  std::vector<double> dual_ub, dual_eq;
  int iterations = 0;
};

// Two-phase primal simplex on a dense tableau. Upper bounds are handled by
// variable complementing, free variables by shift/split. Dantzig pricing
// with first-index tie-breaking; Bland's rule takes over after a fixed
// budget of consecutive degenerate pivots, so the solver always terminates.
LpSolution solve_lp(const LinearProgram& p);

}  // namespace zonempc
