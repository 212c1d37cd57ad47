#include "zonempc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zonempc/errors.hpp"
#include "zonempc/kernels.hpp"

namespace zonempc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kDegenerateStep = 1e-11;
constexpr int kDegenerateBudget = 100;
constexpr int kMaxPivots = 100000;

enum class VarKind { Fixed, Shifted, Mirrored, Split };

struct VarMap {
  VarKind kind;
  double base = 0.0;  // x = base + sign * xhat (+ second split column)
  int col = -1;       // primary internal column
  int col_neg = -1;   // second column for Split
};

// Internal standard form: min c'xt, T xt = rhs, 0 <= xt <= up, where every
// nonbasic variable sits at 0 (upper-bounded variables are complemented on
// the fly).
struct Standardized {
  int n_struct = 0;
  int n_cols = 0;  // struct + slack + artificial
  int m = 0;
  std::vector<double> tab;   // m x (n_cols + 1), RHS last
  std::vector<double> cost;  // phase-2 costs per column (mutated on flips)
  std::vector<double> up;    // upper bounds per column (inf allowed)
  std::vector<int> basis;    // basic column per row
  std::vector<char> flipped;
  std::vector<char> artificial;
  std::vector<int> slack_col;  // per ub row, -1 if none
  std::vector<int> art_col;    // per row, -1 if none
  std::vector<double> row_sign;  // +1, or -1 if the row was negated
  std::vector<VarMap> vmap;
  double binf = 0.0;  // max |rhs| before pivoting, for tolerances
};

double& at(Standardized& s, int row, int col) {
  return s.tab[static_cast<std::size_t>(row) * (s.n_cols + 1) + col];
}

double at(const Standardized& s, int row, int col) {
  return s.tab[static_cast<std::size_t>(row) * (s.n_cols + 1) + col];
}

Standardized standardize(const LinearProgram& p) {
  Standardized s;
  const int m = p.m_eq() + p.m_ub();
  s.m = m;
  s.vmap.resize(p.n);

  // Variable transform: every internal column has lower bound 0.
  int col = 0;
  for (int j = 0; j < p.n; ++j) {
    const double lo = p.lb[j];
    const double hi = p.ub[j];
    VarMap& vm = s.vmap[j];
    if (lo == hi) {
      vm = {VarKind::Fixed, lo, -1, -1};
    } else if (lo > -kInf) {
      vm = {VarKind::Shifted, lo, col++, -1};
    } else if (hi < kInf) {
      vm = {VarKind::Mirrored, hi, col++, -1};
    } else {
      vm = {VarKind::Split, 0.0, col, col + 1};
      col += 2;
    }
  }
  s.n_struct = col;

  // Row scan to size slack/artificial blocks.
  std::vector<double> dense_row(s.n_struct);
  std::vector<double> rows;   // m x n_struct
  std::vector<double> rhs(m);
  rows.resize(static_cast<std::size_t>(m) * s.n_struct, 0.0);
  s.row_sign.assign(m, 1.0);
  s.slack_col.assign(m, -1);
  s.art_col.assign(m, -1);

  auto emit_row = [&](int row, const double* a, double b) {
    double bb = b;
    std::fill(dense_row.begin(), dense_row.end(), 0.0);
    for (int j = 0; j < p.n; ++j) {
      const VarMap& vm = s.vmap[j];
      const double aj = a[j];
      if (aj == 0.0) continue;
      bb -= aj * vm.base;
      switch (vm.kind) {
        case VarKind::Fixed:
          break;
        case VarKind::Shifted:
          dense_row[vm.col] += aj;
          break;
        case VarKind::Mirrored:
          dense_row[vm.col] -= aj;
          break;
        case VarKind::Split:
          dense_row[vm.col] += aj;
          dense_row[vm.col_neg] -= aj;
          break;
      }
    }
    if (bb < 0.0) {
      for (double& v : dense_row) v = -v;
      bb = -bb;
      s.row_sign[row] = -1.0;
    }
    std::copy(dense_row.begin(), dense_row.end(),
              rows.begin() + static_cast<std::size_t>(row) * s.n_struct);
    rhs[row] = bb;
  };

  for (int i = 0; i < p.m_eq(); ++i)
    emit_row(i, p.A_eq.data() + static_cast<std::size_t>(i) * p.n, p.b_eq[i]);
  for (int i = 0; i < p.m_ub(); ++i)
    emit_row(p.m_eq() + i, p.A_ub.data() + static_cast<std::size_t>(i) * p.n,
             p.b_ub[i]);

  // Slack per inequality row; artificial where the slack cannot start basic.
  int n_slack = p.m_ub();
  int n_art = 0;
  for (int i = 0; i < m; ++i) {
    const bool is_ub = i >= p.m_eq();
    if (!is_ub || s.row_sign[i] < 0.0) ++n_art;
  }
  s.n_cols = s.n_struct + n_slack + n_art;
  s.tab.assign(static_cast<std::size_t>(m) * (s.n_cols + 1), 0.0);
  s.cost.assign(s.n_cols, 0.0);
  s.up.assign(s.n_cols, kInf);
  s.flipped.assign(s.n_cols, 0);
  s.artificial.assign(s.n_cols, 0);
  s.basis.assign(m, -1);

  for (int j = 0; j < p.n; ++j) {
    const VarMap& vm = s.vmap[j];
    if (vm.kind == VarKind::Shifted) s.up[vm.col] = p.ub[j] - p.lb[j];
    switch (vm.kind) {
      case VarKind::Fixed:
        break;
      case VarKind::Shifted:
        s.cost[vm.col] = p.c[j];
        break;
      case VarKind::Mirrored:
        s.cost[vm.col] = -p.c[j];
        break;
      case VarKind::Split:
        s.cost[vm.col] = p.c[j];
        s.cost[vm.col_neg] = -p.c[j];
        break;
    }
  }

  int next_slack = s.n_struct;
  int next_art = s.n_struct + n_slack;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < s.n_struct; ++j)
      at(s, i, j) = rows[static_cast<std::size_t>(i) * s.n_struct + j];
    at(s, i, s.n_cols) = rhs[i];
    s.binf = std::max(s.binf, std::fabs(rhs[i]));
    const bool is_ub = i >= p.m_eq();
    if (is_ub) {
      s.slack_col[i] = next_slack;
      at(s, i, next_slack) = s.row_sign[i] < 0.0 ? -1.0 : 1.0;
      ++next_slack;
    }
    if (!is_ub || s.row_sign[i] < 0.0) {
      s.art_col[i] = next_art;
      at(s, i, next_art) = 1.0;
      s.artificial[next_art] = 1;
      s.basis[i] = next_art;
      ++next_art;
    } else {
      s.basis[i] = s.slack_col[i];
    }
  }
  return s;
}

struct PivotEngine {
  Standardized& s;
  std::vector<double> obj;      // reduced-cost row, n_cols entries
  std::vector<double> scratch;  // masked copy for pricing
  std::vector<char> barred;
  bool bland = false;
  int degenerate_run = 0;
  int pivots = 0;
  double opt_tol = 1e-9;

  explicit PivotEngine(Standardized& std_form)
      : s(std_form), obj(std_form.n_cols, 0.0), scratch(std_form.n_cols, 0.0),
        barred(std_form.n_cols, 0) {}

  void rebuild_objective(const std::vector<double>& cost) {
    std::copy(cost.begin(), cost.end(), obj.begin());
    for (int i = 0; i < s.m; ++i) {
      const double cb = cost[s.basis[i]];
      if (cb != 0.0)
        kernels::axpy(-cb, &at(s, i, 0), obj.data(), s.n_cols);
    }
    double cinf = 0.0;
    for (double v : cost) cinf = std::max(cinf, std::fabs(v));
    opt_tol = 1e-9 * std::max(1.0, cinf);
  }

  // Flips nonbasic column j to its complement (x -> up - x).
  void complement(int j) {
    const double u = s.up[j];
    for (int i = 0; i < s.m; ++i) {
      double& a = at(s, i, j);
      if (a != 0.0) {
        at(s, i, s.n_cols) -= a * u;
        a = -a;
      }
    }
    obj[j] = -obj[j];
    s.cost[j] = -s.cost[j];
    s.flipped[j] ^= 1;
  }

  int price() {
    if (bland) {
      for (int j = 0; j < s.n_cols; ++j) {
        if (barred[j]) continue;
        if (obj[j] < -opt_tol) {
          bool is_basic = false;
          for (int i = 0; i < s.m; ++i)
            if (s.basis[i] == j) {
              is_basic = true;
              break;
            }
          if (!is_basic) return j;
        }
      }
      return -1;
    }
    // Dantzig: most negative reduced cost, first index on ties. Basic and
    // barred columns are masked out.
    std::copy(obj.begin(), obj.end(), scratch.begin());
    for (int j = 0; j < s.n_cols; ++j)
      if (barred[j]) scratch[j] = kInf;
    for (int i = 0; i < s.m; ++i) scratch[s.basis[i]] = kInf;
    const std::size_t j = kernels::argmin(scratch.data(), scratch.size());
    return scratch[j] < -opt_tol ? static_cast<int>(j) : -1;
  }

  // Returns false when no eligible entering column remains (phase optimal),
  // throws on unboundedness in phase 2 via the caller-provided flag.
  enum class StepResult { Pivoted, Optimal, Unbounded };

  StepResult step() {
    const int j = price();
    if (j < 0) return StepResult::Optimal;

    // Ratio test. Initialize with the entering variable's own bound flip.
    double best_t = s.up[j];
    int best_row = -1;
    bool leave_at_upper = false;
    for (int i = 0; i < s.m; ++i) {
      const double a = at(s, i, j);
      if (a > kPivotTol) {
        const double t = at(s, i, s.n_cols) / a;
        if (t < best_t) {
          best_t = t;
          best_row = i;
          leave_at_upper = false;
        }
      } else if (a < -kPivotTol) {
        const double u = s.up[s.basis[i]];
        if (u < kInf) {
          const double t = (u - at(s, i, s.n_cols)) / (-a);
          if (t < best_t) {
            best_t = t;
            best_row = i;
            leave_at_upper = true;
          }
        }
      }
    }
    if (best_row < 0 && best_t == kInf) return StepResult::Unbounded;

    ++pivots;
    if (best_t <= kDegenerateStep) {
      if (++degenerate_run > kDegenerateBudget) bland = true;
    } else {
      degenerate_run = 0;
    }

    if (best_row < 0) {
      complement(j);  // pure bound flip, basis unchanged
      return StepResult::Pivoted;
    }

    const int leaving = s.basis[best_row];
    pivot(best_row, j);
    if (leave_at_upper) complement(leaving);
    return StepResult::Pivoted;
  }

  void pivot(int row, int col) {
    const int w = s.n_cols + 1;
    double* prow = &at(s, row, 0);
    const double inv = 1.0 / prow[col];
    kernels::scale(prow, inv, w);
    prow[col] = 1.0;  // exact
    for (int i = 0; i < s.m; ++i) {
      if (i == row) continue;
      double* r = &at(s, i, 0);
      const double f = r[col];
      if (f != 0.0) {
        kernels::axpy(-f, prow, r, w);
        r[col] = 0.0;  // exact
      }
    }
    const double fo = obj[col];
    if (fo != 0.0) {
      kernels::axpy(-fo, prow, obj.data(), s.n_cols);
      obj[col] = 0.0;
    }
    s.basis[row] = col;
  }

  StepResult run() {
    while (pivots < kMaxPivots) {
      const StepResult r = step();
      if (r != StepResult::Pivoted) return r;
    }
    throw SolverError("solve_lp: pivot limit exceeded");
  }
};

}  // namespace

void LinearProgram::validate() const {
  auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
  if (n <= 0) fail("LinearProgram: n must be >= 1");
  if (static_cast<int>(c.size()) != n) fail("LinearProgram: c size mismatch");
  if (static_cast<int>(lb.size()) != n || static_cast<int>(ub.size()) != n)
    fail("LinearProgram: bound size mismatch");
  if (A_eq.size() != b_eq.size() * static_cast<std::size_t>(n))
    fail("LinearProgram: A_eq size mismatch");
  if (A_ub.size() != b_ub.size() * static_cast<std::size_t>(n))
    fail("LinearProgram: A_ub size mismatch");
  for (int j = 0; j < n; ++j) {
    if (std::isnan(lb[j]) || std::isnan(ub[j]) || lb[j] > ub[j])
      fail("LinearProgram: need lb <= ub componentwise");
  }
}

LpSolution solve_lp(const LinearProgram& p) {
  p.validate();
  Standardized s = standardize(p);
  PivotEngine engine(s);

  LpSolution sol;

  // Phase 1: minimize the artificial sum when any row lacks a basic slack.
  bool have_artificials = false;
  for (char a : s.artificial)
    if (a) {
      have_artificials = true;
      break;
    }
  if (have_artificials) {
    std::vector<double> phase1_cost(s.n_cols, 0.0);
    for (int j = 0; j < s.n_cols; ++j)
      if (s.artificial[j]) phase1_cost[j] = 1.0;
    engine.rebuild_objective(phase1_cost);
    const auto r = engine.run();
    if (r == PivotEngine::StepResult::Unbounded)
      throw SolverError("solve_lp: phase 1 unbounded (numerical failure)");
    double art_sum = 0.0;
    for (int i = 0; i < s.m; ++i)
      if (s.artificial[s.basis[i]]) art_sum += at(s, i, s.n_cols);
    if (art_sum > 1e-8 * (1.0 + s.binf)) {
      sol.status = LpStatus::Infeasible;
      sol.iterations = engine.pivots;
      return sol;
    }
    // Drive leftover artificials out of the basis where possible; rows that
    // stay artificial-basic are redundant and remain inert.
    for (int i = 0; i < s.m; ++i) {
      if (!s.artificial[s.basis[i]]) continue;
      for (int j = 0; j < s.n_cols; ++j) {
        if (s.artificial[j]) continue;
        if (std::fabs(at(s, i, j)) > kPivotTol) {
          engine.pivot(i, j);
          break;
        }
      }
    }
    for (int j = 0; j < s.n_cols; ++j)
      if (s.artificial[j]) engine.barred[j] = 1;
  }

  // Phase 2 on the real costs.
  engine.bland = false;
  engine.degenerate_run = 0;
  engine.rebuild_objective(s.cost);
  const auto r = engine.run();
  sol.iterations = engine.pivots;
  if (r == PivotEngine::StepResult::Unbounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  // Recover the internal point, then the original variables.
  std::vector<double> xt(s.n_cols, 0.0);
  for (int j = 0; j < s.n_cols; ++j)
    if (s.flipped[j]) xt[j] = s.up[j];
  for (int i = 0; i < s.m; ++i) {
    const int j = s.basis[i];
    const double v = at(s, i, s.n_cols);
    xt[j] = s.flipped[j] ? s.up[j] - v : v;
  }

  sol.x.assign(p.n, 0.0);
  for (int j = 0; j < p.n; ++j) {
    const VarMap& vm = s.vmap[j];
    double v = vm.base;
    switch (vm.kind) {
      case VarKind::Fixed:
        break;
      case VarKind::Shifted:
        v += xt[vm.col];
        break;
      case VarKind::Mirrored:
        v -= xt[vm.col];
        break;
      case VarKind::Split:
        v += xt[vm.col] - xt[vm.col_neg];
        break;
    }
    sol.x[j] = std::clamp(v, p.lb[j], p.ub[j]);
  }
  sol.objective = kernels::dot(p.c.data(), sol.x.data(), p.n);

  // Multipliers: y_i = c_B B^-1 e_i read off the slack/artificial columns of
  // the reduced-cost row. The flip sign restores the pre-complement column,
  // the row sign undoes row negation, and KKT multipliers are -y.
  sol.dual_eq.assign(p.m_eq(), 0.0);
  sol.dual_ub.assign(p.m_ub(), 0.0);
  for (int i = 0; i < s.m; ++i) {
    double y;
    if (s.slack_col[i] >= 0) {
      const int sc = s.slack_col[i];
      const double sign = (s.row_sign[i] < 0.0 ? -1.0 : 1.0) *
                          (s.flipped[sc] ? -1.0 : 1.0);
      y = -engine.obj[sc] * sign;  // d_slack = -y * coef
    } else {
      y = -engine.obj[s.art_col[i]];
    }
    const double y_orig = s.row_sign[i] * y;
    if (i < p.m_eq())
      sol.dual_eq[i] = -y_orig;
    else
      sol.dual_ub[i - p.m_eq()] = -y_orig;
  }

  sol.status = LpStatus::Optimal;
  return sol;
}

}  // namespace zonempc
