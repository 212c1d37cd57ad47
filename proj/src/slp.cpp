#include "zonempc/slp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zonempc/errors.hpp"
#include "zonempc/lp.hpp"

namespace zonempc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double positive_part(double v) { return v > 0.0 ? v : 0.0; }

double violation_sum(const std::vector<double>& g) {
  double s = 0.0;
  for (double v : g) s += positive_part(v);
  return s;
}

double violation_max(const std::vector<double>& g) {
  double s = 0.0;
  for (double v : g) s = std::max(s, v);
  return s;
}

}  // namespace

SlpResult solve_slp(const SlpEvaluator& problem, std::span<const double> x0,
                    std::span<const double> lb, std::span<const double> ub,
                    const SlpOptions& opt) {
  const int n = problem.num_vars();
  const int m = problem.num_constraints();
  if (static_cast<int>(x0.size()) != n || static_cast<int>(lb.size()) != n ||
      static_cast<int>(ub.size()) != n)
    throw std::invalid_argument("solve_slp: dimension mismatch");

  SlpResult res;
  res.x.assign(x0.begin(), x0.end());
  for (int i = 0; i < n; ++i) res.x[i] = std::clamp(res.x[i], lb[i], ub[i]);

  // Per-variable trust radius; unbounded directions use the fallback range.
  std::vector<double> range(n), radius(n), floor_radius(n);
  for (int i = 0; i < n; ++i) {
    const double r = (ub[i] - lb[i] < kInf) ? ub[i] - lb[i] : opt.fallback_range;
    range[i] = r > 0.0 ? r : 1.0;
    radius[i] = opt.initial_radius_fraction * range[i];
    floor_radius[i] = opt.radius_floor_fraction * range[i];
  }

  SlpEvaluation cur, cand;
  problem.eval(res.x, cur);

  std::vector<double> feas_scale(m);
  for (int i = 0; i < m; ++i) feas_scale[i] = std::max(1.0, std::fabs(cur.g[i]));
  auto feasible = [&](const std::vector<double>& g) {
    for (int i = 0; i < m; ++i)
      if (g[i] > opt.tol_feas * feas_scale[i]) return false;
    return true;
  };

  double sigma = opt.sigma0;
  std::vector<double> cand_x(n);

  // LP subproblem in scaled steps: variables dt_i = d_i / radius_i followed
  // by m elastic variables; rows are the linearized constraints J d - e <= -g.
  LinearProgram lp;
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    res.iterations = iter + 1;

    lp.n = n + m;
    lp.c.assign(n + m, 0.0);
    lp.lb.assign(n + m, 0.0);
    lp.ub.assign(n + m, kInf);
    for (int i = 0; i < n; ++i) {
      lp.c[i] = cur.grad[i] * radius[i];
      lp.lb[i] = std::max(-1.0, (lb[i] - res.x[i]) / radius[i]);
      lp.ub[i] = std::min(1.0, (ub[i] - res.x[i]) / radius[i]);
      if (lp.lb[i] > lp.ub[i]) lp.lb[i] = lp.ub[i];  // roundoff guard at bounds
    }
    for (int i = 0; i < m; ++i) lp.c[n + i] = sigma;
    lp.A_eq.clear();
    lp.b_eq.clear();
    lp.A_ub.assign(static_cast<std::size_t>(m) * (n + m), 0.0);
    lp.b_ub.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
      double* row = lp.A_ub.data() + static_cast<std::size_t>(i) * (n + m);
      for (int j = 0; j < n; ++j) row[j] = cur.jac[static_cast<std::size_t>(i) * n + j] * radius[j];
      row[n + i] = -1.0;
      lp.b_ub[i] = -cur.g[i];
    }

    const LpSolution sub = solve_lp(lp);
    if (sub.status != LpStatus::Optimal)
      throw SolverError("solve_slp: elastic subproblem not optimal");

    const double viol_now = violation_sum(cur.g);
    const double merit_now = cur.f + sigma * viol_now;
    double lin_obj = 0.0, elastic_sum = 0.0;
    for (int i = 0; i < n; ++i) lin_obj += cur.grad[i] * radius[i] * sub.x[i];
    for (int i = 0; i < m; ++i) elastic_sum += sub.x[n + i];
    const double predicted = sigma * viol_now - lin_obj - sigma * elastic_sum;

    // Multiplier estimate from the subproblem duals drives the penalty weight
    // (applied from the next iteration on).
    double dual_inf = 0.0;
    for (double v : sub.dual_ub) dual_inf = std::max(dual_inf, std::fabs(v));
    const double sigma_next =
        std::min(std::max(sigma, 1.5 * dual_inf), opt.sigma_cap);

    if (predicted <= opt.tol_opt * (1.0 + std::fabs(cur.f))) {
      if (feasible(cur.g)) {
        res.status = SlpStatus::Converged;
        break;
      }
      // Stationary but infeasible: raise the penalty and retry, declare
      // infeasibility once the weight is exhausted.
      if (sigma >= opt.sigma_cap) {
        res.status = SlpStatus::Infeasible;
        break;
      }
      sigma = std::min(sigma * 10.0, opt.sigma_cap);
      continue;
    }

    for (int i = 0; i < n; ++i) {
      cand_x[i] = std::clamp(res.x[i] + radius[i] * sub.x[i], lb[i], ub[i]);
    }
    problem.eval(cand_x, cand);
    const double merit_cand = cand.f + sigma * violation_sum(cand.g);
    const double actual = merit_now - merit_cand;
    const double ratio = actual / predicted;

    SlpIterateRecord rec;
    rec.f = cur.f;
    rec.violation = viol_now;
    rec.sigma = sigma;
    rec.merit_before = merit_now;
    rec.merit_after = merit_cand;
    rec.accepted = ratio >= 0.1;
    res.history.push_back(rec);

    if (rec.accepted) {
      res.x = cand_x;
      std::swap(cur, cand);
      if (ratio > 0.75) {
        for (int i = 0; i < n; ++i)
          radius[i] = std::min(radius[i] * 1.5, 10.0 * range[i]);
      }
    } else {
      bool all_at_floor = true;
      for (int i = 0; i < n; ++i) {
        radius[i] = std::max(radius[i] * 0.5, floor_radius[i]);
        if (radius[i] > floor_radius[i]) all_at_floor = false;
      }
      if (all_at_floor) {
        res.status = feasible(cur.g) ? SlpStatus::Converged : SlpStatus::Infeasible;
        break;
      }
    }
    sigma = sigma_next;
  }

  res.objective = cur.f;
  res.violation = violation_max(cur.g);
  return res;
}

SlpResult solve_slp_multistart(const SlpEvaluator& problem,
                               const std::vector<std::vector<double>>& starts,
                               std::span<const double> lb,
                               std::span<const double> ub,
                               const SlpOptions& options) {
  if (starts.empty()) throw std::invalid_argument("solve_slp_multistart: no starts");
  SlpResult best;
  bool have = false;
  for (const auto& s : starts) {
    SlpResult r = solve_slp(problem, s, lb, ub, options);
    const bool r_feas = r.status != SlpStatus::Infeasible;
    const bool b_feas = have && best.status != SlpStatus::Infeasible;
    if (!have || (r_feas && !b_feas) ||
        (r_feas == b_feas && r.objective < best.objective)) {
      best = std::move(r);
      have = true;
    }
  }
  return best;
}

double finite_diff_check(const SlpEvaluator& problem, std::span<const double> x,
                         double h) {
  const int n = problem.num_vars();
  const int m = problem.num_constraints();
  if (!(h > 0.0)) throw std::invalid_argument("finite_diff_check: h must be > 0");

  SlpEvaluation at_x, plus, minus;
  problem.eval(x, at_x);
  std::vector<double> xp(x.begin(), x.end());

  double worst = 0.0;
  // Relative against max(1, |value|): entries below unit scale are compared
  // absolutely so exact structural zeros are not swamped by roundoff.
  auto rel_err = [](double fd, double an) {
    const double scale = std::max({1.0, std::fabs(fd), std::fabs(an)});
    return std::fabs(fd - an) / scale;
  };
  for (int j = 0; j < n; ++j) {
    const double xj = xp[j];
    xp[j] = xj + h;
    problem.eval(xp, plus);
    xp[j] = xj - h;
    problem.eval(xp, minus);
    xp[j] = xj;

    const double fd_f = (plus.f - minus.f) / (2.0 * h);
    worst = std::max(worst, rel_err(fd_f, at_x.grad[j]));
    for (int i = 0; i < m; ++i) {
      const double fd_g = (plus.g[i] - minus.g[i]) / (2.0 * h);
      worst = std::max(worst, rel_err(fd_g, at_x.jac[static_cast<std::size_t>(i) * n + j]));
    }
  }
  return worst;
}

}  // namespace zonempc
