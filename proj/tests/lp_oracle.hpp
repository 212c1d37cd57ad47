#pragma once

// Test-only brute-force oracle for small linear programs: enumerates every
// candidate vertex (each choice of n active planes among equality rows,
// inequality rows, and bound planes), keeps the feasible ones, and reports
// the best objective. Independent of the simplex implementation it checks.

#include <cmath>
#include <limits>
#include <vector>

#include "zonempc/lp.hpp"
#include "zonempc/rng.hpp"

namespace zonempc::testing {

struct OracleResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
};

namespace detail {

// Gaussian elimination with partial pivoting; false if near-singular.
inline bool solve_square(std::vector<double> a, std::vector<double> b, int n,
                         std::vector<double>& x) {
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(a[i * n + k]) > std::fabs(a[piv * n + k])) piv = i;
    if (std::fabs(a[piv * n + k]) < 1e-9) return false;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }
  x.assign(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
    x[i] = s / a[i * n + i];
  }
  return true;
}

}  // namespace detail

// Requires all-finite bounds (the feasible set is a polytope, so feasibility
// is equivalent to some candidate vertex being feasible).
inline OracleResult vertex_oracle(const LinearProgram& p) {
  const int n = p.n;
  struct Plane {
    std::vector<double> a;
    double b;
  };
  std::vector<Plane> planes;

  // Row-reduce the equality system first: only independent rows are forced
  // into the active sets; dependent rows are either redundant or witness
  // infeasibility outright.
  {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < p.m_eq(); ++i) {
      std::vector<double> r(p.A_eq.begin() + static_cast<std::size_t>(i) * n,
                            p.A_eq.begin() + static_cast<std::size_t>(i + 1) * n);
      r.push_back(p.b_eq[i]);
      for (const auto& kept : rows) {
        int lead = -1;
        for (int j = 0; j < n; ++j)
          if (std::fabs(kept[j]) > 1e-9) {
            lead = j;
            break;
          }
        if (lead < 0) continue;
        const double f = r[lead] / kept[lead];
        if (f == 0.0) continue;
        for (int j = 0; j <= n; ++j) r[j] -= f * kept[j];
      }
      bool zero = true;
      for (int j = 0; j < n; ++j) zero &= std::fabs(r[j]) <= 1e-9;
      if (zero) {
        if (std::fabs(r[n]) > 1e-7) return {LpStatus::Infeasible, 0.0};
        continue;  // redundant equality
      }
      rows.push_back(r);
    }
    for (const auto& r : rows)
      planes.push_back({{r.begin(), r.begin() + n}, r[n]});
  }
  const int forced = static_cast<int>(planes.size());
  for (int i = 0; i < p.m_ub(); ++i) {
    planes.push_back({{p.A_ub.begin() + static_cast<std::size_t>(i) * n,
                       p.A_ub.begin() + static_cast<std::size_t>(i + 1) * n},
                      p.b_ub[i]});
  }
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    planes.push_back({e, p.lb[j]});
    planes.push_back({e, p.ub[j]});
  }

  const int total = static_cast<int>(planes.size());
  if (forced > n) return {LpStatus::Infeasible, 0.0};

  const double tol = 1e-7;
  auto feasible = [&](const std::vector<double>& x) {
    for (int j = 0; j < n; ++j)
      if (x[j] < p.lb[j] - tol || x[j] > p.ub[j] + tol) return false;
    for (int i = 0; i < p.m_eq(); ++i) {
      double s = -p.b_eq[i];
      for (int j = 0; j < n; ++j) s += p.A_eq[static_cast<std::size_t>(i) * n + j] * x[j];
      if (std::fabs(s) > tol) return false;
    }
    for (int i = 0; i < p.m_ub(); ++i) {
      double s = -p.b_ub[i];
      for (int j = 0; j < n; ++j) s += p.A_ub[static_cast<std::size_t>(i) * n + j] * x[j];
      if (s > tol) return false;
    }
    return true;
  };

  OracleResult res;
  double best = std::numeric_limits<double>::infinity();
  bool any = false;

  std::vector<int> pick(n);
  for (int i = 0; i < forced; ++i) pick[i] = i;

  std::vector<double> a(static_cast<std::size_t>(n) * n), b(n), x;
  // Enumerate size-n subsets whose first `forced` members are the equalities.
  auto evaluate = [&]() {
    for (int r = 0; r < n; ++r) {
      const Plane& pl = planes[pick[r]];
      for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(r) * n + j] = pl.a[j];
      b[r] = pl.b;
    }
    if (!detail::solve_square(a, b, n, x)) return;
    double big = 0.0;
    for (double v : x) big = std::max(big, std::fabs(v));
    if (big > 1e8) return;  // pathological near-singular vertex
    if (!feasible(x)) return;
    any = true;
    double obj = 0.0;
    for (int j = 0; j < n; ++j) obj += p.c[j] * x[j];
    best = std::min(best, obj);
  };

  const int free_slots = n - forced;
  std::vector<int> idx(free_slots);
  // Standard combination walk over the non-forced planes.
  auto run = [&]() {
    if (free_slots == 0) {
      evaluate();
      return;
    }
    for (int i = 0; i < free_slots; ++i) idx[i] = forced + i;
    while (true) {
      for (int i = 0; i < free_slots; ++i) pick[forced + i] = idx[i];
      evaluate();
      int i = free_slots - 1;
      while (i >= 0 && idx[i] == total - free_slots + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int k = i + 1; k < free_slots; ++k) idx[k] = idx[k - 1] + 1;
    }
  };
  if (total >= n) run();

  if (!any) return {LpStatus::Infeasible, 0.0};
  res.status = LpStatus::Optimal;
  res.objective = best;
  return res;
}

// Random boxed LP with small integer data: vertices are well conditioned and
// the status is always decidable by enumeration.
inline LinearProgram random_boxed_lp(Rng& rng) {
  LinearProgram p;
  p.n = 2 + static_cast<int>(rng.uniform01() * 5.0);  // 2..6
  const int m_ub = 1 + static_cast<int>(rng.uniform01() * 6.0);  // 1..6
  const int m_eq = rng.uniform01() < 0.3 ? 1 : 0;
  auto rint = [&](double lo, double hi) {
    return std::floor(rng.uniform(lo, hi + 1.0));
  };
  p.c.resize(p.n);
  for (auto& v : p.c) v = rint(-9, 9);
  bool nonzero = false;
  for (double v : p.c) nonzero |= v != 0.0;
  if (!nonzero) p.c[0] = 1.0;
  p.lb.resize(p.n);
  p.ub.resize(p.n);
  for (int j = 0; j < p.n; ++j) {
    p.lb[j] = rint(-10, 0);
    p.ub[j] = rint(0, 10);
  }
  for (int i = 0; i < m_ub; ++i) {
    for (int j = 0; j < p.n; ++j) p.A_ub.push_back(rint(-5, 5));
    p.b_ub.push_back(rint(-10, 10));
  }
  for (int i = 0; i < m_eq; ++i) {
    for (int j = 0; j < p.n; ++j) p.A_eq.push_back(rint(-3, 3));
    p.b_eq.push_back(rint(-6, 6));
  }
  return p;
}

}  // namespace zonempc::testing
