#include "simplex.hpp"

#include <stdexcept>

namespace cubex {

namespace {

// Tableau with an explicit cost row, updated through pivots.
struct Tableau {
  std::size_t m, cols;                    // constraint rows, structural columns
  std::vector<std::vector<Rational>> t;   // m rows of cols+1 (last = rhs)
  std::vector<Rational> cost;             // cols+1 reduced costs (last = -objective)
  std::vector<std::size_t> basis;         // column basic in each row

  void pivot(std::size_t row, std::size_t col) {
    Rational p = t[row][col];
    for (auto& v : t[row]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || t[i][col] == 0) continue;
      Rational f = t[i][col];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[row][j];
    }
    if (cost[col] != 0) {
      Rational f = cost[col];
      for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * t[row][j];
    }
    basis[row] = col;
  }

  // Bland's rule loop; returns false on unboundedness.
  bool run() {
    while (true) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j)
        if (cost[j] < 0) {
          enter = j;
          break;
        }
      if (enter == cols) return true;
      std::size_t leave = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][enter] <= 0) continue;
        Rational ratio = t[i][cols] / t[i][enter];
        if (leave == m || ratio < best ||
            (ratio == best && basis[i] < basis[leave]))
          leave = i, best = ratio;
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }

  // Recompute reduced costs for a fresh objective given the current basis.
  void load_cost(const std::vector<Rational>& c) {
    cost.assign(cols + 1, Rational(0));
    for (std::size_t j = 0; j < c.size(); ++j) cost[j] = c[j];
    for (std::size_t i = 0; i < m; ++i) {
      Rational cb = basis[i] < c.size() ? c[basis[i]] : Rational(0);
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols; ++j) cost[j] -= cb * t[i][j];
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  std::size_t m = lp.A.size(), n = lp.c.size();
  for (const auto& row : lp.A)
    if (row.size() != n) throw std::invalid_argument("solve_lp: ragged constraint matrix");
  if (lp.b.size() != m) throw std::invalid_argument("solve_lp: rhs size mismatch");

  Tableau tb;
  tb.m = m;
  tb.cols = n + m;  // structural + one artificial per row
  tb.t.assign(m, std::vector<Rational>(tb.cols + 1, Rational(0)));
  tb.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    bool flip = lp.b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) tb.t[i][j] = flip ? -lp.A[i][j] : lp.A[i][j];
    tb.t[i][tb.cols] = flip ? -lp.b[i] : lp.b[i];
    tb.t[i][n + i] = 1;
    tb.basis[i] = n + i;
  }

  // phase 1: minimize the artificial mass
  std::vector<Rational> phase1(tb.cols, Rational(0));
  for (std::size_t j = n; j < tb.cols; ++j) phase1[j] = 1;
  tb.load_cost(phase1);
  if (!tb.run()) throw std::logic_error("solve_lp: phase 1 unbounded");
  if (-tb.cost[tb.cols] != 0) return LpResult{LpStatus::infeasible, Rational(0), {}};

  // drive leftover artificials out of the basis (or drop redundant rows)
  for (std::size_t i = 0; i < tb.m;) {
    if (tb.basis[i] < n) {
      ++i;
      continue;
    }
    std::size_t piv = n;
    for (std::size_t j = 0; j < n; ++j)
      if (tb.t[i][j] != 0) {
        piv = j;
        break;
      }
    if (piv < n) {
      tb.pivot(i, piv);
      ++i;
    } else {
      // all-zero structural row: redundant constraint
      tb.t.erase(tb.t.begin() + i);
      tb.basis.erase(tb.basis.begin() + i);
      --tb.m;
    }
  }
  // forbid artificials from re-entering by deleting their columns
  for (auto& row : tb.t) row.erase(row.begin() + n, row.begin() + tb.cols);
  tb.cols = n;

  // phase 2
  tb.load_cost(lp.c);
  if (!tb.run()) return LpResult{LpStatus::unbounded, Rational(0), {}};

  LpResult res;
  res.status = LpStatus::optimal;
  res.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < tb.m; ++i) res.x[tb.basis[i]] = tb.t[i][tb.cols];
  res.objective = 0;
  for (std::size_t j = 0; j < n; ++j) res.objective += lp.c[j] * res.x[j];
  return res;
}

}  // namespace cubex
