#pragma once

#include <vector>

#include "rational.hpp"

namespace cubex {

// Minimize c.x subject to A x = b, x >= 0, everything exact rational.
struct LinearProgram {
  std::vector<std::vector<Rational>> A;  // m rows of n coefficients
  std::vector<Rational> b;               // m
  std::vector<Rational> c;               // n
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational objective;
  std::vector<Rational> x;  // basic optimal solution (a vertex), deterministic
};

// Two-phase primal simplex with Bland's rule (smallest-index entering column,
// smallest ratio then smallest basis index leaving), which terminates without
// cycling and makes the returned vertex deterministic.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace cubex
