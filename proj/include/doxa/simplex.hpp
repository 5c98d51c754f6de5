#pragma once

#include <vector>

#include "doxa/rational.hpp"

namespace doxa {

enum class Relation { Eq, Le, Ge };

struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::Eq;
  Rational rhs = 0;
};

// maximize objective . x  subject to the constraints and x >= 0.
struct LinearProgram {
  int num_vars = 0;
  std::vector<LinearConstraint> constraints;
  std::vector<Rational> objective;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational objective_value = 0;
  std::vector<Rational> solution;  // per original variable, on Optimal
  // On Infeasible: row multipliers y with y.A >= 0 on every column (original
  // and slack) yet y.b < 0, certifying that no nonnegative solution exists.
  std::vector<Rational> farkas;
};

// Exact two-phase simplex with Bland's rule; no tolerances anywhere.
LpResult solve_lp(const LinearProgram& lp);

// Checks the Farkas orientation above against the equality-form system.
bool verify_farkas(const LinearProgram& lp, const std::vector<Rational>& y);

}  // namespace doxa
