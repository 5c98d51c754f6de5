#pragma once

#include <optional>

#include "doxa/revision.hpp"
#include "doxa/simplex.hpp"
#include "doxa/structures.hpp"

namespace doxa {

// Linear encoding of "mu conditions to every player's type": one mass
// variable per state, one scale variable per (player, cell), equalities
// mu(w) = type(w) * scale, total mass 1, and an auxiliary variable tracking
// the minimum scale so strict positivity becomes an exact "> 0" test on the
// optimum.
struct FeasibilitySystem {
  LinearProgram lp;                     // maximize the min-target auxiliary
  int num_states = 0;
  int min_target_var = -1;              // index of the auxiliary variable
  std::vector<int> positivity_targets;  // scale variable indices
};

FeasibilitySystem standard_prior_system(const ProbabilisticBeliefStructure& pbs);
FeasibilitySystem delusional_prior_system(const ProbabilisticBeliefStructure& pbs);

struct FeasibilityOutcome {
  LpStatus status = LpStatus::Infeasible;
  Rational optimum = 0;                   // max-min scale, when Optimal
  std::vector<Rational> assignment;       // full variable assignment, when Optimal
  std::vector<Rational> certificate;      // verified Farkas multipliers, when Infeasible
};

// Exact solve; throws on unbounded systems (cannot happen for prior systems)
// and on certificate verification failure.
FeasibilityOutcome solve_feasibility(const FeasibilitySystem& sys);

struct PriorSearchResult {
  std::optional<Distribution> prior;  // Exists(mu) / None
  Rational optimum = 0;               // max-min cell mass reached by the solver
  std::vector<Rational> certificate;  // infeasibility multipliers when the system has no solution
};

// Common prior search. Exists certificates are re-verified against the
// revision predicates before being returned; None answers carry a checked
// separating certificate when the system is outright infeasible.
PriorSearchResult find_common_standard_prior(const ProbabilisticBeliefStructure& pbs);
PriorSearchResult find_common_delusional_prior(const ProbabilisticBeliefStructure& pbs);

}  // namespace doxa
