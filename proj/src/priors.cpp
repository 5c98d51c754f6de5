#include "doxa/priors.hpp"

#include <stdexcept>

namespace doxa {

namespace {

// cells(player, c) is the conditioning set for that player's c-th partition
// cell: the full cell for standard priors, the possibility set for
// delusional ones. Either way the representative's type carries the ratios.
FeasibilitySystem build_system(const ProbabilisticBeliefStructure& pbs, bool delusional) {
  const int n = pbs.space().size();
  FeasibilitySystem sys;
  sys.num_states = n;

  struct CellRef {
    int player;
    StateSet conditioning;
    const Distribution* type;
  };
  std::vector<CellRef> cells;
  for (int i = 0; i < pbs.num_players(); ++i) {
    for (const StateSet& cell : pbs.partition(i).cells) {
      int rep = cell.first();
      StateSet cond = delusional ? pbs.belief_at(i, rep) : cell;
      cells.push_back(CellRef{i, cond, &pbs.type_at(i, rep)});
    }
  }

  const int num_scales = static_cast<int>(cells.size());
  const int num_vars = n + num_scales + 1;
  sys.min_target_var = n + num_scales;
  sys.lp.num_vars = num_vars;
  sys.lp.objective.assign(num_vars, 0);
  sys.lp.objective[sys.min_target_var] = 1;

  for (int k = 0; k < num_scales; ++k) {
    const CellRef& ref = cells[k];
    int scale_var = n + k;
    sys.positivity_targets.push_back(scale_var);
    ref.conditioning.for_each([&](int w) {
      LinearConstraint eq;
      eq.coeffs.assign(num_vars, 0);
      eq.coeffs[w] = 1;
      eq.coeffs[scale_var] = -ref.type->mass[w];
      eq.rel = Relation::Eq;
      eq.rhs = 0;
      sys.lp.constraints.push_back(std::move(eq));
    });
    // Standard mode forces mu(w) = 0 on zero-type states of the cell via the
    // same equalities (type mass there is 0).
    LinearConstraint ge;
    ge.coeffs.assign(num_vars, 0);
    ge.coeffs[scale_var] = 1;
    ge.coeffs[sys.min_target_var] = -1;
    ge.rel = Relation::Ge;
    ge.rhs = 0;
    sys.lp.constraints.push_back(std::move(ge));
  }

  LinearConstraint total;
  total.coeffs.assign(num_vars, 0);
  for (int w = 0; w < n; ++w) total.coeffs[w] = 1;
  total.rel = Relation::Eq;
  total.rhs = 1;
  sys.lp.constraints.push_back(std::move(total));

  return sys;
}

}  // namespace

FeasibilitySystem standard_prior_system(const ProbabilisticBeliefStructure& pbs) {
  return build_system(pbs, /*delusional=*/false);
}

FeasibilitySystem delusional_prior_system(const ProbabilisticBeliefStructure& pbs) {
  return build_system(pbs, /*delusional=*/true);
}

FeasibilityOutcome solve_feasibility(const FeasibilitySystem& sys) {
  LpResult lp = solve_lp(sys.lp);
  FeasibilityOutcome out;
  out.status = lp.status;
  switch (lp.status) {
    case LpStatus::Unbounded:
      throw std::logic_error("prior feasibility system unbounded");
    case LpStatus::Infeasible:
      if (!verify_farkas(sys.lp, lp.farkas)) {
        throw std::logic_error("infeasibility certificate failed verification");
      }
      out.certificate = std::move(lp.farkas);
      return out;
    case LpStatus::Optimal:
      out.optimum = lp.objective_value;
      out.assignment = std::move(lp.solution);
      return out;
  }
  return out;
}

namespace {

PriorSearchResult find_prior(const ProbabilisticBeliefStructure& pbs, bool delusional) {
  FeasibilitySystem sys = delusional ? delusional_prior_system(pbs) : standard_prior_system(pbs);
  FeasibilityOutcome outcome = solve_feasibility(sys);
  PriorSearchResult result;
  if (outcome.status == LpStatus::Infeasible) {
    result.certificate = std::move(outcome.certificate);
    return result;
  }
  result.optimum = outcome.optimum;
  if (sign(outcome.optimum) <= 0) return result;  // no mu keeps every cell mass positive

  Distribution mu{std::vector<Rational>(outcome.assignment.begin(),
                                        outcome.assignment.begin() + sys.num_states)};
  bool ok = delusional ? is_common_delusional_prior(mu, pbs) : is_common_standard_prior(mu, pbs);
  if (!ok) throw std::logic_error("prior certificate failed round-trip verification");
  result.prior = std::move(mu);
  return result;
}

}  // namespace

PriorSearchResult find_common_standard_prior(const ProbabilisticBeliefStructure& pbs) {
  return find_prior(pbs, /*delusional=*/false);
}

PriorSearchResult find_common_delusional_prior(const ProbabilisticBeliefStructure& pbs) {
  return find_prior(pbs, /*delusional=*/true);
}

}  // namespace doxa
