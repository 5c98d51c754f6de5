#pragma once

#include <optional>

#include "doxa/structures.hpp"

namespace doxa {

// Undefined (zero conditioning mass) is a value, not a fault.
using RevisionOutcome = std::optional<Distribution>;

// Condition mu on the partition cell of `state`; nullopt when the cell has
// zero mass.
RevisionOutcome standard_revision(const Distribution& mu, const Partition& pi, int state);

// Condition mu on the possibility set of `state` instead of the full cell.
RevisionOutcome delusional_revision(const Distribution& mu, const PossibilityFunction& b, int state);

// (1/mu(cell)) * sum_{w in cell} f(w) mu(w). Serves both the standard form
// (cell = partition cell) and the delusional form (cell = possibility set).
std::optional<Rational> conditional_expectation(const RandomVariable& f, const Distribution& mu,
                                                StateSet cell);

// sum over the player's cell of t(w)(w') f(w'); equals the sum over the
// possibility set since types vanish off their support.
Rational posterior_expectation(const ProbabilisticBeliefStructure& pbs, int player,
                               const RandomVariable& f, int state);

// mu revises to the player's type at every state (revision defined everywhere).
bool is_standard_prior(const Distribution& mu, const ProbabilisticBeliefStructure& pbs, int player);
bool is_delusional_prior(const Distribution& mu, const ProbabilisticBeliefStructure& pbs, int player);

bool is_common_standard_prior(const Distribution& mu, const ProbabilisticBeliefStructure& pbs);
bool is_common_delusional_prior(const Distribution& mu, const ProbabilisticBeliefStructure& pbs);

}  // namespace doxa
