#pragma once

#include <optional>

#include "doxa/reachability.hpp"
#include "doxa/revision.hpp"
#include "doxa/structures.hpp"

namespace doxa {

// Player-indexed payoffs summing to zero at every state.
struct Bet {
  std::vector<RandomVariable> payoff;  // one per player, over the full space
};

Bet make_bet(const ProbabilisticBeliefStructure& pbs, std::vector<RandomVariable> payoff);

struct BetExtensionStuck : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WeakCbtAbsent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-owning view of a type profile conditioned on a subset X: cells become
// cell-intersect-X, types get rescaled onto the surviving states. States
// whose cell carries no type mass inside X have no restricted type; callers
// must avoid them.
class RestrictedStructure {
 public:
  RestrictedStructure(const ProbabilisticBeliefStructure& base, StateSet domain);

  const ProbabilisticBeliefStructure& base() const { return *base_; }
  StateSet domain() const { return domain_; }

  StateSet cell(int player, int state) const;                        // Pi_i(w) intersect X
  std::optional<Distribution> type_at(int player, int state) const;  // nullopt when undefined
  std::optional<Rational> expectation(int player, const RandomVariable& f, int state) const;

  StateSet undefined_states() const;  // states of X with some player's type undefined
  bool is_s5() const;                 // every possibility set equals its restricted cell

 private:
  const ProbabilisticBeliefStructure* base_;
  StateSet domain_;
};

RestrictedStructure restrict_structure(const ProbabilisticBeliefStructure& pbs, StateSet domain);

// Standalone structure over the states of a closed subset (every player's
// type support stays inside). Used to run prior searches on cores.
ProbabilisticBeliefStructure subspace_structure(const ProbabilisticBeliefStructure& pbs,
                                                StateSet domain);

bool is_agreeable_at(const Bet& bet, const ProbabilisticBeliefStructure& pbs, int state);
bool is_common_knowledge_agreeable(const Bet& bet, const ProbabilisticBeliefStructure& pbs,
                                   int state);
bool is_common_belief_agreeable(const Bet& bet, const ProbabilisticBeliefStructure& pbs,
                                int state);

struct AgreeabilityReport {
  std::vector<std::vector<Rational>> expectation;  // [player][state]
  StateSet agreeable;                              // states where all players are strictly positive
  bool common_knowledge_at = false;
  bool common_belief_at = false;
};
AgreeabilityReport agreeability_report(const Bet& bet, const ProbabilisticBeliefStructure& pbs,
                                       int state);

// Max-min LP over an S5 restriction: maximize the minimal cell expectation
// subject to pointwise zero-sum and payoff bounds -1 <= f <= 1. Some bet iff
// the optimum is strictly positive, i.e. no common prior on the restriction.
std::optional<Bet> construct_ck_agreeable_bet(const RestrictedStructure& rs);

// Same LP shape over any closed set with the unrestricted types; this is the
// joint oracle for common-belief agreeable bets.
std::optional<Bet> construct_agreeable_bet_over(const ProbabilisticBeliefStructure& pbs,
                                                StateSet closed_set);

// One-state-at-a-time extension of an agreeable bet from X to a b-closed
// target. Forward states get the midpoint of the admissible negative
// interval, backward deluded states get the unit assignment, and every step
// re-verifies all defined restricted expectations from scratch. Throws
// BetExtensionStuck when no state of target minus X matches any case.
Bet extend_bet(const ProbabilisticBeliefStructure& pbs, const Bet& bet, StateSet from,
               StateSet target);

// Constructive pipeline: inspect the closed components of the common belief
// set of `state`; if any non-deluded component admits a common prior there is
// no bet (returns nullopt), otherwise glue per-component bets and extend
// across the full common belief set. Requires weak common belief in truth.
std::optional<Bet> find_cb_agreeable_bet(const ProbabilisticBeliefStructure& pbs, int state);

// Terminal strongly-connected components of the possibility graph restricted
// to `within`: the closed sets every belief chain eventually enters.
std::vector<StateSet> terminal_components(const ProbabilisticBeliefStructure& pbs, StateSet within);

}  // namespace doxa
