#pragma once

#include <string>
#include <vector>

#include "doxa/rational.hpp"
#include "doxa/state_space.hpp"

namespace doxa {

// Exact probability distribution over a state space, stored densely in state
// order. Masses are >= 0 and sum to exactly 1.
struct Distribution {
  std::vector<Rational> mass;

  Rational mass_of(StateSet set) const;
  StateSet support() const;
  friend bool operator==(const Distribution& a, const Distribution& b) { return a.mass == b.mass; }
};

// Total map state -> payoff/value.
struct RandomVariable {
  std::vector<Rational> value;

  static RandomVariable zeros(int n) { return RandomVariable{std::vector<Rational>(static_cast<size_t>(n))}; }
  static RandomVariable indicator(StateSet set, int n);
  friend bool operator==(const RandomVariable& a, const RandomVariable& b) { return a.value == b.value; }
};

// One distribution per state: the player's beliefs there.
struct TypeFunction {
  std::vector<Distribution> at;
};

struct Partition {
  std::vector<StateSet> cells;     // disjoint, non-empty, covering; ordered by lowest member
  std::vector<int> cell_index;     // state -> position in cells

  StateSet cell_of(int state) const { return cells[cell_index[state]]; }
  int num_cells() const { return static_cast<int>(cells.size()); }
  friend bool operator==(const Partition& a, const Partition& b) { return a.cells == b.cells; }
};

// Builds and validates a partition from raw cells (any order; gets normalized).
Partition make_partition(const StateSpace& space, std::vector<StateSet> cells);

// KD45 possibility function together with the partition it is measurable
// against: b(w) is non-empty, contained in the partition cell of w, constant
// on that cell, and trapping (w' in b(w) implies b(w') = b(w)).
struct PossibilityFunction {
  Partition partition;
  std::vector<StateSet> belief;  // per state

  StateSet at(int state) const { return belief[state]; }
  friend bool operator==(const PossibilityFunction& a, const PossibilityFunction& b) {
    return a.partition == b.partition && a.belief == b.belief;
  }
};

PossibilityFunction make_possibility_function(const StateSpace& space, Partition partition,
                                              std::vector<StateSet> belief);

class BeliefStructure;

// Partitional type profile: every type puts probability 1 on its own induced
// partition cell. Induced partitions and possibility functions are cached at
// construction, all exact.
class ProbabilisticBeliefStructure {
 public:
  ProbabilisticBeliefStructure(StateSpace space, std::vector<std::string> players,
                               std::vector<TypeFunction> types);

  const StateSpace& space() const { return space_; }
  int num_players() const { return static_cast<int>(players_.size()); }
  const std::vector<std::string>& players() const { return players_; }
  const std::string& player_name(int i) const { return players_[i]; }
  int require_player(const std::string& name) const;

  const TypeFunction& type(int player) const { return types_[player]; }
  const Distribution& type_at(int player, int state) const { return types_[player].at[state]; }
  const Partition& partition(int player) const { return partitions_[player]; }
  const PossibilityFunction& possibility(int player) const { return beliefs_[player]; }
  StateSet belief_at(int player, int state) const { return beliefs_[player].belief[state]; }

  BeliefStructure induced() const;

 private:
  StateSpace space_;
  std::vector<std::string> players_;
  std::vector<TypeFunction> types_;
  std::vector<Partition> partitions_;
  std::vector<PossibilityFunction> beliefs_;
};

class BeliefStructure {
 public:
  BeliefStructure(StateSpace space, std::vector<std::string> players,
                  std::vector<PossibilityFunction> possibility);

  const StateSpace& space() const { return space_; }
  int num_players() const { return static_cast<int>(players_.size()); }
  const std::vector<std::string>& players() const { return players_; }
  const std::string& player_name(int i) const { return players_[i]; }

  const Partition& partition(int player) const { return possibility_[player].partition; }
  const PossibilityFunction& possibility(int player) const { return possibility_[player]; }
  StateSet belief_at(int player, int state) const { return possibility_[player].belief[state]; }

  friend bool operator==(const BeliefStructure& a, const BeliefStructure& b) {
    return a.space_ == b.space_ && a.players_ == b.players_ && a.possibility_ == b.possibility_;
  }

 private:
  StateSpace space_;
  std::vector<std::string> players_;
  std::vector<PossibilityFunction> possibility_;
};

struct DelusionReport {
  enum class StateClass { AllDeluded, AllNonDeluded, Mixed };

  std::vector<StateSet> deluded;     // per player: { w : w not in b_i(w) }
  std::vector<bool> delusional;      // per player: deluded set non-empty
  bool non_singular = false;         // every state all-deluded or all-non-deluded
  bool interpersonal_credibility = false;  // all players' beliefs intersect at every state
  std::vector<StateClass> state_class;     // per state
};

// --- operations ---------------------------------------------------------

// Groups states by exact equality of their type distributions.
Partition induce_partition(const StateSpace& space, const TypeFunction& type);

// b_i(w) = positive-probability states of t_i(w); always valid KD45 for a
// partitional profile.
BeliefStructure induce_belief_structure(const ProbabilisticBeliefStructure& pbs);

// Canonical realizing profile: uniform distribution on each belief cell.
ProbabilisticBeliefStructure realize_probabilistic(const BeliefStructure& bs);

DelusionReport classify(const BeliefStructure& bs);

// Belief operator: B_i E = { w : b_i(w) subseteq E }.
StateSet believes(const BeliefStructure& bs, int player, StateSet event);

// Non-throwing validation used by the CLI: returns human-readable problems,
// empty when the profile is a valid partitional structure.
std::vector<std::string> validate_type_profile(const StateSpace& space,
                                               const std::vector<TypeFunction>& types);

}  // namespace doxa
