#pragma once

#include <optional>
#include <vector>

#include "doxa/structures.hpp"

namespace doxa {

// Union over m >= 1 of the m-step belief images of `origin`. The origin
// itself is a member only if some chain returns to it.
struct CommonBeliefSet {
  int origin;
  StateSet members;
};

// Cell of the meet (finest common coarsening) containing `origin`.
struct MeetComponent {
  int origin;
  StateSet members;
};

CommonBeliefSet common_belief_set(const BeliefStructure& bs, int state);
CommonBeliefSet common_belief_set(const ProbabilisticBeliefStructure& pbs, int state);

MeetComponent meet_component(const std::vector<Partition>& partitions, const StateSpace& space,
                             int state);

// Event semantics: common belief of E at w iff the common belief set of w is
// contained in E; common knowledge via the meet component.
bool common_belief_holds(const BeliefStructure& bs, StateSet event, int state);
bool common_knowledge_holds(const std::vector<Partition>& partitions, const StateSpace& space,
                            StateSet event, int state);

// Strong common belief in truth: every player's possibility cells, collected
// over the common belief set, cover it exactly.
bool strong_cbt(const BeliefStructure& bs, int state);
bool strong_cbt(const ProbabilisticBeliefStructure& pbs, int state);

struct WeakCbtResult {
  bool holds = false;
  std::optional<int> witness;  // lowest state of the common belief set with strong CBT
};
WeakCbtResult weak_cbt(const BeliefStructure& bs, int state);
WeakCbtResult weak_cbt(const ProbabilisticBeliefStructure& pbs, int state);

struct Prop1Report {
  bool strong_everywhere = false;
  bool non_singular = false;
  bool equivalent = false;                // the two sides agree
  std::optional<int> counterexample;      // state witnessing a one-sided failure
};
Prop1Report check_prop1(const BeliefStructure& bs);

}  // namespace doxa
