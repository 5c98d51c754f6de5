#include "doxa/reachability.hpp"

#include <numeric>

namespace doxa {

namespace {

template <typename Structure>
StateSet one_step(const Structure& s, StateSet from) {
  StateSet out;
  from.for_each([&](int w) {
    for (int i = 0; i < s.num_players(); ++i) out |= s.belief_at(i, w);
  });
  return out;
}

template <typename Structure>
StateSet belief_closure(const Structure& s, int state) {
  StateSet members = one_step(s, StateSet::single(state));
  for (;;) {
    StateSet next = members | one_step(s, members);
    if (next == members) return members;
    members = next;
  }
}

template <typename Structure>
bool strong_cbt_impl(const Structure& s, int state) {
  // Taking Omega_0 = the common belief set itself is without loss: any cell
  // covering part of it equals the cell of one of its own members (trapping),
  // so a covering family can always be re-indexed from inside.
  StateSet q = belief_closure(s, state);
  for (int i = 0; i < s.num_players(); ++i) {
    StateSet covered;
    q.for_each([&](int w) { covered |= s.belief_at(i, w); });
    if (!(covered == q)) return false;
  }
  return true;
}

template <typename Structure>
WeakCbtResult weak_cbt_impl(const Structure& s, int state) {
  StateSet q = belief_closure(s, state);
  WeakCbtResult result;
  q.for_each([&](int w) {
    if (!result.holds && strong_cbt_impl(s, w)) {
      result.holds = true;
      result.witness = w;
    }
  });
  return result;
}

}  // namespace

CommonBeliefSet common_belief_set(const BeliefStructure& bs, int state) {
  return CommonBeliefSet{state, belief_closure(bs, state)};
}

CommonBeliefSet common_belief_set(const ProbabilisticBeliefStructure& pbs, int state) {
  return CommonBeliefSet{state, belief_closure(pbs, state)};
}

namespace {

// Small union-find over state indices; cells of every player's partition get
// merged, leaving exactly the meet components.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

MeetComponent meet_component(const std::vector<Partition>& partitions, const StateSpace& space,
                             int state) {
  UnionFind uf(space.size());
  for (const Partition& pi : partitions) {
    for (const StateSet& cell : pi.cells) {
      int head = cell.first();
      cell.for_each([&](int w) { uf.merge(head, w); });
    }
  }
  int root = uf.find(state);
  StateSet members;
  for (int w = 0; w < space.size(); ++w) {
    if (uf.find(w) == root) members.add(w);
  }
  return MeetComponent{state, members};
}

bool common_belief_holds(const BeliefStructure& bs, StateSet event, int state) {
  return common_belief_set(bs, state).members.subset_of(event);
}

bool common_knowledge_holds(const std::vector<Partition>& partitions, const StateSpace& space,
                            StateSet event, int state) {
  return meet_component(partitions, space, state).members.subset_of(event);
}

bool strong_cbt(const BeliefStructure& bs, int state) { return strong_cbt_impl(bs, state); }
bool strong_cbt(const ProbabilisticBeliefStructure& pbs, int state) {
  return strong_cbt_impl(pbs, state);
}

WeakCbtResult weak_cbt(const BeliefStructure& bs, int state) { return weak_cbt_impl(bs, state); }
WeakCbtResult weak_cbt(const ProbabilisticBeliefStructure& pbs, int state) {
  return weak_cbt_impl(pbs, state);
}

Prop1Report check_prop1(const BeliefStructure& bs) {
  Prop1Report report;
  DelusionReport delusion = classify(bs);
  report.non_singular = delusion.non_singular;
  report.strong_everywhere = true;
  std::optional<int> failing;
  for (int w = 0; w < bs.space().size(); ++w) {
    if (!strong_cbt(bs, w)) {
      report.strong_everywhere = false;
      if (!failing) failing = w;
    }
  }
  report.equivalent = report.strong_everywhere == report.non_singular;
  if (!report.equivalent) {
    if (failing) {
      report.counterexample = failing;  // non-singular yet strong CBT fails here
    } else {
      for (int w = 0; w < bs.space().size(); ++w) {
        if (delusion.state_class[w] == DelusionReport::StateClass::Mixed) {
          report.counterexample = w;
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace doxa
