#pragma once

// Shared worked examples: the one- and two-player three-state structures, the
// seven-state two-certainty-component structure with its S5 closing variant,
// and the nine-state trading scenario.

#include <doxa/betting.hpp>
#include <doxa/io.hpp>
#include <doxa/market.hpp>
#include <doxa/structures.hpp>

#include <string>
#include <vector>

namespace fixtures {

using namespace doxa;

inline Rational rat(const std::string& s) { return parse_rational(s); }

inline Distribution dist(const std::vector<std::string>& masses) {
  Distribution d;
  for (const auto& m : masses) d.mass.push_back(rat(m));
  return d;
}

inline TypeFunction rows(const std::vector<Distribution>& per_state) {
  TypeFunction t;
  t.at = per_state;
  return t;
}

// One player, three states; the type excludes the first state everywhere.
inline ProbabilisticBeliefStructure example1() {
  StateSpace space({"w1", "w2", "w3"});
  Distribution t = dist({"0", "1/2", "1/2"});
  return ProbabilisticBeliefStructure(space, {"p1"}, {rows({t, t, t})});
}

// Two players, three states; uniform against (0, 1/2, 1/2).
inline ProbabilisticBeliefStructure example2() {
  StateSpace space({"w1", "w2", "w3"});
  Distribution t1 = dist({"1/3", "1/3", "1/3"});
  Distribution t2 = dist({"0", "1/2", "1/2"});
  return ProbabilisticBeliefStructure(space, {"p1", "p2"},
                                      {rows({t1, t1, t1}), rows({t2, t2, t2})});
}

// Two players over {1..7}; states 3 and 4 are deluded for both, with the
// players certain of different components there.
inline ProbabilisticBeliefStructure example3() {
  StateSpace space({"1", "2", "3", "4", "5", "6", "7"});
  Distribution i1 = dist({"1", "0", "0", "0", "0", "0", "0"});
  Distribution i2 = dist({"0", "1", "0", "0", "0", "0", "0"});
  Distribution i345 = dist({"0", "0", "0", "0", "1", "0", "0"});
  Distribution i67 = dist({"0", "0", "0", "0", "0", "1/2", "1/2"});
  Distribution j1234 = dist({"1/2", "1/2", "0", "0", "0", "0", "0"});
  Distribution j567 = dist({"0", "0", "0", "0", "1/3", "1/3", "1/3"});
  return ProbabilisticBeliefStructure(
      space, {"i", "j"},
      {rows({i1, i2, i345, i345, i345, i67, i67}),
       rows({j1234, j1234, j1234, j1234, j567, j567, j567})});
}

// The S5 profile obtained from separate full-support priors on the same
// partitions: posteriors (1,1 | 1/8,3/8,1/2 | 1/2,1/2) and
// (1/3,1/3,1/6,1/6 | 1/3,1/3,1/3).
inline ProbabilisticBeliefStructure example3_closing() {
  StateSpace space({"1", "2", "3", "4", "5", "6", "7"});
  Distribution i1 = dist({"1", "0", "0", "0", "0", "0", "0"});
  Distribution i2 = dist({"0", "1", "0", "0", "0", "0", "0"});
  Distribution i345 = dist({"0", "0", "1/8", "3/8", "1/2", "0", "0"});
  Distribution i67 = dist({"0", "0", "0", "0", "0", "1/2", "1/2"});
  Distribution j1234 = dist({"1/3", "1/3", "1/6", "1/6", "0", "0", "0"});
  Distribution j567 = dist({"0", "0", "0", "0", "1/3", "1/3", "1/3"});
  return ProbabilisticBeliefStructure(
      space, {"i", "j"},
      {rows({i1, i2, i345, i345, i345, i67, i67}),
       rows({j1234, j1234, j1234, j1234, j567, j567, j567})});
}

// (1/4, 1/4, -6, 3, -1/8, 1/32, 1/32) for player i against its negation.
inline Bet example3_closing_bet(const ProbabilisticBeliefStructure& pbs) {
  std::vector<std::string> values = {"1/4", "1/4", "-6", "3", "-1/8", "1/32", "1/32"};
  RandomVariable fi, fj;
  for (const auto& v : values) {
    Rational q = rat(v);
    fi.value.push_back(q);
    fj.value.push_back(-q);
  }
  return make_bet(pbs, {fi, fj});
}

// Nine uniform states, partitions 1234|5678|9 and 123|456|789, event {4,9},
// threshold 3/10, true state 2. Distorted: the buyer's first signal reads as
// the second.
inline MarketConfig market_cascade(bool distorted) {
  StateSpace space({"1", "2", "3", "4", "5", "6", "7", "8", "9"});
  auto set = [&](std::initializer_list<int> names) {
    StateSet s;
    for (int v : names) s.add(v - 1);
    return s;
  };
  Distribution prior;
  for (int w = 0; w < 9; ++w) prior.mass.push_back(rat("1/9"));
  Partition anne = make_partition(space, {set({1, 2, 3, 4}), set({5, 6, 7, 8}), set({9})});
  Partition bob = make_partition(space, {set({1, 2, 3}), set({4, 5, 6}), set({7, 8, 9})});
  std::vector<std::vector<int>> distortion = {{0, 1, 2}, {0, 1, 2}};
  if (distorted) distortion[1][0] = 1;  // sigma_1 misread as sigma_2
  return make_market_config(space, {"anne", "bob"}, prior, {anne, bob}, distortion,
                            set({4, 9}), rat("3/10"), /*true_state=*/1, /*max_rounds=*/12);
}

// Two players disagreeing about the within-cell odds of the same full
// two-state cell; no common prior of either kind.
inline ProbabilisticBeliefStructure conflicting_ratio() {
  StateSpace space({"a", "b"});
  Distribution t1 = dist({"1/2", "1/2"});
  Distribution t2 = dist({"1/3", "2/3"});
  return ProbabilisticBeliefStructure(space, {"p1", "p2"}, {rows({t1, t1}), rows({t2, t2})});
}

}  // namespace fixtures
