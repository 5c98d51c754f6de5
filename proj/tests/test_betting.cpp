#include <doctest.h>

#include <doxa/betting.hpp>
#include <doxa/harness.hpp>
#include <doxa/priors.hpp>

#include "fixtures.hpp"

using namespace doxa;
using fixtures::dist;
using fixtures::rat;
using fixtures::rows;

namespace {

StateSet set_of(std::initializer_list<int> states) {
  StateSet s;
  for (int w : states) s.add(w);
  return s;
}

Bet indicator_bet(const ProbabilisticBeliefStructure& pbs, StateSet h, const std::string& stake) {
  RandomVariable f = RandomVariable::indicator(h, pbs.space().size());
  for (auto& v : f.value) v -= rat(stake);
  RandomVariable g;
  for (const auto& v : f.value) g.value.push_back(-v);
  return make_bet(pbs, {f, g});
}

}  // namespace

TEST_CASE("bets must balance pointwise") {
  auto pbs = fixtures::example2();
  RandomVariable f{{rat("1"), rat("0"), rat("0")}};
  CHECK_THROWS_AS(make_bet(pbs, {f, f}), ValidationError);
  CHECK_THROWS_AS(make_bet(pbs, {f}), ValidationError);
}

TEST_CASE("agreeability of the indicator bet on the counterexample") {
  auto pbs = fixtures::example2();
  Bet bet = indicator_bet(pbs, set_of({0, 1}), "7/12");
  for (int w = 0; w < 3; ++w) {
    CHECK(posterior_expectation(pbs, 0, bet.payoff[0], w) == rat("1/12"));
    CHECK(posterior_expectation(pbs, 1, bet.payoff[1], w) == rat("1/12"));
    CHECK(is_agreeable_at(bet, pbs, w));
    CHECK(is_common_belief_agreeable(bet, pbs, w));
  }
  Bet zero = make_bet(pbs, {RandomVariable::zeros(3), RandomVariable::zeros(3)});
  CHECK_FALSE(is_agreeable_at(zero, pbs, 0));
  CHECK_FALSE(is_common_knowledge_agreeable(zero, pbs, 0));
  CHECK_FALSE(is_common_belief_agreeable(zero, pbs, 0));
}

TEST_CASE("the closing bet of the seven-state story") {
  auto pbs = fixtures::example3_closing();
  Bet bet = fixtures::example3_closing_bet(pbs);

  CHECK(posterior_expectation(pbs, 0, bet.payoff[0], 0) == rat("1/4"));
  CHECK(posterior_expectation(pbs, 0, bet.payoff[0], 1) == rat("1/4"));
  CHECK(posterior_expectation(pbs, 0, bet.payoff[0], 2) == rat("5/16"));
  CHECK(posterior_expectation(pbs, 0, bet.payoff[0], 5) == rat("1/32"));
  CHECK(posterior_expectation(pbs, 1, bet.payoff[1], 0) == rat("1/3"));
  CHECK(posterior_expectation(pbs, 1, bet.payoff[1], 4) == rat("1/48"));

  for (int w = 0; w < 7; ++w) {
    CHECK(is_agreeable_at(bet, pbs, w));
    CHECK(is_common_knowledge_agreeable(bet, pbs, w));
  }

  AgreeabilityReport report = agreeability_report(bet, pbs, 0);
  CHECK(report.agreeable == pbs.space().all());
  CHECK(report.common_knowledge_at);
  CHECK(report.common_belief_at);

  // Dropping one state from agreeability kills the universal quantifier.
  Bet broken = bet;
  broken.payoff[0].value[6] = rat("-1");
  broken.payoff[1].value[6] = rat("1");
  CHECK_FALSE(is_common_knowledge_agreeable(broken, pbs, 0));
}

TEST_CASE("restriction scales types onto the surviving states") {
  auto pbs = fixtures::example3();
  SUBCASE("restriction to the whole space is the identity") {
    RestrictedStructure rs(pbs, pbs.space().all());
    for (int i = 0; i < 2; ++i) {
      for (int w = 0; w < 7; ++w) {
        CHECK(rs.cell(i, w) == pbs.partition(i).cell_of(w));
        CHECK(*rs.type_at(i, w) == pbs.type_at(i, w));
      }
    }
    CHECK(rs.undefined_states().empty());
  }
  SUBCASE("restriction to the first core") {
    RestrictedStructure rs(pbs, set_of({0, 1}));
    auto tj = rs.type_at(1, 0);
    REQUIRE(tj.has_value());
    CHECK(tj->mass[0] == rat("1/2"));
    CHECK(tj->mass[1] == rat("1/2"));
    CHECK(*rs.type_at(0, 0) == dist({"1", "0", "0", "0", "0", "0", "0"}));
    CHECK(rs.is_s5());
  }
  SUBCASE("restriction to the common belief set of a deluded state is S5") {
    StateSet q = common_belief_set(pbs, 2).members;
    CHECK(q == set_of({0, 1, 4, 5, 6}));
    RestrictedStructure rs(pbs, q);
    CHECK(rs.is_s5());
    CHECK(rs.undefined_states().empty());
  }
  SUBCASE("cells with no mass inside the restriction are flagged") {
    // Strip out state 5: player i's type at states 3..5 lives on {5} only.
    StateSet x = set_of({0, 1, 2, 3, 5, 6});
    RestrictedStructure rs(pbs, x);
    CHECK_FALSE(rs.type_at(0, 2).has_value());
    CHECK(rs.undefined_states() == set_of({2, 3}));
  }
}

TEST_CASE("bet construction on S5 restrictions") {
  SUBCASE("conflicting ratios admit a bet agreeable everywhere") {
    auto pbs = fixtures::conflicting_ratio();
    auto bet = construct_ck_agreeable_bet(RestrictedStructure(pbs, pbs.space().all()));
    REQUIRE(bet.has_value());
    for (int w = 0; w < 2; ++w) CHECK(is_agreeable_at(*bet, pbs, w));
    CHECK(is_common_knowledge_agreeable(*bet, pbs, 0));
  }
  SUBCASE("a consistent core admits none") {
    auto pbs = fixtures::example3();
    CHECK_FALSE(construct_ck_agreeable_bet(RestrictedStructure(pbs, set_of({0, 1}))).has_value());
    CHECK_FALSE(
        construct_ck_agreeable_bet(RestrictedStructure(pbs, set_of({4, 5, 6}))).has_value());
  }
  SUBCASE("single players can never bet") {
    auto pbs = fixtures::example1();
    StateSet core = set_of({1, 2});
    CHECK_FALSE(construct_ck_agreeable_bet(RestrictedStructure(pbs, core)).has_value());
  }
  SUBCASE("non-S5 restrictions are rejected") {
    auto pbs = fixtures::example3();
    CHECK_THROWS_AS(construct_ck_agreeable_bet(RestrictedStructure(pbs, pbs.space().all())),
                    ValidationError);
  }
}

TEST_CASE("terminal components of the belief graph") {
  auto pbs = fixtures::example3();
  auto comps = terminal_components(pbs, pbs.space().all());
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == set_of({0, 1}));
  CHECK(comps[1] == set_of({4, 5, 6}));
  auto within = terminal_components(pbs, common_belief_set(pbs, 2).members);
  REQUIRE(within.size() == 2);
}

namespace {

// Two players over {x1, x2, x3}: a conflicting core {x1, x2} plus a state
// that is deluded for the second player and self-certain for the first.
ProbabilisticBeliefStructure backward_deluded_instance() {
  StateSpace space({"x1", "x2", "x3"});
  Distribution core1 = dist({"1/3", "2/3", "0"});
  Distribution self = dist({"0", "0", "1"});
  Distribution core2 = dist({"1/2", "1/2", "0"});
  return ProbabilisticBeliefStructure(
      space, {"p1", "p2"},
      {rows({core1, core1, self}), rows({core2, core2, core2})});
}

}  // namespace

TEST_CASE("extension across a backward deluded state") {
  auto pbs = backward_deluded_instance();
  StateSet core = set_of({0, 1});
  auto core_bet = construct_ck_agreeable_bet(RestrictedStructure(pbs, core));
  REQUIRE(core_bet.has_value());

  StateSet target = pbs.space().all();  // closed: b1(x3)={x3}, b2(x3)={x1,x2}
  Bet extended = extend_bet(pbs, *core_bet, core, target);
  // Unit assignment at the deluded state: its believer balances the others.
  CHECK(extended.payoff[0].value[2] == rat("1"));
  CHECK(extended.payoff[1].value[2] == rat("-1"));
  for (int w = 0; w < 3; ++w) CHECK(is_agreeable_at(extended, pbs, w));
  // Payoffs on the already covered region are untouched.
  CHECK(extended.payoff[0].value[0] == core_bet->payoff[0].value[0]);
  CHECK(extended.payoff[1].value[1] == core_bet->payoff[1].value[1]);
}

TEST_CASE("extension pulls forward-believed states into the bet") {
  // Player 1 sees one cell over all three states and believes all of them;
  // player 2 distinguishes {x1,x2} from {x3}.
  StateSpace space({"x1", "x2", "x3"});
  Distribution wide = dist({"1/4", "1/4", "1/2"});
  Distribution near = dist({"1/3", "2/3", "0"});
  Distribution far = dist({"0", "0", "1"});
  ProbabilisticBeliefStructure pbs(space, {"p1", "p2"},
                                   {rows({wide, wide, wide}), rows({near, near, far})});

  // Agreeable relative to the restriction to {x1,x2}.
  RandomVariable f1{{rat("3"), rat("-2"), rat("0")}};
  RandomVariable f2{{rat("-3"), rat("2"), rat("0")}};
  Bet start = make_bet(pbs, {f1, f2});
  StateSet from = set_of({0, 1});
  RestrictedStructure rs(pbs, from);
  CHECK(*rs.expectation(0, start.payoff[0], 0) == rat("1/2"));
  CHECK(*rs.expectation(1, start.payoff[1], 0) == rat("1/3"));

  Bet extended = extend_bet(pbs, start, from, pbs.space().all());
  // Midpoint of the admissible interval: -(mass/self) * eps / 2.
  CHECK(extended.payoff[0].value[2] == rat("-1/4"));
  CHECK(extended.payoff[1].value[2] == rat("1/4"));
  CHECK(posterior_expectation(pbs, 0, extended.payoff[0], 0) == rat("1/8"));
  CHECK(posterior_expectation(pbs, 1, extended.payoff[1], 2) == rat("1/4"));
  for (int w = 0; w < 3; ++w) CHECK(is_agreeable_at(extended, pbs, w));
}

TEST_CASE("extension degenerate and error cases") {
  auto pbs = backward_deluded_instance();
  StateSet core = set_of({0, 1});
  auto core_bet = construct_ck_agreeable_bet(RestrictedStructure(pbs, core));
  REQUIRE(core_bet.has_value());
  SUBCASE("target equal to the start returns the input unchanged") {
    Bet same = extend_bet(pbs, *core_bet, core, core);
    for (int i = 0; i < 2; ++i) CHECK(same.payoff[i].value == core_bet->payoff[i].value);
  }
  SUBCASE("targets must be closed") {
    // {1,2,3} is not closed in the seven-state structure: b_i(3) = {5} escapes.
    auto ex3 = fixtures::example3();
    Bet zero = make_bet(ex3, {RandomVariable::zeros(7), RandomVariable::zeros(7)});
    CHECK_THROWS_AS(extend_bet(ex3, zero, set_of({0, 1}), set_of({0, 1, 2})), ValidationError);
  }
  SUBCASE("unreachable closed regions report a stuck extension") {
    // Two disconnected conflicting cores; a bet on one cannot reach the other
    // through any case.
    StateSpace space({"a", "b", "c", "d"});
    Distribution p1_ab = dist({"1/3", "2/3", "0", "0"});
    Distribution p1_cd = dist({"0", "0", "1/2", "1/2"});
    Distribution p2_ab = dist({"1/2", "1/2", "0", "0"});
    Distribution p2_cd = dist({"0", "0", "1/3", "2/3"});
    ProbabilisticBeliefStructure two_cores(
        space, {"p1", "p2"},
        {rows({p1_ab, p1_ab, p1_cd, p1_cd}), rows({p2_ab, p2_ab, p2_cd, p2_cd})});
    auto bet_ab = construct_ck_agreeable_bet(RestrictedStructure(two_cores, set_of({0, 1})));
    REQUIRE(bet_ab.has_value());
    CHECK_THROWS_AS(extend_bet(two_cores, *bet_ab, set_of({0, 1}), space.all()),
                    BetExtensionStuck);
  }
}

TEST_CASE("common-belief bet pipeline") {
  SUBCASE("no bet when a consistent core blocks everything") {
    auto pbs = fixtures::example3();
    CHECK_FALSE(find_cb_agreeable_bet(pbs, 2).has_value());
  }
  SUBCASE("weak common belief in truth is required") {
    auto pbs = fixtures::example2();
    CHECK_THROWS_AS(find_cb_agreeable_bet(pbs, 0), WeakCbtAbsent);
  }
  SUBCASE("conflicting core embedded behind a deluded state yields a bet") {
    auto pbs = backward_deluded_instance();
    // x3's closure is {x1,x2,x3}; the only terminal component conflicts.
    auto bet = find_cb_agreeable_bet(pbs, 2);
    REQUIRE(bet.has_value());
    CHECK(is_common_belief_agreeable(*bet, pbs, 2));
    CHECK(brute_cb_bet_exists(pbs, 2));
  }
  SUBCASE("single player always returns none") {
    auto pbs = fixtures::example1();
    CHECK_FALSE(find_cb_agreeable_bet(pbs, 0).has_value());
  }
}

TEST_CASE("subspace extraction requires closure") {
  auto pbs = fixtures::example3();
  CHECK_THROWS_AS(subspace_structure(pbs, set_of({0, 1, 2})), ValidationError);
  auto sub = subspace_structure(pbs, set_of({4, 5, 6}));
  CHECK(sub.space().size() == 3);
  CHECK(sub.type_at(1, 0) == dist({"1/3", "1/3", "1/3"}));
}
