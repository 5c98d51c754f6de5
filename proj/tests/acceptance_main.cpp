// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every expected value is pinned exactly; there are no tolerances anywhere.

#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include <doxa/harness.hpp>
#include <doxa/io.hpp>
#include <doxa/market.hpp>
#include <doxa/priors.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace doxa;
using fixtures::dist;
using fixtures::rat;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool()>& body) {
  bool pass = false;
  std::string detail;
  try {
    pass = body();
  } catch (const std::exception& e) {
    detail = std::string(" (") + e.what() + ")";
  }
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << name << detail
            << "\n";
  if (!pass) ++g_failures;
}

StateSet set_of(std::initializer_list<int> states) {
  StateSet s;
  for (int w : states) s.add(w);
  return s;
}

bool coordinates_pinned(const FeasibilitySystem& sys, const Distribution& expected) {
  for (size_t w = 0; w < expected.mass.size(); ++w) {
    LinearProgram up = sys.lp;
    up.objective.assign(up.num_vars, 0);
    up.objective[w] = 1;
    LinearProgram down = up;
    down.objective[w] = -1;
    LpResult hi = solve_lp(up);
    LpResult lo = solve_lp(down);
    if (hi.status != LpStatus::Optimal || lo.status != LpStatus::Optimal) return false;
    if (hi.objective_value != expected.mass[w]) return false;
    if (Rational(-lo.objective_value) != expected.mass[w]) return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "one-player example: unique standard prior, two delusional priors", [] {
    auto pbs = fixtures::example1();
    Distribution unique = dist({"0", "1/2", "1/2"});
    PriorSearchResult standard = find_common_standard_prior(pbs);
    if (!standard.prior || !(*standard.prior == unique)) return false;
    if (!coordinates_pinned(standard_prior_system(pbs), unique)) return false;
    return is_delusional_prior(unique, pbs, 0) &&
           is_delusional_prior(dist({"1/3", "1/3", "1/3"}), pbs, 0);
  });

  criterion(2, "three-state counterexample: delusional prior and bet coexist without weak CBT",
            [] {
              auto pbs = fixtures::example2();
              if (!find_common_delusional_prior(pbs).prior) return false;
              RandomVariable h = RandomVariable::indicator(set_of({0, 1}), 3);
              RandomVariable f1 = h;
              for (auto& v : f1.value) v -= rat("7/12");
              RandomVariable f2;
              for (const auto& v : f1.value) f2.value.push_back(-v);
              Bet bet = make_bet(pbs, {f1, f2});
              for (int w = 0; w < 3; ++w) {
                if (posterior_expectation(pbs, 0, h, w) != rat("2/3")) return false;
                if (posterior_expectation(pbs, 1, h, w) != rat("1/2")) return false;
                if (!is_common_belief_agreeable(bet, pbs, w)) return false;
                if (weak_cbt(pbs, w).holds) return false;
              }
              return true;
            });

  criterion(3, "seven-state structure: delusion pattern, prior, and no bet anywhere", [] {
    auto pbs = fixtures::example3();
    DelusionReport report = classify(pbs.induced());
    if (!(report.deluded[0] == set_of({2, 3}))) return false;
    if (!(report.deluded[1] == set_of({2, 3}))) return false;
    if (report.interpersonal_credibility) return false;
    if (!report.non_singular) return false;
    for (int w = 0; w < 7; ++w) {
      if (!strong_cbt(pbs, w)) return false;
    }
    PriorSearchResult prior = find_common_delusional_prior(pbs);
    if (!prior.prior) return false;
    if (!is_delusional_prior(*prior.prior, pbs, 0)) return false;
    if (!is_delusional_prior(*prior.prior, pbs, 1)) return false;
    for (int w = 0; w < 7; ++w) {
      if (brute_cb_bet_exists(pbs, w)) return false;
    }
    return true;
  });

  criterion(4, "closing S5 profile: the printed bet is agreeable, so no common prior", [] {
    auto pbs = fixtures::example3_closing();
    Bet bet = fixtures::example3_closing_bet(pbs);
    for (int w = 0; w < 7; ++w) {
      if (!is_common_knowledge_agreeable(bet, pbs, w)) return false;
    }
    if (posterior_expectation(pbs, 0, bet.payoff[0], 0) != rat("1/4")) return false;
    if (posterior_expectation(pbs, 0, bet.payoff[0], 1) != rat("1/4")) return false;
    if (posterior_expectation(pbs, 0, bet.payoff[0], 2) != rat("5/16")) return false;
    if (posterior_expectation(pbs, 0, bet.payoff[0], 5) != rat("1/32")) return false;
    if (posterior_expectation(pbs, 1, bet.payoff[1], 0) != rat("1/3")) return false;
    if (posterior_expectation(pbs, 1, bet.payoff[1], 4) != rat("1/48")) return false;
    if (find_common_standard_prior(pbs).prior) return false;
    Verdict verdict = check_no_betting_s5(pbs);
    return verdict.status == VerdictStatus::Pass && verdict.bet.has_value() &&
           !verdict.prior.has_value();
  });

  criterion(5, "trading cascade: exact distorted trace, clean undistorted run", [] {
    SimulationResult distorted = simulate(fixtures::market_cascade(true));
    if (distorted.reason != Termination::FixedPoint) return false;
    if (distorted.rounds.size() != 3) return false;
    const auto& r1 = distorted.rounds[0];
    const auto& r2 = distorted.rounds[1];
    const auto& r3 = distorted.rounds[2];
    if (!(r1.trader[0].possibility == set_of({0, 1, 2, 3}))) return false;
    if (r1.trader[0].action != TradeAction::Sell) return false;
    if (r1.trader[0].posterior != rat("1/4")) return false;
    if (!(r1.trader[1].possibility == set_of({3, 4, 5}))) return false;
    if (r1.trader[1].action != TradeAction::Buy) return false;
    if (r1.trader[1].posterior != rat("1/3")) return false;
    if (!(r2.trader[0].possibility == set_of({3}))) return false;
    if (r2.trader[0].action != TradeAction::Buy) return false;
    if (!(r2.trader[1].possibility == set_of({3, 4, 5}))) return false;
    if (r2.trader[1].action != TradeAction::Buy) return false;
    if (!(r3.trader[0].possibility == set_of({3}))) return false;
    if (!(r3.trader[1].possibility == set_of({3}))) return false;
    if (r3.trader[0].action != TradeAction::Buy) return false;
    if (r3.trader[1].action != TradeAction::Buy) return false;
    int true_state = 1;
    if (r3.trader[0].possibility.contains(true_state)) return false;
    if (r3.trader[1].possibility.contains(true_state)) return false;

    SimulationResult clean = simulate(fixtures::market_cascade(false));
    if (clean.reason != Termination::FixedPoint) return false;
    const auto& last = clean.rounds.back();
    if (!last.trader[0].possibility.contains(true_state)) return false;
    if (!last.trader[1].possibility.contains(true_state)) return false;
    return last.trader[0].posterior == last.trader[1].posterior;
  });

  criterion(6, "sweep: strong common belief in truth everywhere iff non-singular (1000)", [] {
    SweepConfig config;
    config.theorem = "prop1";
    config.count = 1000;
    config.seed = 1601;
    config.max_states = 6;
    config.max_players = 3;
    SweepOutcome outcome = run_sweep(config);
    return outcome.failed == 0 && outcome.passed == 1000;
  });

  criterion(7, "sweep: prior existence iff no bet at weak-CBT states, constructive agrees (1000)",
            [] {
              SweepConfig config;
              config.theorem = "1";
              config.count = 1000;
              config.seed = 1701;
              config.max_states = 6;
              config.max_players = 3;
              SweepOutcome outcome = run_sweep(config);
              for (const auto& f : outcome.failures) {
                if (f.find("stuck") != std::string::npos) return false;
              }
              return outcome.failed == 0;
            });

  criterion(8, "sweeps: non-singular no-betting and S5 no-betting (1000 + 1000)", [] {
    SweepConfig t2;
    t2.theorem = "2";
    t2.count = 1000;
    t2.seed = 1801;
    t2.max_states = 6;
    t2.max_players = 3;
    SweepOutcome out2 = run_sweep(t2);
    SweepConfig s5;
    s5.theorem = "nobetting";
    s5.count = 1000;
    s5.seed = 1802;
    s5.max_states = 6;
    s5.max_players = 3;
    SweepOutcome out5 = run_sweep(s5);
    return out2.failed == 0 && out5.failed == 0;
  });

  criterion(9, "oracle agreement: iterated operator and covering search (examples + 1000)", [] {
    auto agree = [](const BeliefStructure& bs) {
      const int n = bs.space().size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        StateSet event{mask};
        StateSet fixed_point = oracles::iterated_common_belief(bs, event);
        for (int w = 0; w < n; ++w) {
          if (common_belief_holds(bs, event, w) != fixed_point.contains(w)) return false;
        }
      }
      for (int w = 0; w < n; ++w) {
        if (strong_cbt(bs, w) != oracles::strong_cbt_subset_search(bs, w)) return false;
        if (weak_cbt(bs, w).holds != oracles::weak_cbt_restated(bs, w)) return false;
      }
      return true;
    };
    if (!agree(fixtures::example1().induced())) return false;
    if (!agree(fixtures::example2().induced())) return false;
    if (!agree(fixtures::example3().induced())) return false;
    if (!agree(fixtures::example3_closing().induced())) return false;
    Rng rng(1901);
    for (int k = 0; k < 1000; ++k) {
      GeneratorConfig gc;
      gc.seed = rng.next();
      gc.num_states = 2 + static_cast<int>(rng.below(5));
      gc.num_players = 2 + static_cast<int>(rng.below(2));
      if (!agree(generate(gc).induced())) return false;
    }
    return true;
  });

  if (g_failures == 0) {
    std::cout << "acceptance: all criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << g_failures << " criterion(s) FAILED\n";
  return 1;
}
