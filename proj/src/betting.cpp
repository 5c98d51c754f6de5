#include "doxa/betting.hpp"

#include <algorithm>

#include "doxa/simplex.hpp"

namespace doxa {

Bet make_bet(const ProbabilisticBeliefStructure& pbs, std::vector<RandomVariable> payoff) {
  if (static_cast<int>(payoff.size()) != pbs.num_players()) {
    throw ValidationError("bet needs one payoff function per player");
  }
  for (const RandomVariable& f : payoff) {
    if (static_cast<int>(f.value.size()) != pbs.space().size()) {
      throw ValidationError("bet payoff not defined at every state");
    }
  }
  for (int w = 0; w < pbs.space().size(); ++w) {
    Rational total = 0;
    for (const RandomVariable& f : payoff) total += f.value[w];
    if (sign(total) != 0) {
      throw ValidationError("bet payoffs do not sum to zero at state '" + pbs.space().name(w) +
                            "'");
    }
  }
  return Bet{std::move(payoff)};
}

RestrictedStructure::RestrictedStructure(const ProbabilisticBeliefStructure& base, StateSet domain)
    : base_(&base), domain_(domain) {
  if (domain.empty()) throw ValidationError("restriction to the empty set");
  if (!domain.subset_of(base.space().all())) throw ValidationError("restriction outside the space");
}

StateSet RestrictedStructure::cell(int player, int state) const {
  return base_->partition(player).cell_of(state) & domain_;
}

std::optional<Distribution> RestrictedStructure::type_at(int player, int state) const {
  const Distribution& t = base_->type_at(player, state);
  StateSet c = cell(player, state);
  Rational mass = t.mass_of(c);
  if (sign(mass) == 0) return std::nullopt;
  Distribution out{std::vector<Rational>(t.mass.size())};
  c.for_each([&](int w) { out.mass[w] = t.mass[w] / mass; });
  return out;
}

std::optional<Rational> RestrictedStructure::expectation(int player, const RandomVariable& f,
                                                         int state) const {
  const Distribution& t = base_->type_at(player, state);
  StateSet c = cell(player, state);
  Rational mass = 0;
  Rational acc = 0;
  c.for_each([&](int w) {
    mass += t.mass[w];
    acc += t.mass[w] * f.value[w];
  });
  if (sign(mass) == 0) return std::nullopt;
  return Rational(acc / mass);
}

StateSet RestrictedStructure::undefined_states() const {
  StateSet out;
  domain_.for_each([&](int w) {
    for (int i = 0; i < base_->num_players(); ++i) {
      if (!base_->belief_at(i, w).intersects(domain_)) {
        out.add(w);
        return;
      }
    }
  });
  return out;
}

bool RestrictedStructure::is_s5() const {
  bool ok = true;
  domain_.for_each([&](int w) {
    for (int i = 0; i < base_->num_players(); ++i) {
      if (!(base_->belief_at(i, w) == cell(i, w))) ok = false;
    }
  });
  return ok;
}

RestrictedStructure restrict_structure(const ProbabilisticBeliefStructure& pbs, StateSet domain) {
  return RestrictedStructure(pbs, domain);
}

ProbabilisticBeliefStructure subspace_structure(const ProbabilisticBeliefStructure& pbs,
                                                StateSet domain) {
  std::vector<int> states = domain.to_vector();
  for (int w : states) {
    for (int i = 0; i < pbs.num_players(); ++i) {
      if (!pbs.belief_at(i, w).subset_of(domain)) {
        throw ValidationError("subspace is not closed under the possibility functions");
      }
    }
  }
  std::vector<std::string> names;
  names.reserve(states.size());
  for (int w : states) names.push_back(pbs.space().name(w));
  StateSpace sub(names);
  std::vector<TypeFunction> types(pbs.num_players());
  for (int i = 0; i < pbs.num_players(); ++i) {
    types[i].at.resize(states.size());
    for (size_t k = 0; k < states.size(); ++k) {
      const Distribution& t = pbs.type_at(i, states[k]);
      Distribution d{std::vector<Rational>(states.size())};
      for (size_t j = 0; j < states.size(); ++j) d.mass[j] = t.mass[states[j]];
      types[i].at[k] = std::move(d);
    }
  }
  return ProbabilisticBeliefStructure(std::move(sub), pbs.players(), std::move(types));
}

bool is_agreeable_at(const Bet& bet, const ProbabilisticBeliefStructure& pbs, int state) {
  for (int i = 0; i < pbs.num_players(); ++i) {
    if (sign(posterior_expectation(pbs, i, bet.payoff[i], state)) <= 0) return false;
  }
  return true;
}

namespace {

bool agreeable_on(const Bet& bet, const ProbabilisticBeliefStructure& pbs, StateSet states) {
  bool ok = true;
  states.for_each([&](int w) { ok = ok && is_agreeable_at(bet, pbs, w); });
  return ok;
}

std::vector<Partition> partition_profile(const ProbabilisticBeliefStructure& pbs) {
  std::vector<Partition> out;
  out.reserve(pbs.num_players());
  for (int i = 0; i < pbs.num_players(); ++i) out.push_back(pbs.partition(i));
  return out;
}

}  // namespace

bool is_common_knowledge_agreeable(const Bet& bet, const ProbabilisticBeliefStructure& pbs,
                                   int state) {
  StateSet component = meet_component(partition_profile(pbs), pbs.space(), state).members;
  return agreeable_on(bet, pbs, component);
}

bool is_common_belief_agreeable(const Bet& bet, const ProbabilisticBeliefStructure& pbs,
                                int state) {
  return agreeable_on(bet, pbs, common_belief_set(pbs, state).members);
}

AgreeabilityReport agreeability_report(const Bet& bet, const ProbabilisticBeliefStructure& pbs,
                                       int state) {
  AgreeabilityReport report;
  const int n = pbs.space().size();
  report.expectation.resize(pbs.num_players());
  for (int i = 0; i < pbs.num_players(); ++i) {
    report.expectation[i].resize(n);
    for (int w = 0; w < n; ++w) {
      report.expectation[i][w] = posterior_expectation(pbs, i, bet.payoff[i], w);
    }
  }
  for (int w = 0; w < n; ++w) {
    bool all = true;
    for (int i = 0; i < pbs.num_players(); ++i) {
      if (sign(report.expectation[i][w]) <= 0) all = false;
    }
    if (all) report.agreeable.add(w);
  }
  report.common_knowledge_at =
      meet_component(partition_profile(pbs), pbs.space(), state).members.subset_of(report.agreeable);
  report.common_belief_at =
      common_belief_set(pbs, state).members.subset_of(report.agreeable);
  return report;
}

namespace {

struct ExpectationRow {
  int player;
  std::vector<std::pair<int, Rational>> weights;  // (state, type mass), support only
};

// Shared max-min program: maximize z with sum_i f_i = 0 pointwise on S,
// -1 <= f <= 1, and every row expectation >= z. Encoded over y = f + 1 so
// the box seeds the basis. Some bet iff the optimum is strictly positive.
std::optional<Bet> solve_bet_lp(const ProbabilisticBeliefStructure& pbs, StateSet s,
                                const std::vector<ExpectationRow>& rows) {
  const int players = pbs.num_players();
  std::vector<int> states = s.to_vector();
  const int k = static_cast<int>(states.size());
  std::vector<int> pos(pbs.space().size(), -1);
  for (int j = 0; j < k; ++j) pos[states[j]] = j;

  LinearProgram lp;
  lp.num_vars = players * k + 1;
  const int zvar = players * k;
  lp.objective.assign(lp.num_vars, 0);
  lp.objective[zvar] = 1;
  auto yvar = [&](int player, int state) { return player * k + pos[state]; };

  for (int j = 0; j < k; ++j) {
    LinearConstraint eq;
    eq.coeffs.assign(lp.num_vars, 0);
    for (int i = 0; i < players; ++i) eq.coeffs[i * k + j] = 1;
    eq.rel = Relation::Eq;
    eq.rhs = players;
    lp.constraints.push_back(std::move(eq));
  }
  for (const ExpectationRow& row : rows) {
    LinearConstraint ge;
    ge.coeffs.assign(lp.num_vars, 0);
    for (const auto& [w, t] : row.weights) ge.coeffs[yvar(row.player, w)] = t;
    ge.coeffs[zvar] = -1;
    ge.rel = Relation::Ge;
    ge.rhs = 1;
    lp.constraints.push_back(std::move(ge));
  }
  for (int v = 0; v < players * k; ++v) {
    LinearConstraint le;
    le.coeffs.assign(lp.num_vars, 0);
    le.coeffs[v] = 1;
    le.rel = Relation::Le;
    le.rhs = 2;
    lp.constraints.push_back(std::move(le));
  }

  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) {
    throw std::logic_error("bet program must be feasible and bounded");
  }
  if (sign(res.objective_value) <= 0) return std::nullopt;

  std::vector<RandomVariable> payoff(players);
  for (int i = 0; i < players; ++i) {
    payoff[i] = RandomVariable::zeros(pbs.space().size());
    for (int j = 0; j < k; ++j) {
      payoff[i].value[states[j]] = res.solution[i * k + j] - 1;
    }
  }
  return make_bet(pbs, std::move(payoff));
}

}  // namespace

std::optional<Bet> construct_ck_agreeable_bet(const RestrictedStructure& rs) {
  if (!rs.is_s5()) {
    throw ValidationError("bet construction needs an S5 restriction");
  }
  const ProbabilisticBeliefStructure& pbs = rs.base();
  std::vector<ExpectationRow> rows;
  for (int i = 0; i < pbs.num_players(); ++i) {
    StateSet seen;
    rs.domain().for_each([&](int w) {
      StateSet c = rs.cell(i, w);
      if (c.intersects(seen)) return;
      seen |= c;
      std::optional<Distribution> t = rs.type_at(i, w);
      ExpectationRow row{i, {}};
      c.for_each([&](int x) { row.weights.emplace_back(x, t->mass[x]); });
      rows.push_back(std::move(row));
    });
  }
  return solve_bet_lp(pbs, rs.domain(), rows);
}

std::optional<Bet> construct_agreeable_bet_over(const ProbabilisticBeliefStructure& pbs,
                                                StateSet closed_set) {
  std::vector<ExpectationRow> rows;
  for (int i = 0; i < pbs.num_players(); ++i) {
    StateSet seen;
    closed_set.for_each([&](int w) {
      StateSet b = pbs.belief_at(i, w);
      if (!b.subset_of(closed_set)) {
        throw ValidationError("bet oracle needs a set closed under the possibility functions");
      }
      if (b.intersects(seen)) return;
      seen |= b;
      const Distribution& t = pbs.type_at(i, w);
      ExpectationRow row{i, {}};
      b.for_each([&](int x) { row.weights.emplace_back(x, t.mass[x]); });
      rows.push_back(std::move(row));
    });
  }
  return solve_bet_lp(pbs, closed_set, rows);
}

namespace {

// All defined conditioned expectations over `domain` must be strictly
// positive; the undefined ones belong to states whose possibility set has not
// been reached yet.
void assert_agreeable_where_defined(const ProbabilisticBeliefStructure& pbs, const Bet& bet,
                                    StateSet domain, const char* what) {
  RestrictedStructure rs(pbs, domain);
  bool ok = true;
  domain.for_each([&](int w) {
    for (int i = 0; i < pbs.num_players(); ++i) {
      auto e = rs.expectation(i, bet.payoff[i], w);
      if (e && sign(*e) <= 0) ok = false;
    }
  });
  if (!ok) throw std::logic_error(std::string(what) + ": extension invariant violated");
}

}  // namespace

Bet extend_bet(const ProbabilisticBeliefStructure& pbs, const Bet& bet, StateSet from,
               StateSet target) {
  if (!from.subset_of(target)) throw ValidationError("extension start must lie inside the target");
  if (from.empty()) throw ValidationError("extension start must be non-empty");
  target.for_each([&](int w) {
    for (int i = 0; i < pbs.num_players(); ++i) {
      if (!pbs.belief_at(i, w).subset_of(target)) {
        throw ValidationError("extension target must be closed under the possibility functions");
      }
    }
  });
  assert_agreeable_where_defined(pbs, bet, from, "extension start");

  const int players = pbs.num_players();
  Bet current = bet;
  StateSet covered = from;
  while (!(covered == target)) {
    if (players < 2) throw BetExtensionStuck("single-player bets cannot be extended");
    StateSet remaining = target.minus(covered);

    // A state is reachable through player i once b_i touches the covered
    // region; self-mass decides between the interval assignment and the unit
    // assignment (forward/backward-positive vs backward-deluded).
    int next_state = -1;
    int next_player = -1;
    bool deluded_case = false;
    remaining.for_each([&](int w) {
      if (next_state >= 0) return;
      for (int i = 0; i < players; ++i) {
        if (pbs.belief_at(i, w).intersects(covered) && sign(pbs.type_at(i, w).mass[w]) > 0) {
          next_state = w;
          next_player = i;
          return;
        }
      }
    });
    if (next_state < 0) {
      remaining.for_each([&](int w) {
        if (next_state >= 0) return;
        for (int i = 0; i < players; ++i) {
          if (pbs.belief_at(i, w).intersects(covered) &&
              sign(pbs.type_at(i, w).mass[w]) == 0) {
            next_state = w;
            next_player = i;
            deluded_case = true;
            return;
          }
        }
      });
    }
    if (next_state < 0) {
      throw BetExtensionStuck("no state of the target is reachable from the covered region");
    }

    if (deluded_case) {
      for (int j = 0; j < players; ++j) {
        current.payoff[j].value[next_state] = j == next_player ? Rational(1 - players) : Rational(1);
      }
    } else {
      const Distribution& t = pbs.type_at(next_player, next_state);
      StateSet cell_in = pbs.partition(next_player).cell_of(next_state) & covered;
      Rational mass = 0;
      Rational acc = 0;
      cell_in.for_each([&](int x) {
        mass += t.mass[x];
        acc += t.mass[x] * current.payoff[next_player].value[x];
      });
      if (sign(mass) <= 0) throw std::logic_error("reachable state with zero covered mass");
      Rational eps = acc / mass;
      if (sign(eps) <= 0) throw std::logic_error("covered expectation not positive");
      // Midpoint of the admissible open interval (-(mass/self) eps, 0).
      Rational own = -(mass / t.mass[next_state]) * eps / 2;
      for (int j = 0; j < players; ++j) {
        current.payoff[j].value[next_state] = j == next_player ? own : Rational(-own / (players - 1));
      }
    }
    covered.add(next_state);
    assert_agreeable_where_defined(pbs, current, covered, "extension step");
  }
  return current;
}

std::vector<StateSet> terminal_components(const ProbabilisticBeliefStructure& pbs,
                                          StateSet within) {
  std::vector<int> states = within.to_vector();
  std::vector<StateSet> reach(pbs.space().size());
  for (int w : states) {
    StateSet r = StateSet::single(w);
    for (;;) {
      StateSet next = r;
      r.for_each([&](int x) {
        for (int i = 0; i < pbs.num_players(); ++i) next |= pbs.belief_at(i, x) & within;
      });
      if (next == r) break;
      r = next;
    }
    reach[w] = r;
  }
  std::vector<StateSet> components;
  StateSet assigned;
  for (int w : states) {
    if (assigned.contains(w)) continue;
    StateSet scc;
    reach[w].for_each([&](int v) {
      if (reach[v].contains(w)) scc.add(v);
    });
    if (!scc.contains(w)) continue;  // w not on a cycle: transient
    // Terminal iff no edge leaves the component.
    bool terminal = true;
    scc.for_each([&](int x) {
      for (int i = 0; i < pbs.num_players(); ++i) {
        if (!(pbs.belief_at(i, x) & within).subset_of(scc)) terminal = false;
      }
    });
    if (terminal) {
      components.push_back(scc);
      assigned |= scc;
    }
  }
  std::sort(components.begin(), components.end(),
            [](StateSet a, StateSet b) { return a.first() < b.first(); });
  return components;
}

std::optional<Bet> find_cb_agreeable_bet(const ProbabilisticBeliefStructure& pbs, int state) {
  WeakCbtResult wc = weak_cbt(pbs, state);
  if (!wc.holds) {
    throw WeakCbtAbsent("weak common belief in truth fails at state '" +
                        pbs.space().name(state) + "'");
  }
  StateSet q = common_belief_set(pbs, state).members;
  std::vector<StateSet> components = terminal_components(pbs, q);

  Bet glued{std::vector<RandomVariable>(pbs.num_players(),
                                        RandomVariable::zeros(pbs.space().size()))};
  StateSet covered;
  for (const StateSet& comp : components) {
    bool non_deluded = true;
    comp.for_each([&](int w) {
      for (int i = 0; i < pbs.num_players(); ++i) {
        if (!pbs.belief_at(i, w).contains(w)) non_deluded = false;
      }
    });
    std::optional<Bet> comp_bet;
    if (non_deluded) {
      comp_bet = construct_ck_agreeable_bet(RestrictedStructure(pbs, comp));
      // A non-deluded terminal component with a common prior blocks every
      // bet over the whole common belief set.
      if (!comp_bet) return std::nullopt;
    } else {
      comp_bet = construct_agreeable_bet_over(pbs, comp);
      if (!comp_bet) {
        throw std::logic_error("deluded terminal component without an agreeable bet");
      }
    }
    comp.for_each([&](int w) {
      for (int i = 0; i < pbs.num_players(); ++i) {
        glued.payoff[i].value[w] = comp_bet->payoff[i].value[w];
      }
    });
    covered |= comp;
  }

  Bet full = extend_bet(pbs, glued, covered, q);
  if (!is_common_belief_agreeable(full, pbs, state)) {
    throw std::logic_error("extended bet failed the common-belief agreeability check");
  }
  return full;
}

}  // namespace doxa
