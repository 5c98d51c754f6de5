#include "doxa/harness.hpp"

#include <algorithm>
#include <ostream>

namespace doxa {

std::uint64_t Rng::next() {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) { return n <= 1 ? 0 : next() % n; }

namespace {

std::vector<StateSet> random_partition(Rng& rng, int n) {
  int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  std::vector<StateSet> boxes(k);
  for (int w = 0; w < n; ++w) boxes[rng.below(k)].add(w);
  std::vector<StateSet> cells;
  for (const StateSet& b : boxes) {
    if (!b.empty()) cells.push_back(b);
  }
  return cells;
}

Distribution random_type(Rng& rng, StateSet support, int n, int denominator_bound) {
  std::vector<Rational> weights(n, 0);
  Rational total = 0;
  support.for_each([&](int w) {
    weights[w] = Rational(1 + static_cast<long>(rng.below(denominator_bound)));
    total += weights[w];
  });
  Distribution d{std::move(weights)};
  for (auto& m : d.mass) m /= total;
  return d;
}

}  // namespace

ProbabilisticBeliefStructure generate(const GeneratorConfig& config) {
  if (config.num_states < 1 || config.num_states > 64 || config.num_players < 1 ||
      config.denominator_bound < 1) {
    throw ValidationError("generator bounds must be positive");
  }
  Rng rng(config.seed);
  const int n = config.num_states;

  std::vector<std::string> names;
  for (int w = 0; w < n; ++w) names.push_back("s" + std::to_string(w + 1));
  std::vector<std::string> players;
  for (int i = 0; i < config.num_players; ++i) players.push_back("p" + std::to_string(i + 1));
  StateSpace space(names);

  std::vector<std::vector<StateSet>> cells(config.num_players);
  for (int i = 0; i < config.num_players; ++i) cells[i] = random_partition(rng, n);

  std::vector<std::vector<StateSet>> beliefs(config.num_players);
  if (config.s5) {
    beliefs = cells;
  } else if (config.non_singular) {
    // One global deluded set; every cell must keep a believed remainder.
    StateSet deluded;
    for (int attempt = 0; attempt < 64; ++attempt) {
      StateSet candidate;
      for (int w = 0; w < n; ++w) {
        if (rng.below(3) == 0) candidate.add(w);
      }
      bool ok = true;
      for (const auto& player_cells : cells) {
        for (const StateSet& c : player_cells) {
          if (c.minus(candidate).empty()) ok = false;
        }
      }
      if (ok) {
        deluded = candidate;
        break;
      }
    }
    for (int i = 0; i < config.num_players; ++i) {
      for (const StateSet& c : cells[i]) beliefs[i].push_back(c.minus(deluded));
    }
  } else {
    for (int i = 0; i < config.num_players; ++i) {
      for (const StateSet& c : cells[i]) {
        StateSet b;
        c.for_each([&](int w) {
          if (rng.below(2) == 0) b.add(w);
        });
        if (b.empty()) {
          auto members = c.to_vector();
          b.add(members[rng.below(members.size())]);
        }
        beliefs[i].push_back(b);
      }
    }
  }

  std::vector<TypeFunction> types(config.num_players);
  for (int i = 0; i < config.num_players; ++i) {
    types[i].at.resize(n);
    for (size_t c = 0; c < cells[i].size(); ++c) {
      Distribution d = random_type(rng, beliefs[i][c], n, config.denominator_bound);
      cells[i][c].for_each([&](int w) { types[i].at[w] = d; });
    }
  }
  return ProbabilisticBeliefStructure(std::move(space), std::move(players), std::move(types));
}

std::uint64_t structure_digest(const ProbabilisticBeliefStructure& pbs) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0x1f;
    h *= 1099511628211ull;
  };
  for (const auto& s : pbs.space().names()) mix(s);
  for (const auto& p : pbs.players()) mix(p);
  for (int i = 0; i < pbs.num_players(); ++i) {
    for (int w = 0; w < pbs.space().size(); ++w) {
      for (const Rational& m : pbs.type_at(i, w).mass) mix(to_string(m));
    }
  }
  return h;
}

bool brute_cb_bet_exists(const ProbabilisticBeliefStructure& pbs, int state) {
  return construct_agreeable_bet_over(pbs, common_belief_set(pbs, state).members).has_value();
}

namespace {

bool all_non_deluded(const ProbabilisticBeliefStructure& pbs, StateSet set) {
  bool ok = true;
  set.for_each([&](int w) {
    for (int i = 0; i < pbs.num_players(); ++i) {
      if (!pbs.belief_at(i, w).contains(w)) ok = false;
    }
  });
  return ok;
}

// The prior side of the KD45 no-betting equivalence at a state: some closed
// all-non-deluded component of the common belief set carries a common
// standard prior. Returns the certificate extended by zeros.
std::optional<Distribution> consistent_component_prior(const ProbabilisticBeliefStructure& pbs,
                                                       StateSet q) {
  for (const StateSet& comp : terminal_components(pbs, q)) {
    if (!all_non_deluded(pbs, comp)) continue;
    ProbabilisticBeliefStructure sub = subspace_structure(pbs, comp);
    PriorSearchResult r = find_common_standard_prior(sub);
    if (!r.prior) continue;
    Distribution full{std::vector<Rational>(pbs.space().size())};
    auto states = comp.to_vector();
    for (size_t k = 0; k < states.size(); ++k) full.mass[states[k]] = r.prior->mass[k];
    return full;
  }
  return std::nullopt;
}

std::string describe(const ProbabilisticBeliefStructure& pbs, StateSet s) {
  return pbs.space().describe(s);
}

}  // namespace

Verdict check_theorem1(const ProbabilisticBeliefStructure& pbs, int state) {
  Verdict v;
  v.digest = structure_digest(pbs);
  v.claim = "theorem1@" + pbs.space().name(state);
  v.state = state;

  WeakCbtResult wc = weak_cbt(pbs, state);
  if (!wc.holds) {
    v.status = VerdictStatus::NotApplicable;
    bool prior = find_common_delusional_prior(pbs).prior.has_value();
    bool bet = brute_cb_bet_exists(pbs, state);
    v.note = "weak common belief in truth fails";
    if (prior && bet) v.note += "; common delusional prior and common-belief agreeable bet coexist";
    return v;
  }

  StateSet q = common_belief_set(pbs, state).members;
  std::optional<Distribution> prior = consistent_component_prior(pbs, q);
  std::optional<Bet> bet = construct_agreeable_bet_over(pbs, q);

  bool xor_holds = prior.has_value() != bet.has_value();
  bool certified = true;
  if (bet && !is_common_belief_agreeable(*bet, pbs, state)) certified = false;

  bool constructive_agrees = true;
  std::string stuck_note;
  try {
    std::optional<Bet> constructed = find_cb_agreeable_bet(pbs, state);
    constructive_agrees = constructed.has_value() == bet.has_value();
    if (constructed && !is_common_belief_agreeable(*constructed, pbs, state)) certified = false;
  } catch (const BetExtensionStuck& e) {
    constructive_agrees = false;
    stuck_note = std::string("; extension stuck: ") + e.what();
  }

  v.prior = prior;
  v.bet = bet;
  if (xor_holds && certified && constructive_agrees) {
    v.status = VerdictStatus::Pass;
    v.note = prior ? "prior on component, no bet" : "bet, no component prior";
  } else {
    v.status = VerdictStatus::Fail;
    v.note = "prior=" + std::string(prior ? "yes" : "no") + " bet=" +
             std::string(bet ? "yes" : "no") +
             (constructive_agrees ? "" : "; constructive pipeline disagrees") +
             (certified ? "" : "; certificate failed re-verification") + stuck_note +
             "; Q=" + describe(pbs, q);
  }
  return v;
}

Verdict check_theorem2(const ProbabilisticBeliefStructure& pbs) {
  Verdict v;
  v.digest = structure_digest(pbs);
  v.claim = "theorem2";
  DelusionReport report = classify(pbs.induced());
  if (!report.non_singular) {
    v.status = VerdictStatus::NotApplicable;
    v.note = "structure is singular";
    return v;
  }
  PriorSearchResult prior = find_common_delusional_prior(pbs);
  std::optional<Bet> bet;
  std::optional<int> bet_state;
  std::vector<StateSet> seen_q;
  for (int w = 0; w < pbs.space().size() && !bet; ++w) {
    StateSet q = common_belief_set(pbs, w).members;
    if (std::find(seen_q.begin(), seen_q.end(), q) != seen_q.end()) continue;
    seen_q.push_back(q);
    bet = construct_agreeable_bet_over(pbs, q);
    if (bet) bet_state = w;
  }
  bool certified = true;
  if (bet && !is_common_belief_agreeable(*bet, pbs, *bet_state)) certified = false;
  if (prior.prior && !is_common_delusional_prior(*prior.prior, pbs)) certified = false;

  v.prior = prior.prior;
  v.bet = bet;
  v.state = bet_state;
  if ((prior.prior.has_value() != bet.has_value()) && certified) {
    v.status = VerdictStatus::Pass;
    v.note = prior.prior ? "common delusional prior, no bet anywhere" : "bet exists, no prior";
  } else {
    v.status = VerdictStatus::Fail;
    v.note = "prior=" + std::string(prior.prior ? "yes" : "no") + " bet=" +
             std::string(bet ? "yes" : "no") + (certified ? "" : "; certificate failed");
  }
  return v;
}

Verdict check_no_betting_s5(const ProbabilisticBeliefStructure& pbs) {
  Verdict v;
  v.digest = structure_digest(pbs);
  v.claim = "no-betting-s5";
  DelusionReport report = classify(pbs.induced());
  for (bool d : report.delusional) {
    if (d) {
      v.status = VerdictStatus::NotApplicable;
      v.note = "not an S5 structure";
      return v;
    }
  }
  PriorSearchResult prior = find_common_standard_prior(pbs);
  std::vector<Partition> partitions;
  for (int i = 0; i < pbs.num_players(); ++i) partitions.push_back(pbs.partition(i));

  std::optional<Bet> bet;
  std::optional<int> bet_state;
  StateSet seen;
  for (int w = 0; w < pbs.space().size() && !bet; ++w) {
    if (seen.contains(w)) continue;
    StateSet comp = meet_component(partitions, pbs.space(), w).members;
    seen |= comp;
    bet = construct_ck_agreeable_bet(RestrictedStructure(pbs, comp));
    if (bet) bet_state = w;
  }
  bool certified = true;
  if (bet && !is_common_knowledge_agreeable(*bet, pbs, *bet_state)) certified = false;
  if (prior.prior && !is_common_standard_prior(*prior.prior, pbs)) certified = false;

  v.prior = prior.prior;
  v.bet = bet;
  v.state = bet_state;
  if ((prior.prior.has_value() != bet.has_value()) && certified) {
    v.status = VerdictStatus::Pass;
    v.note = prior.prior ? "common prior, no bet" : "bet exists, no common prior";
  } else {
    v.status = VerdictStatus::Fail;
    v.note = "prior=" + std::string(prior.prior ? "yes" : "no") + " bet=" +
             std::string(bet ? "yes" : "no") + (certified ? "" : "; certificate failed");
  }
  return v;
}

Verdict check_prop1(const ProbabilisticBeliefStructure& pbs) {
  Verdict v;
  v.digest = structure_digest(pbs);
  v.claim = "prop1";
  Prop1Report report = doxa::check_prop1(pbs.induced());
  v.status = report.equivalent ? VerdictStatus::Pass : VerdictStatus::Fail;
  v.note = std::string("strong-cbt-everywhere=") + (report.strong_everywhere ? "yes" : "no") +
           " non-singular=" + (report.non_singular ? "yes" : "no");
  if (report.counterexample) {
    v.state = report.counterexample;
    v.note += " counterexample=" + pbs.space().name(*report.counterexample);
  }
  return v;
}

SweepOutcome run_sweep(const SweepConfig& config, std::ostream* log) {
  SweepOutcome outcome;
  Rng rng(config.seed);
  for (int k = 0; k < config.count; ++k) {
    GeneratorConfig gc;
    gc.seed = rng.next();
    gc.num_states = 2 + static_cast<int>(rng.below(std::max(1, config.max_states - 1)));
    gc.num_players = 2 + static_cast<int>(rng.below(std::max(1, config.max_players - 1)));
    gc.denominator_bound = 4 + static_cast<int>(rng.below(4));
    if (config.theorem == "2") {
      gc.non_singular = true;
    } else if (config.theorem == "nobetting") {
      gc.s5 = true;
    } else if (config.theorem == "prop1") {
      gc.non_singular = rng.below(2) == 0;  // mix singular and non-singular
    }
    ProbabilisticBeliefStructure pbs = generate(gc);

    std::vector<Verdict> verdicts;
    if (config.theorem == "1") {
      // States sharing a common belief set share the verdict; check each
      // distinct set once.
      std::vector<StateSet> seen_q;
      for (int w = 0; w < pbs.space().size(); ++w) {
        StateSet q = common_belief_set(pbs, w).members;
        if (std::find(seen_q.begin(), seen_q.end(), q) != seen_q.end()) continue;
        seen_q.push_back(q);
        verdicts.push_back(check_theorem1(pbs, w));
      }
    } else if (config.theorem == "2") {
      verdicts.push_back(check_theorem2(pbs));
    } else if (config.theorem == "nobetting") {
      verdicts.push_back(check_no_betting_s5(pbs));
    } else if (config.theorem == "prop1") {
      verdicts.push_back(check_prop1(pbs));
    } else {
      throw ValidationError("unknown theorem '" + config.theorem + "'");
    }

    bool any_fail = false;
    bool any_pass = false;
    std::string fail_note;
    for (const Verdict& v : verdicts) {
      if (v.status == VerdictStatus::Fail) {
        any_fail = true;
        fail_note = v.claim + ": " + v.note;
      }
      if (v.status == VerdictStatus::Pass) any_pass = true;
    }
    std::string line;
    if (any_fail) {
      ++outcome.failed;
      outcome.failures.push_back("instance " + std::to_string(k) + " seed " +
                                 std::to_string(gc.seed) + ": " + fail_note);
      line = "FAIL";
    } else if (any_pass) {
      ++outcome.passed;
      line = "pass";
    } else {
      ++outcome.not_applicable;
      line = "n/a ";
    }
    if (log) {
      (*log) << line << "  instance " << k << " states=" << gc.num_states
             << " players=" << gc.num_players << " digest=" << structure_digest(pbs) << "\n";
    }
  }
  return outcome;
}

}  // namespace doxa
