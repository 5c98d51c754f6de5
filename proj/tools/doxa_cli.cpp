// Command-line front end: validation, delusion diagnostics, common-belief
// analysis, prior search, bet construction, theorem sweeps, and the trading
// simulation, over the JSON structure formats.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "doxa/harness.hpp"
#include "doxa/io.hpp"
#include "doxa/market.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace doxa;

constexpr int kExitOk = 0;
constexpr int kExitVerdictFailure = 1;
constexpr int kExitInputError = 2;

Json state_set_json(const StateSpace& space, StateSet set) {
  Json out = Json::array();
  set.for_each([&](int w) { out.push_back(space.name(w)); });
  return out;
}

std::string action_name(TradeAction a) { return a == TradeAction::Buy ? "buy" : "sell"; }

Json distribution_json(const StateSpace& space, const Distribution& d) {
  Json out = Json::object();
  for (int w = 0; w < space.size(); ++w) {
    if (sign(d.mass[w]) != 0) out[space.name(w)] = to_string(d.mass[w]);
  }
  return out;
}

void emit(const Json& doc, bool as_json, const std::string& text) {
  if (as_json) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

int run_validate(const std::string& path, bool as_json) {
  StructureDiagnostics diag = diagnose_structure(read_file(path));
  Json doc;
  doc["command"] = "validate";
  doc["parsed"] = diag.parsed;
  doc["partitional"] = diag.partitional;
  doc["kd45"] = diag.kd45;
  doc["problems"] = diag.problems;
  std::string text;
  text += std::string("parsed: ") + (diag.parsed ? "yes" : "no") + "\n";
  text += std::string("partitional: ") + (diag.partitional ? "yes" : "no") + "\n";
  text += std::string("KD45: ") + (diag.kd45 ? "yes" : "no") + "\n";
  for (const auto& p : diag.problems) text += "problem: " + p + "\n";
  emit(doc, as_json, text);
  return diag.problems.empty() ? kExitOk : kExitInputError;
}

int run_classify(const std::string& path, bool as_json) {
  auto pbs = parse_structure_file(path);
  DelusionReport report = classify(pbs.induced());
  Json doc;
  doc["command"] = "classify";
  doc["non_singular"] = report.non_singular;
  doc["interpersonal_credibility"] = report.interpersonal_credibility;
  Json players = Json::object();
  std::string text;
  for (int i = 0; i < pbs.num_players(); ++i) {
    Json entry;
    entry["delusional"] = static_cast<bool>(report.delusional[i]);
    entry["deluded_states"] = state_set_json(pbs.space(), report.deluded[i]);
    players[pbs.player_name(i)] = entry;
    text += pbs.player_name(i) + ": " + (report.delusional[i] ? "delusional" : "non-delusional") +
            ", deluded states " + pbs.space().describe(report.deluded[i]) + "\n";
  }
  doc["players"] = players;
  Json states = Json::object();
  for (int w = 0; w < pbs.space().size(); ++w) {
    const char* label = report.state_class[w] == DelusionReport::StateClass::AllDeluded
                            ? "all-deluded"
                        : report.state_class[w] == DelusionReport::StateClass::AllNonDeluded
                            ? "all-non-deluded"
                            : "mixed";
    states[pbs.space().name(w)] = label;
    text += pbs.space().name(w) + ": " + label + "\n";
  }
  doc["states"] = states;
  text += std::string("non-singular: ") + (report.non_singular ? "yes" : "no") + "\n";
  text += std::string("interpersonal credibility: ") +
          (report.interpersonal_credibility ? "yes" : "no") + "\n";
  emit(doc, as_json, text);
  return kExitOk;
}

int run_analyze(const std::string& path, bool as_json) {
  auto pbs = parse_structure_file(path);
  BeliefStructure bs = pbs.induced();
  std::vector<Partition> partitions;
  for (int i = 0; i < pbs.num_players(); ++i) partitions.push_back(pbs.partition(i));

  Json doc;
  doc["command"] = "analyze";
  Json rows = Json::array();
  std::string text = "state | common belief set | strong | weak (witness) | meet component\n";
  for (int w = 0; w < pbs.space().size(); ++w) {
    StateSet q = common_belief_set(bs, w).members;
    bool strong = strong_cbt(bs, w);
    WeakCbtResult weak = weak_cbt(bs, w);
    StateSet component = meet_component(partitions, pbs.space(), w).members;
    Json row;
    row["state"] = pbs.space().name(w);
    row["common_belief_set"] = state_set_json(pbs.space(), q);
    row["strong_cbt"] = strong;
    row["weak_cbt"] = weak.holds;
    if (weak.witness) row["witness"] = pbs.space().name(*weak.witness);
    row["meet_component"] = state_set_json(pbs.space(), component);
    rows.push_back(row);
    text += pbs.space().name(w) + " | " + pbs.space().describe(q) + " | " +
            (strong ? "yes" : "no") + " | " + (weak.holds ? "yes" : "no") +
            (weak.witness ? " (" + pbs.space().name(*weak.witness) + ")" : "") + " | " +
            pbs.space().describe(component) + "\n";
  }
  doc["states"] = rows;
  Prop1Report prop1 = check_prop1(bs);
  doc["strong_cbt_everywhere"] = prop1.strong_everywhere;
  doc["non_singular"] = prop1.non_singular;
  text += std::string("strong CBT everywhere: ") + (prop1.strong_everywhere ? "yes" : "no") +
          "; non-singular: " + (prop1.non_singular ? "yes" : "no") + "\n";
  emit(doc, as_json, text);
  return kExitOk;
}

int run_prior(const std::string& path, const std::string& mode, bool as_json) {
  auto pbs = parse_structure_file(path);
  PriorSearchResult result =
      mode == "standard" ? find_common_standard_prior(pbs) : find_common_delusional_prior(pbs);
  Json doc;
  doc["command"] = "prior";
  doc["mode"] = mode;
  doc["exists"] = result.prior.has_value();
  std::string text;
  if (result.prior) {
    doc["prior"] = distribution_json(pbs.space(), *result.prior);
    for (int w = 0; w < pbs.space().size(); ++w) {
      text += pbs.space().name(w) + ": " + to_string(result.prior->mass[w]) + "\n";
    }
  } else {
    text = "NONE\n";
  }
  emit(doc, as_json, text);
  return kExitOk;
}

int run_bet(const std::string& path, const std::string& state_name, bool as_json) {
  auto pbs = parse_structure_file(path);
  int state = pbs.space().require(state_name);
  std::optional<Bet> bet = find_cb_agreeable_bet(pbs, state);  // throws when weak CBT fails
  Json doc;
  doc["command"] = "bet";
  doc["state"] = state_name;
  std::string text;
  if (!bet) {
    doc["bet_exists"] = false;
    text = "NO-BET (common delusional prior exists)\n";
    PriorSearchResult global = find_common_delusional_prior(pbs);
    if (global.prior) {
      doc["prior"] = distribution_json(pbs.space(), *global.prior);
      doc["prior_scope"] = "global";
      for (int w = 0; w < pbs.space().size(); ++w) {
        text += pbs.space().name(w) + ": " + to_string(global.prior->mass[w]) + "\n";
      }
    } else {
      // The blocking certificate lives on a consistent component of the
      // common belief set; report it restricted there.
      StateSet q = common_belief_set(pbs, state).members;
      for (const StateSet& comp : terminal_components(pbs, q)) {
        ProbabilisticBeliefStructure sub = subspace_structure(pbs, comp);
        PriorSearchResult local = find_common_standard_prior(sub);
        if (!local.prior) continue;
        Json prior_doc = Json::object();
        text += "supported on " + pbs.space().describe(comp) + ":\n";
        auto members = comp.to_vector();
        for (size_t k = 0; k < members.size(); ++k) {
          prior_doc[pbs.space().name(members[k])] = to_string(local.prior->mass[k]);
          text += pbs.space().name(members[k]) + ": " + to_string(local.prior->mass[k]) + "\n";
        }
        doc["prior"] = prior_doc;
        doc["prior_scope"] = "component";
        break;
      }
    }
  } else {
    doc["bet_exists"] = true;
    AgreeabilityReport report = agreeability_report(*bet, pbs, state);
    Json payoffs = Json::object();
    Json expectations = Json::object();
    text += "bet payoffs:\n";
    for (int i = 0; i < pbs.num_players(); ++i) {
      Json row = Json::object();
      Json exp_row = Json::object();
      text += "  " + pbs.player_name(i) + ":";
      for (int w = 0; w < pbs.space().size(); ++w) {
        row[pbs.space().name(w)] = to_string(bet->payoff[i].value[w]);
        exp_row[pbs.space().name(w)] = to_string(report.expectation[i][w]);
        text += " " + to_string(bet->payoff[i].value[w]);
      }
      text += "\n";
      payoffs[pbs.player_name(i)] = row;
      expectations[pbs.player_name(i)] = exp_row;
    }
    text += "posterior expectations:\n";
    for (int i = 0; i < pbs.num_players(); ++i) {
      text += "  " + pbs.player_name(i) + ":";
      for (int w = 0; w < pbs.space().size(); ++w) {
        text += " " + to_string(report.expectation[i][w]);
      }
      text += "\n";
    }
    doc["payoffs"] = payoffs;
    doc["expectations"] = expectations;
    doc["common_belief_agreeable"] = report.common_belief_at;
    text += std::string("common-belief agreeable at ") + state_name + ": " +
            (report.common_belief_at ? "yes" : "no") + "\n";
  }
  emit(doc, as_json, text);
  return kExitOk;
}

int run_check(const std::string& theorem, int count, std::uint64_t seed, int states, int players,
              bool as_json) {
  SweepConfig config;
  config.theorem = theorem;
  config.count = count;
  config.seed = seed;
  config.max_states = states;
  config.max_players = players;
  std::ostringstream log;
  SweepOutcome outcome = run_sweep(config, &log);
  Json doc;
  doc["command"] = "check";
  doc["theorem"] = theorem;
  doc["count"] = count;
  doc["seed"] = seed;
  doc["passed"] = outcome.passed;
  doc["failed"] = outcome.failed;
  doc["not_applicable"] = outcome.not_applicable;
  doc["failures"] = outcome.failures;
  std::string text = log.str();
  text += "passed=" + std::to_string(outcome.passed) +
          " failed=" + std::to_string(outcome.failed) +
          " n/a=" + std::to_string(outcome.not_applicable) + "\n";
  for (const auto& f : outcome.failures) text += "failure: " + f + "\n";
  emit(doc, as_json, text);
  return outcome.failed == 0 ? kExitOk : kExitVerdictFailure;
}

int run_simulate(const std::string& path, bool trace, bool as_json) {
  MarketConfig config = parse_market_config_file(path);
  SimulationResult result = simulate(config);
  Json doc;
  doc["command"] = "simulate";
  const char* reason = result.reason == Termination::FixedPoint ? "fixed-point"
                       : result.reason == Termination::Breakdown ? "breakdown"
                                                                 : "round-cap";
  doc["termination"] = reason;
  doc["rounds_elapsed"] = result.rounds_elapsed;
  if (!result.diagnostic.empty()) doc["diagnostic"] = result.diagnostic;
  Json rounds = Json::array();
  std::string text;
  for (size_t r = 0; r < result.rounds.size(); ++r) {
    Json round = Json::object();
    for (size_t i = 0; i < config.traders.size(); ++i) {
      const TraderRound& tr = result.rounds[r].trader[i];
      Json entry;
      entry["possibility"] = state_set_json(config.space, tr.possibility);
      if (tr.posterior) entry["posterior"] = to_string(*tr.posterior);
      if (tr.action) entry["action"] = action_name(*tr.action);
      round[config.traders[i]] = entry;
      if (trace || r + 1 == result.rounds.size()) {
        text += "round " + std::to_string(r + 1) + " " + config.traders[i] + ": " +
                config.space.describe(tr.possibility);
        if (tr.posterior) text += " posterior " + to_string(*tr.posterior);
        if (tr.action) text += " " + action_name(*tr.action);
        text += "\n";
      }
    }
    rounds.push_back(round);
  }
  doc["rounds"] = rounds;
  text += std::string("termination: ") + reason + " after " +
          std::to_string(result.rounds_elapsed) + " rounds\n";
  if (!result.diagnostic.empty()) text += "diagnostic: " + result.diagnostic + "\n";
  emit(doc, as_json, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact decision procedures for interactive belief structures"};
  app.require_subcommand(1);

  std::string file;
  std::string mode = "delusional";
  std::string state;
  std::string theorem;
  std::string config_file;
  bool as_json = false;
  bool trace = false;
  int count = 100;
  std::uint64_t seed = 1;
  int states = 5;
  int players = 3;

  auto* validate = app.add_subcommand("validate", "check a structure file");
  validate->add_option("file", file, "structure file")->required();
  validate->add_flag("--json", as_json, "machine-readable output");

  auto* classify_cmd = app.add_subcommand("classify", "delusion diagnostics");
  classify_cmd->add_option("file", file, "structure file")->required();
  classify_cmd->add_flag("--json", as_json, "machine-readable output");

  auto* analyze = app.add_subcommand("analyze", "common belief sets and truth diagnostics");
  analyze->add_option("file", file, "structure file")->required();
  analyze->add_flag("--json", as_json, "machine-readable output");

  auto* prior = app.add_subcommand("prior", "search for a common prior");
  prior->add_option("file", file, "structure file")->required();
  prior->add_option("--mode", mode, "standard or delusional")
      ->check(CLI::IsMember({"standard", "delusional"}));
  prior->add_flag("--json", as_json, "machine-readable output");

  auto* bet = app.add_subcommand("bet", "construct a common-belief agreeable bet");
  bet->add_option("file", file, "structure file")->required();
  bet->add_option("--state", state, "state at which to bet")->required();
  bet->add_flag("--json", as_json, "machine-readable output");

  auto* check = app.add_subcommand("check", "randomized theorem sweeps");
  check->add_option("--theorem", theorem, "1, 2, prop1, or nobetting")
      ->required()
      ->check(CLI::IsMember({"1", "2", "prop1", "nobetting"}));
  check->add_option("--count", count, "number of instances");
  check->add_option("--seed", seed, "sweep seed");
  check->add_option("--states", states, "max states per instance");
  check->add_option("--players", players, "max players per instance");
  check->add_flag("--json", as_json, "machine-readable output");

  auto* simulate_cmd = app.add_subcommand("simulate", "run the trading simulation");
  simulate_cmd->add_option("--config", config_file, "market config file")->required();
  simulate_cmd->add_flag("--trace", trace, "print every round");
  simulate_cmd->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (validate->parsed()) return run_validate(file, as_json);
    if (classify_cmd->parsed()) return run_classify(file, as_json);
    if (analyze->parsed()) return run_analyze(file, as_json);
    if (prior->parsed()) return run_prior(file, mode, as_json);
    if (bet->parsed()) return run_bet(file, state, as_json);
    if (check->parsed()) return run_check(theorem, count, seed, states, players, as_json);
    if (simulate_cmd->parsed()) return run_simulate(config_file, trace, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
