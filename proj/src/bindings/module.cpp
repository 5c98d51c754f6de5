// Python surface over the core operations: structure loading, diagnostics,
// prior search, bet construction, theorem sweeps, and the trading simulation.
// All rationals cross the boundary as exact "p/q" strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "doxa/harness.hpp"
#include "doxa/io.hpp"
#include "doxa/market.hpp"

namespace py = pybind11;
using namespace doxa;

namespace {

py::list state_list(const StateSpace& space, StateSet set) {
  py::list out;
  set.for_each([&](int w) { out.append(space.name(w)); });
  return out;
}

py::dict distribution_dict(const StateSpace& space, const Distribution& d) {
  py::dict out;
  for (int w = 0; w < space.size(); ++w) {
    if (sign(d.mass[w]) != 0) out[py::str(space.name(w))] = to_string(d.mass[w]);
  }
  return out;
}

// Opaque handle; structures are immutable after construction.
struct Structure {
  ProbabilisticBeliefStructure pbs;

  std::vector<std::string> states() const { return pbs.space().names(); }
  std::vector<std::string> players() const { return pbs.players(); }
  std::string to_json() const { return serialize_structure(pbs); }

  RandomVariable payoff_from_dict(const py::dict& values) const {
    RandomVariable f = RandomVariable::zeros(pbs.space().size());
    for (const auto& item : values) {
      int w = pbs.space().require(py::cast<std::string>(item.first));
      f.value[w] = parse_rational(py::cast<std::string>(item.second));
    }
    return f;
  }

  py::dict classify_dict() const {
    DelusionReport report = classify(pbs.induced());
    py::dict out;
    py::dict per_player;
    for (int i = 0; i < pbs.num_players(); ++i) {
      py::dict entry;
      entry["delusional"] = static_cast<bool>(report.delusional[i]);
      entry["deluded_states"] = state_list(pbs.space(), report.deluded[i]);
      per_player[py::str(pbs.player_name(i))] = entry;
    }
    out["players"] = per_player;
    out["non_singular"] = report.non_singular;
    out["interpersonal_credibility"] = report.interpersonal_credibility;
    return out;
  }

  py::list analyze_list() const {
    BeliefStructure bs = pbs.induced();
    std::vector<Partition> partitions;
    for (int i = 0; i < pbs.num_players(); ++i) partitions.push_back(pbs.partition(i));
    py::list rows;
    for (int w = 0; w < pbs.space().size(); ++w) {
      py::dict row;
      row["state"] = pbs.space().name(w);
      row["common_belief_set"] = state_list(pbs.space(), common_belief_set(bs, w).members);
      row["strong_cbt"] = strong_cbt(bs, w);
      WeakCbtResult weak = weak_cbt(bs, w);
      row["weak_cbt"] = weak.holds;
      if (weak.witness) row["witness"] = pbs.space().name(*weak.witness);
      row["meet_component"] =
          state_list(pbs.space(), meet_component(partitions, pbs.space(), w).members);
      rows.append(row);
    }
    return rows;
  }

  py::object common_prior(const std::string& mode) const {
    if (mode != "standard" && mode != "delusional") {
      throw py::value_error("mode must be 'standard' or 'delusional'");
    }
    PriorSearchResult result =
        mode == "standard" ? find_common_standard_prior(pbs) : find_common_delusional_prior(pbs);
    if (!result.prior) return py::none();
    return distribution_dict(pbs.space(), *result.prior);
  }

  bool is_prior(const py::dict& mass, const std::string& mode) const {
    Distribution mu{std::vector<Rational>(pbs.space().size())};
    for (const auto& item : mass) {
      int w = pbs.space().require(py::cast<std::string>(item.first));
      mu.mass[w] = parse_rational(py::cast<std::string>(item.second));
    }
    return mode == "standard" ? is_common_standard_prior(mu, pbs)
                              : is_common_delusional_prior(mu, pbs);
  }

  std::string expectation(const std::string& player, const py::dict& payoff,
                          const std::string& state) const {
    int i = pbs.require_player(player);
    int w = pbs.space().require(state);
    return to_string(posterior_expectation(pbs, i, payoff_from_dict(payoff), w));
  }

  bool bet_exists(const std::string& state) const {
    return brute_cb_bet_exists(pbs, pbs.space().require(state));
  }

  py::object find_bet(const std::string& state) const {
    int w = pbs.space().require(state);
    std::optional<Bet> bet = find_cb_agreeable_bet(pbs, w);
    if (!bet) return py::none();
    py::dict payoffs;
    for (int i = 0; i < pbs.num_players(); ++i) {
      py::dict row;
      for (int v = 0; v < pbs.space().size(); ++v) {
        row[py::str(pbs.space().name(v))] = to_string(bet->payoff[i].value[v]);
      }
      payoffs[py::str(pbs.player_name(i))] = row;
    }
    return payoffs;
  }
};

py::dict verdict_dict(const Verdict& v) {
  py::dict out;
  out["claim"] = v.claim;
  out["status"] = v.status == VerdictStatus::Pass   ? "pass"
                  : v.status == VerdictStatus::Fail ? "fail"
                                                    : "n/a";
  out["note"] = v.note;
  out["digest"] = v.digest;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact decision procedures for interactive belief structures.";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<ValidationError>(m, "StructureError");
  py::register_exception<WeakCbtAbsent>(m, "WeakCbtAbsent");

  py::class_<Structure>(m, "Structure")
      .def_property_readonly("states", &Structure::states)
      .def_property_readonly("players", &Structure::players)
      .def("to_json", &Structure::to_json)
      .def("classify", &Structure::classify_dict)
      .def("analyze", &Structure::analyze_list)
      .def("common_prior", &Structure::common_prior, py::arg("mode") = "delusional")
      .def("is_prior", &Structure::is_prior, py::arg("mass"), py::arg("mode") = "delusional")
      .def("expectation", &Structure::expectation, py::arg("player"), py::arg("payoff"),
           py::arg("state"))
      .def("bet_exists", &Structure::bet_exists, py::arg("state"))
      .def("find_bet", &Structure::find_bet, py::arg("state"));

  m.def(
      "parse_structure", [](const std::string& text) { return Structure{parse_structure(text)}; },
      py::arg("text"));
  m.def(
      "load_structure",
      [](const std::string& path) { return Structure{parse_structure_file(path)}; },
      py::arg("path"));
  m.def(
      "generate",
      [](std::uint64_t seed, int num_states, int num_players, bool non_singular, bool s5,
         int denominator_bound) {
        GeneratorConfig config;
        config.seed = seed;
        config.num_states = num_states;
        config.num_players = num_players;
        config.non_singular = non_singular;
        config.s5 = s5;
        config.denominator_bound = denominator_bound;
        return Structure{generate(config)};
      },
      py::arg("seed"), py::arg("num_states") = 4, py::arg("num_players") = 2,
      py::arg("non_singular") = false, py::arg("s5") = false, py::arg("denominator_bound") = 6);
  m.def(
      "check_theorem",
      [](const std::string& theorem, const Structure& s, const std::string& state) {
        if (theorem == "1") {
          return verdict_dict(check_theorem1(s.pbs, s.pbs.space().require(state)));
        }
        if (theorem == "2") return verdict_dict(check_theorem2(s.pbs));
        if (theorem == "prop1") return verdict_dict(check_prop1(s.pbs));
        if (theorem == "nobetting") return verdict_dict(check_no_betting_s5(s.pbs));
        throw py::value_error("theorem must be one of '1', '2', 'prop1', 'nobetting'");
      },
      py::arg("theorem"), py::arg("structure"), py::arg("state") = "");
  m.def(
      "sweep",
      [](const std::string& theorem, int count, std::uint64_t seed, int max_states,
         int max_players) {
        SweepConfig config;
        config.theorem = theorem;
        config.count = count;
        config.seed = seed;
        config.max_states = max_states;
        config.max_players = max_players;
        SweepOutcome outcome = run_sweep(config);
        py::dict out;
        out["passed"] = outcome.passed;
        out["failed"] = outcome.failed;
        out["not_applicable"] = outcome.not_applicable;
        out["failures"] = outcome.failures;
        return out;
      },
      py::arg("theorem"), py::arg("count") = 100, py::arg("seed") = 1, py::arg("max_states") = 5,
      py::arg("max_players") = 3);
  m.def(
      "simulate",
      [](const std::string& config_text) {
        MarketConfig config = parse_market_config(config_text);
        SimulationResult result = simulate(config);
        py::dict out;
        out["termination"] = result.reason == Termination::FixedPoint    ? "fixed-point"
                             : result.reason == Termination::Breakdown ? "breakdown"
                                                                       : "round-cap";
        out["rounds_elapsed"] = result.rounds_elapsed;
        if (!result.diagnostic.empty()) out["diagnostic"] = result.diagnostic;
        py::list rounds;
        for (const SimulationRound& round : result.rounds) {
          py::dict entry;
          for (size_t i = 0; i < config.traders.size(); ++i) {
            py::dict tr;
            tr["possibility"] = state_list(config.space, round.trader[i].possibility);
            if (round.trader[i].posterior) {
              tr["posterior"] = to_string(*round.trader[i].posterior);
            }
            if (round.trader[i].action) {
              tr["action"] = *round.trader[i].action == TradeAction::Buy ? "buy" : "sell";
            }
            entry[py::str(config.traders[i])] = tr;
          }
          rounds.append(entry);
        }
        out["rounds"] = rounds;
        return out;
      },
      py::arg("config_text"));
  m.def(
      "diagnose",
      [](const std::string& text) {
        StructureDiagnostics diag = diagnose_structure(text);
        py::dict out;
        out["parsed"] = diag.parsed;
        out["partitional"] = diag.partitional;
        out["kd45"] = diag.kd45;
        out["problems"] = diag.problems;
        return out;
      },
      py::arg("text"));
}
