#include "doxa/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace doxa {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

void require_version(const Json& j) {
  if (!j.is_object()) throw ParseError("top level must be an object");
  if (!j.contains("format_version") || !j["format_version"].is_number_integer() ||
      j["format_version"].get<int>() != 1) {
    throw ParseError("missing or unsupported format_version (expected 1)");
  }
}

std::vector<std::string> parse_string_array(const Json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_array()) {
    throw ParseError("field '" + field + "' must be an array");
  }
  std::vector<std::string> out;
  for (const auto& item : j[field]) {
    if (!item.is_string()) throw ParseError("field '" + field + "' must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

Rational parse_rational_field(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": rationals are \"p/q\" strings");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

StateSet parse_state_list(const Json& j, const StateSpace& space, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of state names");
  StateSet out;
  for (const auto& item : j) {
    if (!item.is_string()) throw ParseError(where + ": state names are strings");
    out.add(space.require(item.get<std::string>()));
  }
  return out;
}

std::vector<TypeFunction> parse_types(const Json& types, const StateSpace& space,
                                      const std::vector<std::string>& players) {
  if (!types.is_object()) throw ParseError("'types' must map players to belief tables");
  std::vector<TypeFunction> out(players.size());
  for (size_t i = 0; i < players.size(); ++i) {
    if (!types.contains(players[i])) {
      throw ParseError("'types' missing player '" + players[i] + "'");
    }
    const Json& table = types[players[i]];
    if (!table.is_object()) throw ParseError("types of '" + players[i] + "' must be an object");
    out[i].at.assign(space.size(), Distribution{std::vector<Rational>(space.size())});
    for (auto it = table.begin(); it != table.end(); ++it) {
      int w = space.require(it.key());
      if (!it.value().is_object()) {
        throw ParseError("type of '" + players[i] + "' at '" + it.key() + "' must be an object");
      }
      for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
        int v = space.require(jt.key());
        out[i].at[w].mass[v] = parse_rational_field(
            jt.value(), "types." + players[i] + "." + it.key() + "." + jt.key());
      }
    }
    for (int w = 0; w < space.size(); ++w) {
      if (!table.contains(space.name(w))) {
        throw ParseError("type of '" + players[i] + "' missing state '" + space.name(w) + "'");
      }
    }
  }
  return out;
}

Partition parse_partition(const Json& cells, const StateSpace& space, const std::string& where) {
  if (!cells.is_array()) throw ParseError(where + ": partitions are arrays of cells");
  std::vector<StateSet> parsed;
  for (const auto& cell : cells) parsed.push_back(parse_state_list(cell, space, where));
  return make_partition(space, std::move(parsed));
}

ProbabilisticBeliefStructure structure_from_json(const Json& j) {
  require_version(j);
  StateSpace space(parse_string_array(j, "states"));
  std::vector<std::string> players = parse_string_array(j, "players");

  if (j.contains("types")) {
    return ProbabilisticBeliefStructure(space, players, parse_types(j["types"], space, players));
  }
  if (!j.contains("partitions")) {
    throw ParseError("structure needs either 'types' or 'partitions'");
  }
  const Json& partitions = j["partitions"];
  if (!partitions.is_object()) throw ParseError("'partitions' must map players to cell arrays");
  std::vector<PossibilityFunction> possibility;
  for (const std::string& player : players) {
    if (!partitions.contains(player)) {
      throw ParseError("'partitions' missing player '" + player + "'");
    }
    Partition pi = parse_partition(partitions[player], space, "partitions." + player);
    std::vector<StateSet> belief(space.size());
    if (j.contains("beliefs") && j["beliefs"].contains(player)) {
      const Json& cells = j["beliefs"][player];
      if (!cells.is_array() || cells.size() != pi.cells.size()) {
        throw ParseError("beliefs of '" + player + "' must list one set per partition cell");
      }
      for (size_t c = 0; c < pi.cells.size(); ++c) {
        StateSet b = parse_state_list(cells[c], space, "beliefs." + player);
        pi.cells[c].for_each([&](int w) { belief[w] = b; });
      }
    } else {
      for (int w = 0; w < space.size(); ++w) belief[w] = pi.cell_of(w);
    }
    possibility.push_back(make_possibility_function(space, std::move(pi), std::move(belief)));
  }
  BeliefStructure bs(space, players, std::move(possibility));
  return realize_probabilistic(bs);
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ProbabilisticBeliefStructure parse_structure(const std::string& text) {
  return structure_from_json(parse_json(text));
}

ProbabilisticBeliefStructure parse_structure_file(const std::string& path) {
  return parse_structure(read_file(path));
}

std::string serialize_structure(const ProbabilisticBeliefStructure& pbs) {
  Json j;
  j["format_version"] = 1;
  j["states"] = pbs.space().names();
  j["players"] = pbs.players();
  Json types = Json::object();
  for (int i = 0; i < pbs.num_players(); ++i) {
    Json table = Json::object();
    for (int w = 0; w < pbs.space().size(); ++w) {
      Json row = Json::object();
      const Distribution& t = pbs.type_at(i, w);
      for (int v = 0; v < pbs.space().size(); ++v) {
        if (sign(t.mass[v]) != 0) row[pbs.space().name(v)] = to_string(t.mass[v]);
      }
      table[pbs.space().name(w)] = std::move(row);
    }
    types[pbs.player_name(i)] = std::move(table);
  }
  j["types"] = std::move(types);
  return j.dump(2) + "\n";
}

StructureDiagnostics diagnose_structure(const std::string& text) {
  StructureDiagnostics diag;
  Json j;
  try {
    j = parse_json(text);
    require_version(j);
  } catch (const ParseError& e) {
    diag.problems.push_back(e.what());
    return diag;
  }
  diag.parsed = true;
  try {
    ProbabilisticBeliefStructure pbs = structure_from_json(j);
    diag.partitional = true;
    diag.kd45 = true;  // induced possibility functions always satisfy KD45
    (void)pbs;
  } catch (const std::exception& e) {
    diag.problems.push_back(e.what());
  }
  return diag;
}

MarketConfig parse_market_config(const std::string& text) {
  Json j = parse_json(text);
  require_version(j);
  StateSpace space(parse_string_array(j, "states"));
  std::vector<std::string> traders = parse_string_array(j, "players");

  if (!j.contains("partitions")) throw ParseError("market config needs 'partitions'");
  std::vector<Partition> signal;
  for (const std::string& trader : traders) {
    if (!j["partitions"].contains(trader)) {
      throw ParseError("'partitions' missing trader '" + trader + "'");
    }
    signal.push_back(parse_partition(j["partitions"][trader], space, "partitions." + trader));
  }

  if (!j.contains("prior") || !j["prior"].is_object()) {
    throw ParseError("market config needs a 'prior' object");
  }
  Distribution prior{std::vector<Rational>(space.size())};
  for (auto it = j["prior"].begin(); it != j["prior"].end(); ++it) {
    prior.mass[space.require(it.key())] = parse_rational_field(it.value(), "prior." + it.key());
  }

  std::vector<std::vector<int>> distortion(traders.size());
  for (size_t i = 0; i < traders.size(); ++i) {
    distortion[i].resize(signal[i].cells.size());
    for (size_t c = 0; c < signal[i].cells.size(); ++c) distortion[i][c] = static_cast<int>(c);
  }
  if (j.contains("distortions")) {
    if (!j["distortions"].is_object()) {
      throw ParseError("'distortions' must map traders to cell mappings");
    }
    for (auto it = j["distortions"].begin(); it != j["distortions"].end(); ++it) {
      int trader = -1;
      for (size_t i = 0; i < traders.size(); ++i) {
        if (traders[i] == it.key()) trader = static_cast<int>(i);
      }
      if (trader < 0) throw ParseError("distortion for unknown trader '" + it.key() + "'");
      if (!it.value().is_array()) {
        throw ParseError("distortions of '" + it.key() + "' must be an array of {from,to}");
      }
      for (const auto& entry : it.value()) {
        if (!entry.is_object() || !entry.contains("from") || !entry.contains("to")) {
          throw ParseError("distortion entries need 'from' and 'to' cells");
        }
        StateSet from = parse_state_list(entry["from"], space, "distortions." + it.key());
        StateSet to = parse_state_list(entry["to"], space, "distortions." + it.key());
        int from_cell = -1;
        int to_cell = -1;
        for (size_t c = 0; c < signal[trader].cells.size(); ++c) {
          if (signal[trader].cells[c] == from) from_cell = static_cast<int>(c);
          if (signal[trader].cells[c] == to) to_cell = static_cast<int>(c);
        }
        if (from_cell < 0 || to_cell < 0) {
          throw ParseError("distortion of '" + it.key() +
                           "' references sets that are not cells of their partition");
        }
        distortion[trader][from_cell] = to_cell;
      }
    }
  }

  if (!j.contains("event")) throw ParseError("market config needs 'event'");
  StateSet event = parse_state_list(j["event"], space, "event");
  if (!j.contains("threshold")) throw ParseError("market config needs 'threshold'");
  Rational threshold = parse_rational_field(j["threshold"], "threshold");
  if (!j.contains("true_state") || !j["true_state"].is_string()) {
    throw ParseError("market config needs 'true_state'");
  }
  int true_state = space.require(j["true_state"].get<std::string>());
  int max_rounds = 16;
  if (j.contains("max_rounds")) {
    if (!j["max_rounds"].is_number_integer()) throw ParseError("'max_rounds' must be an integer");
    max_rounds = j["max_rounds"].get<int>();
  }
  return make_market_config(std::move(space), std::move(traders), std::move(prior),
                            std::move(signal), std::move(distortion), event, std::move(threshold),
                            true_state, max_rounds);
}

MarketConfig parse_market_config_file(const std::string& path) {
  return parse_market_config(read_file(path));
}

std::string serialize_market_config(const MarketConfig& cfg) {
  Json j;
  j["format_version"] = 1;
  j["states"] = cfg.space.names();
  j["players"] = cfg.traders;
  Json partitions = Json::object();
  for (size_t i = 0; i < cfg.traders.size(); ++i) {
    Json cells = Json::array();
    for (const StateSet& cell : cfg.signal[i].cells) {
      Json names = Json::array();
      cell.for_each([&](int w) { names.push_back(cfg.space.name(w)); });
      cells.push_back(std::move(names));
    }
    partitions[cfg.traders[i]] = std::move(cells);
  }
  j["partitions"] = std::move(partitions);
  Json prior = Json::object();
  for (int w = 0; w < cfg.space.size(); ++w) {
    if (sign(cfg.prior.mass[w]) != 0) prior[cfg.space.name(w)] = to_string(cfg.prior.mass[w]);
  }
  j["prior"] = std::move(prior);
  Json distortions = Json::object();
  for (size_t i = 0; i < cfg.traders.size(); ++i) {
    Json entries = Json::array();
    for (size_t c = 0; c < cfg.distortion[i].size(); ++c) {
      if (cfg.distortion[i][c] == static_cast<int>(c)) continue;
      Json entry = Json::object();
      Json from = Json::array();
      cfg.signal[i].cells[c].for_each([&](int w) { from.push_back(cfg.space.name(w)); });
      Json to = Json::array();
      cfg.signal[i].cells[cfg.distortion[i][c]].for_each(
          [&](int w) { to.push_back(cfg.space.name(w)); });
      entry["from"] = std::move(from);
      entry["to"] = std::move(to);
      entries.push_back(std::move(entry));
    }
    if (!entries.empty()) distortions[cfg.traders[i]] = std::move(entries);
  }
  if (!distortions.empty()) j["distortions"] = std::move(distortions);
  Json event = Json::array();
  cfg.event.for_each([&](int w) { event.push_back(cfg.space.name(w)); });
  j["event"] = std::move(event);
  j["threshold"] = to_string(cfg.threshold);
  j["true_state"] = cfg.space.name(cfg.true_state);
  j["max_rounds"] = cfg.max_rounds;
  return j.dump(2) + "\n";
}

}  // namespace doxa
