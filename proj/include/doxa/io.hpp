#pragma once

#include <string>
#include <vector>

#include "doxa/market.hpp"
#include "doxa/structures.hpp"

namespace doxa {

// Structure files are JSON with a top-level format_version, states, players,
// and either a `types` map (player -> state -> state -> "p/q") or a
// `partitions` map (player -> array of cells) with optional parallel
// `beliefs`; the latter dialect goes through the canonical uniform
// realization.
ProbabilisticBeliefStructure parse_structure(const std::string& text);
ProbabilisticBeliefStructure parse_structure_file(const std::string& path);

// Canonical serialization: ordered keys, nonzero masses only, rationals as
// "p/q" strings. parse(serialize(x)) followed by serialize is a byte-for-byte
// fixed point.
std::string serialize_structure(const ProbabilisticBeliefStructure& pbs);

struct StructureDiagnostics {
  bool parsed = false;
  bool partitional = false;
  bool kd45 = false;
  std::vector<std::string> problems;
};
StructureDiagnostics diagnose_structure(const std::string& text);

// Market files extend the structure dialect (partitions variant) with
// `prior`, `distortions`, `event`, `threshold`, `true_state`, `max_rounds`.
MarketConfig parse_market_config(const std::string& text);
MarketConfig parse_market_config_file(const std::string& path);
std::string serialize_market_config(const MarketConfig& config);

std::string read_file(const std::string& path);

}  // namespace doxa
