#pragma once

#include <optional>
#include <string>
#include <vector>

#include "doxa/revision.hpp"
#include "doxa/structures.hpp"

namespace doxa {

enum class TradeAction { Buy, Sell };

struct MarketConfig {
  StateSpace space;
  std::vector<std::string> traders;
  Distribution prior;                       // common prior p
  std::vector<Partition> signal;            // per trader
  std::vector<std::vector<int>> distortion; // per trader: cell index -> cell index
  StateSet event;
  Rational threshold;                        // in [0, 1]
  int true_state = 0;
  int max_rounds = 16;
};

MarketConfig make_market_config(StateSpace space, std::vector<std::string> traders,
                                Distribution prior, std::vector<Partition> signal,
                                std::vector<std::vector<int>> distortion, StateSet event,
                                Rational threshold, int true_state, int max_rounds);

// Buy iff the conditional probability of the event reaches the threshold
// (weak inequality). Requires positive conditioning mass.
TradeAction decide(StateSet possibility, const Distribution& prior, StateSet event,
                   const Rational& threshold);

enum class Termination { FixedPoint, Breakdown, RoundCap };

struct TraderRound {
  StateSet possibility;
  std::optional<Rational> posterior;  // of the event; empty on zero mass
  std::optional<TradeAction> action;
};

struct SimulationRound {
  std::vector<TraderRound> trader;
};

struct SimulationResult {
  std::vector<SimulationRound> rounds;
  Termination reason = Termination::RoundCap;
  int rounds_elapsed = 0;
  std::string diagnostic;
};

// Public-announcement dynamics with distorted initial signals: each trader
// starts from the distorted image of their true-state cell, announces the
// threshold action, and keeps exactly the states at which the undistorted
// model of each other trader would have announced what was heard.
SimulationResult simulate(const MarketConfig& config);

}  // namespace doxa
