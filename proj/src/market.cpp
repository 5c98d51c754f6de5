#include "doxa/market.hpp"

namespace doxa {

MarketConfig make_market_config(StateSpace space, std::vector<std::string> traders,
                                Distribution prior, std::vector<Partition> signal,
                                std::vector<std::vector<int>> distortion, StateSet event,
                                Rational threshold, int true_state, int max_rounds) {
  if (traders.size() < 2) throw ValidationError("market needs at least two traders");
  if (signal.size() != traders.size()) throw ValidationError("one signal partition per trader");
  if (distortion.size() != traders.size()) throw ValidationError("one distortion map per trader");
  if (static_cast<int>(prior.mass.size()) != space.size()) {
    throw ValidationError("prior over the wrong space");
  }
  Rational total = 0;
  for (const Rational& m : prior.mass) {
    if (sign(m) < 0) throw ValidationError("prior with negative mass");
    total += m;
  }
  if (total != 1) throw ValidationError("prior masses must sum to 1");
  if (sign(threshold) < 0 || threshold > 1) throw ValidationError("threshold must lie in [0,1]");
  if (true_state < 0 || true_state >= space.size()) throw ValidationError("unknown true state");
  if (max_rounds < 1) throw ValidationError("max rounds must be positive");
  if (!event.subset_of(space.all())) throw ValidationError("event outside the space");
  for (size_t i = 0; i < traders.size(); ++i) {
    if (distortion[i].size() != signal[i].cells.size()) {
      throw ValidationError("distortion map must cover every cell of trader '" + traders[i] + "'");
    }
    for (int target : distortion[i]) {
      if (target < 0 || target >= static_cast<int>(signal[i].cells.size())) {
        throw ValidationError("distortion of trader '" + traders[i] +
                              "' maps outside their partition");
      }
    }
  }
  return MarketConfig{std::move(space), std::move(traders), std::move(prior), std::move(signal),
                      std::move(distortion), event, std::move(threshold), true_state, max_rounds};
}

TradeAction decide(StateSet possibility, const Distribution& prior, StateSet event,
                   const Rational& threshold) {
  auto posterior = conditional_expectation(
      RandomVariable::indicator(event, static_cast<int>(prior.mass.size())), prior, possibility);
  if (!posterior) throw ValidationError("decision with zero conditioning mass");
  return *posterior >= threshold ? TradeAction::Buy : TradeAction::Sell;
}

namespace {

// Round-t action of a correctly-processing trader as a function of the true
// state; unset when the prior gives the information set zero mass.
using ActionFn = std::vector<std::optional<TradeAction>>;

std::optional<TradeAction> safe_decide(StateSet possibility, const MarketConfig& cfg) {
  if (possibility.empty() || sign(cfg.prior.mass_of(possibility)) == 0) return std::nullopt;
  return decide(possibility, cfg.prior, cfg.event, cfg.threshold);
}

}  // namespace

SimulationResult simulate(const MarketConfig& cfg) {
  const int n = static_cast<int>(cfg.traders.size());
  SimulationResult result;

  // Correct-model information sets, per trader per hypothetical true state.
  std::vector<std::vector<StateSet>> model(n, std::vector<StateSet>(cfg.space.size()));
  for (int i = 0; i < n; ++i) {
    for (int w = 0; w < cfg.space.size(); ++w) model[i][w] = cfg.signal[i].cell_of(w);
  }
  // Actual possibility sets start from the distorted image of the true cell.
  std::vector<StateSet> actual(n);
  for (int i = 0; i < n; ++i) {
    int cell = cfg.signal[i].cell_index[cfg.true_state];
    actual[i] = cfg.signal[i].cells[cfg.distortion[i][cell]];
  }

  for (int round = 1; round <= cfg.max_rounds; ++round) {
    SimulationRound log;
    log.trader.resize(n);
    bool broke = false;
    std::vector<std::optional<TradeAction>> announced(n);
    for (int i = 0; i < n; ++i) {
      log.trader[i].possibility = actual[i];
      if (actual[i].empty() || sign(cfg.prior.mass_of(actual[i])) == 0) {
        broke = true;
        continue;
      }
      log.trader[i].posterior = *conditional_expectation(
          RandomVariable::indicator(cfg.event, cfg.space.size()), cfg.prior, actual[i]);
      announced[i] = decide(actual[i], cfg.prior, cfg.event, cfg.threshold);
      log.trader[i].action = announced[i];
    }
    result.rounds.push_back(std::move(log));
    result.rounds_elapsed = round;
    if (broke) {
      result.reason = Termination::Breakdown;
      result.diagnostic = "possibility set with zero prior mass";
      return result;
    }

    ActionFn model_action_blank(cfg.space.size());
    std::vector<ActionFn> model_action(n, model_action_blank);
    for (int i = 0; i < n; ++i) {
      for (int w = 0; w < cfg.space.size(); ++w) {
        model_action[i][w] = safe_decide(model[i][w], cfg);
      }
    }

    // Refinement: keep states where the correct model of each other trader
    // announces what was actually heard.
    std::vector<StateSet> next(n);
    for (int i = 0; i < n; ++i) {
      next[i] = actual[i];
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        StateSet matching;
        for (int w = 0; w < cfg.space.size(); ++w) {
          if (model_action[j][w] == announced[j]) matching.add(w);
        }
        next[i] &= matching;
      }
    }
    std::vector<std::vector<StateSet>> model_next(n,
                                                  std::vector<StateSet>(cfg.space.size()));
    for (int i = 0; i < n; ++i) {
      for (int w = 0; w < cfg.space.size(); ++w) {
        model_next[i][w] = model[i][w];
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          StateSet matching;
          for (int v = 0; v < cfg.space.size(); ++v) {
            if (model_action[j][v] == model_action[j][w]) matching.add(v);
          }
          model_next[i][w] &= matching;
        }
      }
    }

    bool changed = false;
    for (int i = 0; i < n; ++i) {
      if (!(next[i] == actual[i])) changed = true;
      if (next[i].empty()) {
        result.reason = Termination::Breakdown;
        result.diagnostic = "trader '" + cfg.traders[i] + "' refined to the empty set";
        return result;
      }
    }
    // Quiet rounds still sharpen the correct model; the fixed point is
    // reached only once nothing (observable or modeled) moves, at which
    // point the announced actions are common knowledge.
    if (!changed && model_next == model) {
      result.reason = Termination::FixedPoint;
      return result;
    }
    actual = std::move(next);
    model = std::move(model_next);
  }
  result.reason = Termination::RoundCap;
  return result;
}

}  // namespace doxa
