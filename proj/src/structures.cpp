#include "doxa/structures.hpp"

#include <algorithm>

namespace doxa {

Rational Distribution::mass_of(StateSet set) const {
  Rational total = 0;
  set.for_each([&](int i) { total += mass[i]; });
  return total;
}

StateSet Distribution::support() const {
  StateSet s;
  for (int i = 0; i < static_cast<int>(mass.size()); ++i) {
    if (sign(mass[i]) > 0) s.add(i);
  }
  return s;
}

RandomVariable RandomVariable::indicator(StateSet set, int n) {
  RandomVariable f = zeros(n);
  set.for_each([&](int i) { f.value[i] = 1; });
  return f;
}

namespace {

void check_distribution(const StateSpace& space, const Distribution& d, const std::string& where) {
  if (static_cast<int>(d.mass.size()) != space.size()) {
    throw ValidationError(where + ": distribution over " + std::to_string(d.mass.size()) +
                          " states, space has " + std::to_string(space.size()));
  }
  Rational total = 0;
  for (int i = 0; i < space.size(); ++i) {
    if (sign(d.mass[i]) < 0) {
      throw ValidationError(where + ": negative mass at state '" + space.name(i) + "'");
    }
    total += d.mass[i];
  }
  if (total != 1) {
    throw ValidationError(where + ": masses sum to " + to_string(total) + ", expected 1");
  }
}

}  // namespace

Partition make_partition(const StateSpace& space, std::vector<StateSet> cells) {
  StateSet seen;
  for (const StateSet& cell : cells) {
    if (cell.empty()) throw ValidationError("partition with an empty cell");
    if (cell.intersects(seen)) throw ValidationError("partition cells overlap");
    seen |= cell;
  }
  if (!(seen == space.all())) throw ValidationError("partition cells do not cover the space");
  std::sort(cells.begin(), cells.end(),
            [](StateSet a, StateSet b) { return a.first() < b.first(); });
  Partition p;
  p.cells = std::move(cells);
  p.cell_index.assign(space.size(), -1);
  for (int c = 0; c < p.num_cells(); ++c) {
    p.cells[c].for_each([&](int w) { p.cell_index[w] = c; });
  }
  return p;
}

PossibilityFunction make_possibility_function(const StateSpace& space, Partition partition,
                                              std::vector<StateSet> belief) {
  if (static_cast<int>(belief.size()) != space.size()) {
    throw ValidationError("possibility function not defined at every state");
  }
  for (int w = 0; w < space.size(); ++w) {
    if (belief[w].empty()) {
      throw ValidationError("empty possibility set at state '" + space.name(w) + "'");
    }
    if (!belief[w].subset_of(partition.cell_of(w))) {
      throw ValidationError("possibility set escapes the partition cell at state '" +
                            space.name(w) + "'");
    }
  }
  // Measurability: constant on partition cells. Trapping then follows from
  // b(w) being a subset of the cell.
  for (const StateSet& cell : partition.cells) {
    StateSet value = belief[cell.first()];
    bool ok = true;
    cell.for_each([&](int w) { ok = ok && belief[w] == value; });
    if (!ok) {
      throw ValidationError("possibility function not measurable on cell " +
                            space.describe(cell));
    }
  }
  return PossibilityFunction{std::move(partition), std::move(belief)};
}

Partition induce_partition(const StateSpace& space, const TypeFunction& type) {
  std::vector<StateSet> cells;
  std::vector<bool> placed(space.size(), false);
  for (int w = 0; w < space.size(); ++w) {
    if (placed[w]) continue;
    StateSet cell = StateSet::single(w);
    for (int v = w + 1; v < space.size(); ++v) {
      if (!placed[v] && type.at[v] == type.at[w]) {
        cell.add(v);
        placed[v] = true;
      }
    }
    cells.push_back(cell);
  }
  return make_partition(space, std::move(cells));
}

std::vector<std::string> validate_type_profile(const StateSpace& space,
                                               const std::vector<TypeFunction>& types) {
  std::vector<std::string> problems;
  for (int i = 0; i < static_cast<int>(types.size()); ++i) {
    const TypeFunction& t = types[i];
    if (static_cast<int>(t.at.size()) != space.size()) {
      problems.push_back("player " + std::to_string(i) + ": type function not total");
      continue;
    }
    bool shapes_ok = true;
    for (int w = 0; w < space.size(); ++w) {
      try {
        check_distribution(space, t.at[w], "state '" + space.name(w) + "'");
      } catch (const ValidationError& e) {
        problems.push_back("player " + std::to_string(i) + ", " + e.what());
        shapes_ok = false;
      }
    }
    if (!shapes_ok) continue;
    Partition pi = induce_partition(space, t);
    for (int w = 0; w < space.size(); ++w) {
      if (t.at[w].mass_of(pi.cell_of(w)) != 1) {
        problems.push_back("player " + std::to_string(i) + ": type at state '" + space.name(w) +
                           "' puts mass outside its own cell (not partitional)");
      }
    }
  }
  return problems;
}

ProbabilisticBeliefStructure::ProbabilisticBeliefStructure(StateSpace space,
                                                           std::vector<std::string> players,
                                                           std::vector<TypeFunction> types)
    : space_(std::move(space)), players_(std::move(players)), types_(std::move(types)) {
  if (players_.empty()) throw ValidationError("at least one player required");
  if (players_.size() != types_.size()) {
    throw ValidationError("player list and type profile sizes differ");
  }
  for (size_t i = 0; i < players_.size(); ++i) {
    for (size_t j = i + 1; j < players_.size(); ++j) {
      if (players_[i] == players_[j]) throw ValidationError("duplicate player '" + players_[i] + "'");
    }
  }
  auto problems = validate_type_profile(space_, types_);
  if (!problems.empty()) throw ValidationError(problems.front());

  for (int i = 0; i < num_players(); ++i) {
    Partition pi = induce_partition(space_, types_[i]);
    std::vector<StateSet> belief(space_.size());
    for (int w = 0; w < space_.size(); ++w) {
      belief[w] = types_[i].at[w].support();
    }
    beliefs_.push_back(make_possibility_function(space_, pi, std::move(belief)));
    partitions_.push_back(std::move(pi));
  }
}

int ProbabilisticBeliefStructure::require_player(const std::string& name) const {
  for (int i = 0; i < num_players(); ++i) {
    if (players_[i] == name) return i;
  }
  throw ParseError("unknown player '" + name + "'");
}

BeliefStructure ProbabilisticBeliefStructure::induced() const {
  return BeliefStructure(space_, players_, beliefs_);
}

BeliefStructure::BeliefStructure(StateSpace space, std::vector<std::string> players,
                                 std::vector<PossibilityFunction> possibility)
    : space_(std::move(space)), players_(std::move(players)), possibility_(std::move(possibility)) {
  if (players_.empty()) throw ValidationError("at least one player required");
  if (players_.size() != possibility_.size()) {
    throw ValidationError("player list and possibility profile sizes differ");
  }
  for (const PossibilityFunction& pf : possibility_) {
    if (static_cast<int>(pf.belief.size()) != space_.size()) {
      throw ValidationError("possibility function not defined at every state");
    }
  }
}

BeliefStructure induce_belief_structure(const ProbabilisticBeliefStructure& pbs) {
  return pbs.induced();
}

ProbabilisticBeliefStructure realize_probabilistic(const BeliefStructure& bs) {
  const StateSpace& space = bs.space();
  std::vector<TypeFunction> types;
  for (int i = 0; i < bs.num_players(); ++i) {
    TypeFunction t;
    t.at.resize(space.size());
    for (int w = 0; w < space.size(); ++w) {
      StateSet cell = bs.belief_at(i, w);
      Distribution d{std::vector<Rational>(space.size())};
      Rational share = make_rational(1, cell.count());
      cell.for_each([&](int v) { d.mass[v] = share; });
      t.at[w] = std::move(d);
    }
    types.push_back(std::move(t));
  }
  return ProbabilisticBeliefStructure(space, bs.players(), std::move(types));
}

DelusionReport classify(const BeliefStructure& bs) {
  const int n = bs.space().size();
  DelusionReport report;
  report.deluded.resize(bs.num_players());
  report.delusional.resize(bs.num_players());
  for (int i = 0; i < bs.num_players(); ++i) {
    for (int w = 0; w < n; ++w) {
      if (!bs.belief_at(i, w).contains(w)) report.deluded[i].add(w);
    }
    report.delusional[i] = !report.deluded[i].empty();
  }
  report.non_singular = true;
  report.interpersonal_credibility = true;
  report.state_class.resize(n);
  for (int w = 0; w < n; ++w) {
    int deluded_count = 0;
    StateSet common = bs.space().all();
    for (int i = 0; i < bs.num_players(); ++i) {
      if (report.deluded[i].contains(w)) ++deluded_count;
      common &= bs.belief_at(i, w);
    }
    if (deluded_count == 0) {
      report.state_class[w] = DelusionReport::StateClass::AllNonDeluded;
    } else if (deluded_count == bs.num_players()) {
      report.state_class[w] = DelusionReport::StateClass::AllDeluded;
    } else {
      report.state_class[w] = DelusionReport::StateClass::Mixed;
      report.non_singular = false;
    }
    if (common.empty()) report.interpersonal_credibility = false;
  }
  return report;
}

StateSet believes(const BeliefStructure& bs, int player, StateSet event) {
  StateSet out;
  for (int w = 0; w < bs.space().size(); ++w) {
    if (bs.belief_at(player, w).subset_of(event)) out.add(w);
  }
  return out;
}

}  // namespace doxa
