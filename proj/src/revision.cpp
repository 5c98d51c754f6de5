#include "doxa/revision.hpp"

namespace doxa {

namespace {

RevisionOutcome condition_on(const Distribution& mu, StateSet cell) {
  Rational total = mu.mass_of(cell);
  if (sign(total) == 0) return std::nullopt;
  Distribution out{std::vector<Rational>(mu.mass.size())};
  cell.for_each([&](int w) { out.mass[w] = mu.mass[w] / total; });
  return out;
}

}  // namespace

RevisionOutcome standard_revision(const Distribution& mu, const Partition& pi, int state) {
  return condition_on(mu, pi.cell_of(state));
}

RevisionOutcome delusional_revision(const Distribution& mu, const PossibilityFunction& b,
                                    int state) {
  return condition_on(mu, b.at(state));
}

std::optional<Rational> conditional_expectation(const RandomVariable& f, const Distribution& mu,
                                                StateSet cell) {
  Rational total = mu.mass_of(cell);
  if (sign(total) == 0) return std::nullopt;
  Rational acc = 0;
  cell.for_each([&](int w) { acc += f.value[w] * mu.mass[w]; });
  return Rational(acc / total);
}

Rational posterior_expectation(const ProbabilisticBeliefStructure& pbs, int player,
                               const RandomVariable& f, int state) {
  const Distribution& t = pbs.type_at(player, state);
  Rational acc = 0;
  pbs.partition(player).cell_of(state).for_each([&](int w) { acc += t.mass[w] * f.value[w]; });
  return acc;
}

namespace {

template <typename Revise>
bool is_prior(const Distribution& mu, const ProbabilisticBeliefStructure& pbs, int player,
              Revise&& revise) {
  for (int w = 0; w < pbs.space().size(); ++w) {
    RevisionOutcome revised = revise(w);
    if (!revised || !(*revised == pbs.type_at(player, w))) return false;
  }
  return true;
}

}  // namespace

bool is_standard_prior(const Distribution& mu, const ProbabilisticBeliefStructure& pbs,
                       int player) {
  return is_prior(mu, pbs, player,
                  [&](int w) { return standard_revision(mu, pbs.partition(player), w); });
}

bool is_delusional_prior(const Distribution& mu, const ProbabilisticBeliefStructure& pbs,
                         int player) {
  return is_prior(mu, pbs, player,
                  [&](int w) { return delusional_revision(mu, pbs.possibility(player), w); });
}

bool is_common_standard_prior(const Distribution& mu, const ProbabilisticBeliefStructure& pbs) {
  for (int i = 0; i < pbs.num_players(); ++i) {
    if (!is_standard_prior(mu, pbs, i)) return false;
  }
  return true;
}

bool is_common_delusional_prior(const Distribution& mu, const ProbabilisticBeliefStructure& pbs) {
  for (int i = 0; i < pbs.num_players(); ++i) {
    if (!is_delusional_prior(mu, pbs, i)) return false;
  }
  return true;
}

}  // namespace doxa
