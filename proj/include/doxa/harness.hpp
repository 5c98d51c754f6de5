#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "doxa/betting.hpp"
#include "doxa/priors.hpp"

namespace doxa {

// splitmix64; the sweeps must replay bit-for-bit across platforms, so no
// standard-library distributions anywhere.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n);
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int num_states = 4;
  int num_players = 2;
  bool non_singular = false;  // per-state all-or-none delusion
  bool s5 = false;            // no deluded states at all
  int denominator_bound = 6;  // granularity of the sampled type weights
};

// Deterministic in the seed; always a valid partitional profile satisfying
// the requested flags.
ProbabilisticBeliefStructure generate(const GeneratorConfig& config);

std::uint64_t structure_digest(const ProbabilisticBeliefStructure& pbs);

// Joint max-min LP over the whole common belief set of `state`; independent
// of the constructive per-component pipeline.
bool brute_cb_bet_exists(const ProbabilisticBeliefStructure& pbs, int state);

enum class VerdictStatus { Pass, Fail, NotApplicable };

struct Verdict {
  std::uint64_t digest = 0;
  std::string claim;
  VerdictStatus status = VerdictStatus::NotApplicable;
  std::string note;
  std::optional<int> state;
  std::optional<Distribution> prior;
  std::optional<Bet> bet;
};

// Prior existence (consistent closed non-deluded component of the common
// belief set) against bet existence (joint LP), plus agreement of the
// constructive pipeline with the joint oracle.
Verdict check_theorem1(const ProbabilisticBeliefStructure& pbs, int state);

// Non-singular structures: common delusional prior iff no common-belief
// agreeable bet at any state.
Verdict check_theorem2(const ProbabilisticBeliefStructure& pbs);

// S5 structures: common standard prior iff no common-knowledge agreeable bet.
Verdict check_no_betting_s5(const ProbabilisticBeliefStructure& pbs);

// Strong common belief in truth everywhere iff non-singular.
Verdict check_prop1(const ProbabilisticBeliefStructure& pbs);

struct SweepConfig {
  std::string theorem = "1";  // "1" | "2" | "prop1" | "nobetting"
  int count = 100;
  std::uint64_t seed = 1;
  int max_states = 5;
  int max_players = 3;
};

struct SweepOutcome {
  int passed = 0;
  int failed = 0;
  int not_applicable = 0;
  std::vector<std::string> failures;  // one line per failing instance
};

// Runs `count` generated instances; with a log stream, prints one line per
// instance. Instance configs derive deterministically from (seed, index).
SweepOutcome run_sweep(const SweepConfig& config, std::ostream* log = nullptr);

}  // namespace doxa
