#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parikh/automaton.hpp"
#include "parikh/resolver.hpp"

namespace parikh {

/// The run a resolver builds on w. Throws ResolverFault naming the prefix on
/// which its answer was missing or did not chain.
Run run_resolver(const ParikhAutomaton& a, const Resolver& r, const Word& w);

struct ResolverVerdict {
  bool valid = true;
  std::optional<Word> counterexample;  // shortest member with a rejecting resolver run
};

ResolverVerdict validate_resolver(const ParikhAutomaton& a, const Resolver& r, std::size_t max_len);

enum class GameOutcome { AdamWins, EveWinsToHorizon, Unknown };

/// Adam's strategy in the letter game. At a stop node the word played so far
/// is a member while Eve's run is not accepting. Otherwise Adam plays
/// `letter` and there is one reply per Eve transition (nullopt when Eve has
/// none and her run is lost).
struct AdamStrategy {
  bool stop = true;
  Letter letter = 0;
  std::vector<std::pair<std::optional<std::size_t>, AdamStrategy>> replies;

  std::size_t depth() const;
};

struct GameResult {
  GameOutcome outcome = GameOutcome::Unknown;
  std::optional<AdamStrategy> witness;
  std::uint64_t positions = 0;
};

/// Exact game with at most `horizon` letters from Adam.
GameResult letter_game(const ParikhAutomaton& a, std::size_t horizon, StepBudget& budget);
GameResult letter_game(const ParikhAutomaton& a, std::size_t horizon,
                       std::uint64_t budget_steps = 1'000'000);

/// Checks a strategy against every sequence of Eve choices, enumerating
/// Eve's transitions independently of the game search. Returns a reason on
/// failure.
std::optional<std::string> replay_adam_strategy(const ParikhAutomaton& a, const AdamStrategy& s);

/// Word and run decomposition of a resolver run into u v x v z.
struct PumpDecomposition {
  Word u, v, x, z;
  std::size_t states = 0;  // p
  std::size_t cycles = 0;  // m
  std::size_t length_bound = 0;  // (p+1)(2m+1)
};

/// Cycles as run infixes over distinct states; rotations are distinct.
std::size_t count_rooted_cycles(const AutomatonBase& a);
std::size_t pumping_length(std::size_t states, std::size_t cycles);

/// `a` should be complete and `r` total on it. Throws Precondition when
/// |w| <= the length bound.
PumpDecomposition pumping_decompose(const ParikhAutomaton& a, const Resolver& r, const Word& w);

struct PumpViolation {
  Word suffix;
  Word pumped;  // the rejected word
};

std::vector<PumpViolation> pumping_check(const ParikhAutomaton& a, const PumpDecomposition& dec,
                                         const std::vector<Word>& suffixes);

}  // namespace parikh
