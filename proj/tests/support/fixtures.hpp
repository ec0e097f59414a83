#pragma once

#include <string>
#include <vector>

#include "parikh/automaton.hpp"
#include "parikh/corpus.hpp"
#include "parikh/rbcm.hpp"
#include "parikh/resolver.hpp"

namespace fixture {

using parikh::CounterMachine;
using parikh::EpsilonPA;
using parikh::ParikhAutomaton;

/// Single state with an a-loop of image (1) and acceptance {x = 5}.
ParikhAutomaton a_loop_eq5();

/// One state over {a, b} counting both letters.
ParikhAutomaton equal_ab();

/// Accepts every word over {a, b}.
ParikhAutomaton universal_ab();

/// No accepting states.
ParikhAutomaton no_accepting();

struct DecideCase {
  std::string name;
  ParikhAutomaton automaton;
  bool empty;
  bool finite;
};

/// Twenty automata with known emptiness and finiteness.
std::vector<DecideCase> decide_suite();

struct EpsilonCase {
  std::string name;
  EpsilonPA automaton;
};

std::vector<EpsilonCase> epsilon_cases();

/// Pairs of corpus names.
std::vector<std::pair<std::string, std::string>> closure_pairs();

/// The entry's resolver, or first-choice for deterministic entries.
parikh::Resolver resolver_for(const parikh::CorpusEntry& entry);

/// Entries with a resolver (including deterministic ones).
std::vector<std::string> hd_corpus();

struct MachineCase {
  std::string name;
  CounterMachine machine;
};

/// One-way machines: equal numbers of a and b with two counters, a^n b^n,
/// a counter-free machine for words containing "aa", and a^n b^2n using
/// stationary moves.
std::vector<MachineCase> machine_suite();

}  // namespace fixture
