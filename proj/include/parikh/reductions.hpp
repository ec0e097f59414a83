#pragma once

#include <string>
#include <vector>

#include "parikh/automaton.hpp"
#include "parikh/minsky.hpp"
#include "parikh/resolver.hpp"

namespace parikh {

/// Automaton bundled with a resolver for it.
struct ResolvedPA {
  ParikhAutomaton automaton;
  Resolver resolver;
};

/// Deterministic PA over the line numbers of a guarded machine accepting w iff
/// w is empty, w = 0, or w has no error at position |w| - 2. Dimensions are
/// (inc0, dec0, goto0, inc1, dec1, goto1); increments and decrements are
/// counted one letter late and goto_i mod 4 encodes the branch taken by the
/// second-to-last letter when it tests counter i.
ParikhAutomaton build_safety_dpa(const MinskyMachine& m);

/// Words whose first letter is not 0 or that contain no STOP line.
ParikhAutomaton build_no_stop_dfa(const MinskyMachine& m);

/// Words starting with 0 that contain STOP and an error before the first
/// STOP. The automaton guesses the error position and freezes its counters
/// there; dimensions are (inc0, dec0, inc1, dec1, kind). The resolver commits
/// at the first actual error.
ResolvedPA build_error_guess_pa(const MinskyMachine& m);

/// Words starting with 0 that contain STOP and whose suffix after the first
/// STOP is not 0^n 1^n with n > 0. Needs at least two lines.
ParikhAutomaton build_tail_dpa(const MinskyMachine& m);

/// Union of the no-stop and error-guess parts: universal iff m does not
/// terminate.
ResolvedPA build_universality_hdpa(const MinskyMachine& m);

/// Universality automaton joined with the tail part: regular iff m does not
/// terminate.
ResolvedPA build_regularity_hdpa(const MinskyMachine& m);

/// Same automaton with every letter renamed to '#'.
ParikhAutomaton collapse_alphabet(const ParikhAutomaton& a);

/// Letters of the pairing alphabet: "x:y" for x in the alphabet of `a` plus
/// '#', and y in {a, b}.
Alphabet pairing_alphabet(const Alphabet& sigma);

/// Accepts pairs whose first component lies in L(a) or L(a) # (Sigma + #)*, or
/// whose second component lies in E.
ParikhAutomaton build_pairing(const ParikhAutomaton& a, const ParikhAutomaton& e);

/// Second-component automaton of the words whose first component is
/// u #^*. `paired` must be over a pairing alphabet and u over its first
/// components.
ParikhAutomaton restrict_first(const ParikhAutomaton& paired, const std::vector<std::string>& u);

/// Machines used by tests and the command line: "halt", "loop" and "six".
MinskyMachine minsky_suite(const std::string& name);
std::vector<std::string> minsky_suite_names();

}  // namespace parikh
