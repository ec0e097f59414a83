#pragma once

#include <vector>

#include "parikh/automaton.hpp"

namespace parikh {

/// Simple cycles of epsilon transitions, each listed once as transition
/// indices starting from its smallest index.
std::vector<std::vector<std::size_t>> simple_epsilon_cycles(const EpsilonPA& e);

/// Replaces every epsilon*-a-epsilon* path by one letter transition. Epsilon
/// cycles closed along a path are cut out as soon as they close and recorded
/// in one flag dimension per cycle; the acceptance set is the matching
/// EpsilonClosureSet over the original set.
///
/// When the empty word is accepted only through a nonempty epsilon run, a
/// fresh accepting initial state and a letter-count dimension are added so
/// that the empty run alone carries that acceptance.
ParikhAutomaton eliminate_epsilon(const EpsilonPA& e);

}  // namespace parikh
