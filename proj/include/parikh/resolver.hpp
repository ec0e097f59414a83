#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parikh/automaton.hpp"

namespace parikh {

/// Fed the letters of a word one at a time; returns the transition that
/// processes each letter, or nothing when it has no answer.
using ResolverSession = std::function<std::optional<std::size_t>(Letter)>;

/// Ordered rule: fires when the run is in `state`, the next letter is
/// `letter` and the run image satisfies every atom of `guard`.
struct PositionalRule {
  StateId state = 0;
  Letter letter = 0;
  Conjunction guard;
  std::size_t transition = 0;
};

/// First matching rule wins; without a match the first transition for the
/// state and letter is taken when `fallback_first` is set.
struct PositionalTable {
  std::vector<PositionalRule> rules;
  bool fallback_first = true;
};

/// Strategy from letter histories to transitions. Each session starts from
/// the empty history, so a session's answer depends only on the letters fed
/// so far.
class Resolver {
 public:
  using Factory = std::function<ResolverSession()>;

  Resolver(std::string name, Factory factory) : name_(std::move(name)), factory_(std::move(factory)) {}

  const std::string& name() const { return name_; }
  ResolverSession start() const { return factory_(); }
  /// Transition chosen for the last letter of a nonempty history.
  std::optional<std::size_t> choose(std::span<const Letter> history) const;

  const std::optional<PositionalTable>& table() const { return table_; }

 private:
  friend Resolver positional_resolver(const ParikhAutomaton& a, PositionalTable table);

  std::string name_;
  Factory factory_;
  std::optional<PositionalTable> table_;
};

/// Throws InvalidInput if a rule names a transition that does not leave its
/// state on its letter.
Resolver positional_resolver(const ParikhAutomaton& a, PositionalTable table);

/// Resolver that always takes the first transition available from the
/// current state.
Resolver first_choice_resolver(const ParikhAutomaton& a);

/// `r` transferred to `completed` (an automaton whose first transitions are
/// those of the automaton `r` was written for, same state numbering): where
/// r's answer does not chain, the first available transition is used.
Resolver complete_resolver(const ParikhAutomaton& completed, const Resolver& r);

}  // namespace parikh
