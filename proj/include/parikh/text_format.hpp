#pragma once

#include <optional>
#include <string>
#include <variant>

#include "parikh/automaton.hpp"
#include "parikh/rbcm.hpp"
#include "parikh/resolver.hpp"

namespace parikh {

/// Parsed automaton file: a PA (header `parikh-automaton 1`) or an epsilon-PA
/// (header `epsilon-parikh-automaton 1`), with an optional positional
/// resolver table.
struct AutomatonDocument {
  std::variant<ParikhAutomaton, EpsilonPA> automaton;
  std::optional<PositionalTable> resolver;

  bool is_epsilon() const { return automaton.index() == 1; }
  const AutomatonBase& base() const;
  /// Throws InvalidInput for an epsilon document.
  const ParikhAutomaton& pa() const;
};

/// Line format or, when the text starts with '{', the JSON variant.
/// Diagnostics have the form "line L, column C: ...".
AutomatonDocument parse_document(const std::string& text);
std::string serialize(const AutomatonDocument& doc);
std::string serialize(const ParikhAutomaton& a, const PositionalTable* table = nullptr);
std::string serialize(const EpsilonPA& a);
std::string serialize_json(const AutomatonDocument& doc);

/// A standalone `set ... end` block.
SemilinearSet parse_set(const std::string& text);
std::string serialize_set(const SemilinearSet& s);

/// Counter machine file, header `counter-machine 1`; `^` and `$` denote the
/// left and right endmarkers.
CounterMachine parse_machine(const std::string& text);
std::string serialize_machine(const CounterMachine& m);

}  // namespace parikh
