#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "parikh/automaton.hpp"
#include "parikh/decide.hpp"
#include "parikh/resolver.hpp"

namespace parikh {

/// Product automaton with the inputs as they were prepared for it (alphabet
/// merged, and for union completed with a fresh initial state) and the
/// component states of every product state.
struct ProductResult {
  ParikhAutomaton automaton;
  std::optional<Resolver> resolver;
  std::vector<std::pair<StateId, StateId>> pairs;
  std::vector<ParikhAutomaton> components;
};

/// Both inputs are read over the union of their alphabets. Flag dimensions 0
/// and 1 are even exactly when the respective component state is accepting
/// (for nonempty runs); the empty word has its own clause. A resolver is
/// combined when both are supplied.
ProductResult union_pa(const ParikhAutomaton& a1, const ParikhAutomaton& a2,
                       const Resolver* r1 = nullptr, const Resolver* r2 = nullptr);

ProductResult intersect_pa(const ParikhAutomaton& a1, const ParikhAutomaton& a2,
                           const Resolver* r1 = nullptr, const Resolver* r2 = nullptr);

/// Letter images of h: source -> target*. `images[a]` is a word over target.
struct Homomorphism {
  Alphabet source;
  Alphabet target;
  std::vector<Word> images;

  Word apply(const Word& w) const;
};

struct InverseHomResult {
  ParikhAutomaton automaton;
  std::optional<Resolver> resolver;
};

/// Automaton over h's source alphabet accepting h^-1(L(a)). h's target
/// letters must all belong to a's alphabet.
InverseHomResult inverse_hom(const ParikhAutomaton& a, const Homomorphism& h,
                             const Resolver* r = nullptr);

/// Some member has the same letter counts as w. nullopt when the solver
/// budget runs out.
std::optional<bool> commutative_member(const ParikhAutomaton& a, const Word& w,
                                       std::uint64_t budget_steps = 1'000'000);

struct EquivResult {
  bool equal = true;
  Alphabet alphabet;             // merged alphabet the words range over
  std::optional<Word> counterexample;  // shortest, lexicographically first
};

EquivResult bounded_equiv(const ParikhAutomaton& a1, const ParikhAutomaton& a2, std::size_t max_len);

}  // namespace parikh
