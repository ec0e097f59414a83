#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parikh/common.hpp"
#include "parikh/semilinear.hpp"

namespace parikh {

using Letter = std::uint32_t;
using StateId = std::uint32_t;
using Word = std::vector<Letter>;

/// Letter slot of an epsilon transition.
inline constexpr Letter kEpsilon = std::numeric_limits<Letter>::max();

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Letter a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Letter> find(const std::string& name) const;
  Letter at(const std::string& name) const;

  /// Whitespace-separated tokens, or one letter per character when every
  /// letter name is a single character and the text has no spaces.
  Word parse_word(const std::string& text) const;
  /// Inverse of parse_word; the empty word is written as "" by callers.
  std::string format_word(const Word& w) const;
  bool single_char() const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Letter> index_;
};

struct Transition {
  StateId from = 0;
  Letter letter = 0;
  Vec vec;
  StateId to = 0;

  bool is_epsilon() const { return letter == kEpsilon; }
  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Shared representation of Parikh automata with and without epsilon
/// transitions.
class AutomatonBase {
 public:
  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t dimension() const { return dim_; }
  std::size_t num_states() const { return state_names_.size(); }
  const std::string& state_name(StateId q) const { return state_names_.at(q); }
  const std::vector<std::string>& state_names() const { return state_names_; }
  std::optional<StateId> find_state(const std::string& name) const;
  StateId initial() const { return initial_; }
  bool is_accepting(StateId q) const { return accepting_.at(q); }
  const std::vector<bool>& accepting() const { return accepting_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const Transition& transition(std::size_t i) const { return transitions_.at(i); }
  const SemilinearSet& acceptance() const { return acceptance_; }

  /// Transition indices leaving q, in insertion order.
  const std::vector<std::size_t>& outgoing(StateId q) const { return outgoing_.at(q); }
  /// Transition indices leaving q on letter a (or kEpsilon), insertion order.
  const std::vector<std::size_t>& outgoing(StateId q, Letter a) const;

 protected:
  AutomatonBase(Alphabet alphabet, std::size_t dim, std::vector<std::string> state_names,
                StateId initial, std::vector<bool> accepting, std::vector<Transition> transitions,
                SemilinearSet acceptance, bool allow_epsilon);

 private:
  Alphabet alphabet_;
  std::size_t dim_;
  std::vector<std::string> state_names_;
  StateId initial_;
  std::vector<bool> accepting_;
  std::vector<Transition> transitions_;
  SemilinearSet acceptance_;
  std::vector<std::vector<std::size_t>> outgoing_;
  std::vector<std::vector<std::size_t>> by_letter_;  // state * (|alphabet|+1) + letter
  std::vector<std::size_t> empty_;
};

class ParikhAutomaton : public AutomatonBase {
 public:
  ParikhAutomaton(Alphabet alphabet, std::size_t dim, std::vector<std::string> state_names,
                  StateId initial, std::vector<bool> accepting, std::vector<Transition> transitions,
                  SemilinearSet acceptance)
      : AutomatonBase(std::move(alphabet), dim, std::move(state_names), initial,
                      std::move(accepting), std::move(transitions), std::move(acceptance), false) {}
};

class EpsilonPA : public AutomatonBase {
 public:
  EpsilonPA(Alphabet alphabet, std::size_t dim, std::vector<std::string> state_names,
            StateId initial, std::vector<bool> accepting, std::vector<Transition> transitions,
            SemilinearSet acceptance)
      : AutomatonBase(std::move(alphabet), dim, std::move(state_names), initial,
                      std::move(accepting), std::move(transitions), std::move(acceptance), true) {}

  /// The same automaton viewed as an epsilon-free one.
  static EpsilonPA from(const ParikhAutomaton& a);
};

/// Incremental construction helper.
class PaBuilder {
 public:
  PaBuilder(Alphabet alphabet, std::size_t dim) : alphabet_(std::move(alphabet)), dim_(dim) {}

  StateId add_state(const std::string& name, bool accepting = false);
  void set_accepting(StateId q, bool accepting = true) { accepting_.at(q) = accepting; }
  void set_initial(StateId q) { initial_ = q; }
  void add_transition(StateId from, Letter a, Vec v, StateId to) {
    transitions_.push_back(Transition{from, a, std::move(v), to});
  }
  void add_transition(StateId from, const std::string& a, Vec v, StateId to) {
    add_transition(from, alphabet_.at(a), std::move(v), to);
  }
  std::size_t num_states() const { return names_.size(); }
  std::size_t num_transitions() const { return transitions_.size(); }
  const Alphabet& alphabet() const { return alphabet_; }

  ParikhAutomaton build(SemilinearSet acceptance) const;
  EpsilonPA build_epsilon(SemilinearSet acceptance) const;

 private:
  Alphabet alphabet_;
  std::size_t dim_;
  std::vector<std::string> names_;
  std::vector<bool> accepting_;
  StateId initial_ = 0;
  std::vector<Transition> transitions_;
};

/// A run is a sequence of transition indices of one automaton.
struct Run {
  std::vector<std::size_t> transitions;
};

/// Throws Error(InvalidRun) unless the transitions chain from the initial state.
void check_run(const AutomatonBase& a, const Run& r);
Word run_word(const AutomatonBase& a, const Run& r);
Vec run_image(const AutomatonBase& a, const Run& r);
StateId run_final_state(const AutomatonBase& a, const Run& r);

bool accepts_run(const AutomatonBase& a, const Run& r);
bool member(const ParikhAutomaton& a, const Word& w);
bool is_deterministic(const ParikhAutomaton& a);
ParikhAutomaton complete(const ParikhAutomaton& a);

/// Alphabet extension: `a` viewed over `target`, which must contain every
/// letter of a's alphabet.
ParikhAutomaton over_alphabet(const ParikhAutomaton& a, const Alphabet& target);
/// Letters of `x` followed by the letters of `y` not in `x`.
Alphabet merge_alphabets(const Alphabet& x, const Alphabet& y);

/// All words over the alphabet of length at most max_len, shortest first and
/// lexicographic (by letter index) within a length.
std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t max_len);
/// Calls f on every word of length at most max_len in the same order;
/// stops early when f returns false.
template <class F>
void for_each_word(std::size_t alphabet_size, std::size_t max_len, F&& f) {
  Word w;
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (len > 0 && alphabet_size == 0) return;
    w.assign(len, 0);
    for (;;) {
      if (!f(static_cast<const Word&>(w))) return;
      bool carry = true;
      for (std::size_t i = len; i > 0 && carry;) {
        --i;
        if (++w[i] < alphabet_size) carry = false;
        else w[i] = 0;
      }
      if (carry) break;
    }
  }
}

}  // namespace parikh
