#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "parikh/automaton.hpp"

namespace parikh {

/// Tape symbol: a letter index, or one of the two endmarkers.
using Symbol = std::uint32_t;
inline constexpr Symbol kLeftEnd = std::numeric_limits<Symbol>::max() - 1;
inline constexpr Symbol kRightEnd = std::numeric_limits<Symbol>::max() - 2;

struct MachineTransition {
  StateId from = 0;
  Symbol symbol = 0;
  std::vector<std::uint8_t> guard;  // 1 = counter nonzero
  StateId to = 0;
  int move = 0;
  std::vector<int> update;

  friend bool operator==(const MachineTransition&, const MachineTransition&) = default;
};

/// Two-way counter machine with k counters. The constructor checks the
/// endmarker and guard compatibility conditions.
class CounterMachine {
 public:
  CounterMachine(std::size_t counters, Alphabet alphabet, std::vector<std::string> state_names,
                 StateId initial, std::vector<bool> accepting, std::vector<MachineTransition> transitions,
                 std::optional<std::size_t> reversal_bound = std::nullopt);

  std::size_t counters() const { return counters_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return state_names_.size(); }
  const std::string& state_name(StateId q) const { return state_names_.at(q); }
  const std::vector<std::string>& state_names() const { return state_names_; }
  std::optional<StateId> find_state(const std::string& name) const;
  StateId initial() const { return initial_; }
  bool is_accepting(StateId q) const { return accepting_.at(q); }
  const std::vector<bool>& accepting() const { return accepting_; }
  const std::vector<MachineTransition>& transitions() const { return transitions_; }
  const MachineTransition& transition(std::size_t i) const { return transitions_.at(i); }
  std::optional<std::size_t> reversal_bound() const { return reversal_bound_; }
  bool one_way() const;

  std::string symbol_name(Symbol s) const;

 private:
  std::size_t counters_;
  Alphabet alphabet_;
  std::vector<std::string> state_names_;
  StateId initial_;
  std::vector<bool> accepting_;
  std::vector<MachineTransition> transitions_;
  std::optional<std::size_t> reversal_bound_;
};

struct Configuration {
  StateId state = 0;
  std::size_t head = 0;
  std::vector<std::int64_t> counters;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

Configuration initial_configuration(const CounterMachine& m);
/// Symbol at `head` of the tape for w.
Symbol tape_symbol(const Word& w, std::size_t head);
bool guard_holds(const std::vector<std::uint8_t>& guard, const std::vector<std::int64_t>& counters);

/// Successors with the index of the transition taken, in transition order.
std::vector<std::pair<std::size_t, Configuration>> cm_step(const CounterMachine& m, const Word& w,
                                                           const Configuration& c);

enum class MachineVerdict { Accept, Reject, Unknown };

struct MachineResult {
  MachineVerdict verdict = MachineVerdict::Unknown;
  bool cap_reached = false;  // some configuration was cut off by the counter cap
  std::vector<std::size_t> trace;  // transitions of an accepting run
};

struct SearchLimits {
  std::uint64_t steps = 1'000'000;
  /// Counter values above the cap are not explored; default |w| * k + 8.
  std::optional<std::int64_t> counter_cap;
  /// Extra acceptance test on the counters of an accepting configuration.
  std::function<bool(const std::vector<std::int64_t>&)> end_test;
};

/// Breadth-first search over configurations. Unknown when nothing accepted
/// and either the step budget ran out or the counter cap cut off a
/// configuration.
MachineResult cm_accepts(const CounterMachine& m, const Word& w, const SearchLimits& limits = {});

struct Reversals {
  std::size_t head = 0;
  std::vector<std::size_t> counters;
};

/// Sign alternations of moves and of each counter update, zeros ignored.
Reversals reversal_monitor(const CounterMachine& m, const std::vector<std::size_t>& run);
std::size_t sign_alternations(const std::vector<int>& values);

/// Equivalent one-way machine that never tests counters except on its final
/// transition into the only accepting state, taken on the right endmarker
/// with all counters zero. Counter zero tests are replaced by guessed
/// per-counter statuses. Assumes every counter reverses at most once on
/// accepting runs. Throws InvalidInput if m is not one-way.
CounterMachine normalize(const CounterMachine& m);

/// Epsilon-PA of dimension 2k (1 when k = 0): counter j's increments go to
/// dimension 2j and its decrements to 2j+1, and acceptance requires the two
/// to agree. States pair a machine state with the symbol under the head; a
/// right move onto a letter reads that letter and every other move is an
/// epsilon transition.
EpsilonPA rbcm_to_epsilon_pa(const CounterMachine& m);

/// One-way machine whose counters track the image of a run of `a`; each PA
/// transition becomes stationary unit increments ending with a right move.
/// Acceptance additionally needs the acceptance set of `a` to hold on the
/// final counters, supplied by `end_test`.
struct PaMachine {
  CounterMachine machine;
  std::function<bool(const std::vector<std::int64_t>&)> end_test;
  /// Machine transitions for the first move, per guard code.
  std::vector<std::size_t> start;
  /// chains[t][i][g]: step i of PA transition t under guard code g.
  std::vector<std::vector<std::vector<std::size_t>>> chains;
  /// finish[q][g]: final move from accepting state q, or SIZE_MAX.
  std::vector<std::vector<std::size_t>> finish;
};

PaMachine pa_to_rbcm(const ParikhAutomaton& a);

/// Machine run matching a PA run on w (ending with the final move when the
/// run ends in an accepting state).
std::vector<std::size_t> machine_run_for(const PaMachine& pm, const ParikhAutomaton& a, const Run& run);

/// Replays a transition sequence from the initial configuration; nullopt if
/// some step is not enabled.
std::optional<Configuration> cm_replay(const CounterMachine& m, const Word& w,
                                       const std::vector<std::size_t>& run);

/// Scans right to the right endmarker and back to the left one without
/// touching the counters, then behaves as m.
CounterMachine scan_wrapper(const CounterMachine& m);

/// Guard code: bit j set iff counter j is nonzero.
std::size_t guard_code(const std::vector<std::int64_t>& counters);
std::vector<std::uint8_t> guard_of_code(std::size_t code, std::size_t k);

}  // namespace parikh
