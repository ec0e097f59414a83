#pragma once

#include <cstdint>
#include <vector>

#include "parikh/automaton.hpp"

namespace parikh {

enum class Emptiness { Empty, Nonempty, Unknown };

struct EmptinessResult {
  Emptiness status = Emptiness::Unknown;
  Word witness;  // set when Nonempty
};

enum class Finiteness { Finite, Infinite, Unknown };

/// When Infinite, `base_counts + k * pump_counts` (transition multiplicities)
/// is realizable as an accepting run ending in `final_state` for every k >= 1.
struct FinitenessResult {
  Finiteness status = Finiteness::Unknown;
  std::vector<std::int64_t> base_counts;
  std::vector<std::int64_t> pump_counts;
  StateId final_state = 0;
  Word base;  // the k = 1 word
};

/// Flow encoding over transition counts, one integer program per accepting
/// state and acceptance disjunct. Connectivity of the support is enforced by
/// branching on cuts that separate unreachable support from the initial state.
EmptinessResult is_empty(const ParikhAutomaton& a, StepBudget& budget);
EmptinessResult is_empty(const ParikhAutomaton& a, std::uint64_t budget_steps = 1'000'000);

/// Infinite iff some accepting run can be extended by a nonempty circulation
/// whose image stays inside the same acceptance disjunct under all multiples.
FinitenessResult is_finite(const ParikhAutomaton& a, StepBudget& budget);
FinitenessResult is_finite(const ParikhAutomaton& a, std::uint64_t budget_steps = 1'000'000);

/// Word of the k-th pumped run of an Infinite certificate (k >= 1).
Word pumped_word(const ParikhAutomaton& a, const FinitenessResult& cert, std::int64_t k);

/// Euler trail from the initial state using each transition `counts[t]`
/// times; throws InvariantViolation if none exists.
std::vector<std::size_t> realize_counts(const AutomatonBase& a,
                                        const std::vector<std::int64_t>& counts);

}  // namespace parikh
