#include "parikh/decide.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>

#include "parikh/ilp.hpp"
#include "parikh/lowering.hpp"

namespace parikh {

namespace {

std::vector<bool> reachable_states(const AutomatonBase& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::deque<StateId> queue{a.initial()};
  seen[a.initial()] = true;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (auto t : a.outgoing(q)) {
      StateId r = a.transition(t).to;
      if (!seen[r]) {
        seen[r] = true;
        queue.push_back(r);
      }
    }
  }
  return seen;
}

/// Transitions that can occur in a run, each with the solver variables whose
/// sum is its multiplicity.
struct FlowVars {
  std::vector<std::size_t> transitions;
  std::vector<std::vector<std::size_t>> vars;
};

LinearAtom sum_row(const FlowVars& fv, const AutomatonBase& a,
                   const std::function<bool(const Transition&)>& pick, Rel rel, std::int64_t rhs) {
  LinearAtom row{{}, rel, rhs};
  for (std::size_t i = 0; i < fv.transitions.size(); ++i) {
    if (!pick(a.transition(fv.transitions[i]))) continue;
    for (auto v : fv.vars[i]) {
      if (row.coeffs.size() <= v) row.coeffs.resize(v + 1, 0);
      row.coeffs[v] += 1;
    }
  }
  return row;
}

enum class Search { Found, None, Unknown };

/// Solves `sys` subject to the support (by FlowVars multiplicities) being
/// reachable from the initial state.
Search solve_connected(const IntSystem& sys, const FlowVars& fv, const AutomatonBase& a,
                       StepBudget& budget, std::vector<std::int64_t>& values) {
  if (budget.exhausted()) return Search::Unknown;
  auto res = ilp_solve(sys, budget);
  if (res.status == SolveStatus::Unknown) return Search::Unknown;
  if (res.status == SolveStatus::Infeasible) return Search::None;

  std::vector<std::int64_t> mult(fv.transitions.size(), 0);
  for (std::size_t i = 0; i < mult.size(); ++i)
    for (auto v : fv.vars[i]) mult[i] += res.values[v];

  std::vector<bool> reached(a.num_states(), false);
  reached[a.initial()] = true;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < mult.size(); ++i) {
      const auto& t = a.transition(fv.transitions[i]);
      if (mult[i] > 0 && reached[t.from] && !reached[t.to]) reached[t.to] = grew = true;
    }
  }
  bool disconnected = false;
  for (std::size_t i = 0; i < mult.size(); ++i)
    if (mult[i] > 0 && !reached[a.transition(fv.transitions[i]).from]) disconnected = true;
  if (!disconnected) {
    values = std::move(res.values);
    return Search::Found;
  }

  // Any connected solution either avoids the unreached part entirely or
  // enters it from the reached part. The current solution does neither.
  IntSystem avoid = sys;
  avoid.rows.push_back(sum_row(fv, a, [&](const Transition& t) { return !reached[t.from]; },
                               Rel::Le, 0));
  auto first = solve_connected(avoid, fv, a, budget, values);
  if (first == Search::Found) return first;
  IntSystem enter = sys;
  enter.rows.push_back(sum_row(
      fv, a, [&](const Transition& t) { return reached[t.from] && !reached[t.to]; }, Rel::Ge, 1));
  auto second = solve_connected(enter, fv, a, budget, values);
  if (second == Search::Found) return second;
  return first == Search::Unknown || second == Search::Unknown ? Search::Unknown : Search::None;
}

std::vector<std::size_t> usable_transitions(const AutomatonBase& a) {
  auto reach = reachable_states(a);
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < a.transitions().size(); ++t)
    if (reach[a.transition(t).from]) out.push_back(t);
  return out;
}

/// out - in = [q = initial] - [q = target] over the variables first..first+n.
void add_flow_rows(IntSystem& sys, const AutomatonBase& a, const std::vector<std::size_t>& usable,
                   std::size_t first, std::optional<StateId> target) {
  for (StateId q = 0; q < a.num_states(); ++q) {
    LinearAtom row{Vec(first + usable.size(), 0), Rel::Eq, 0};
    bool touched = false;
    for (std::size_t i = 0; i < usable.size(); ++i) {
      const auto& t = a.transition(usable[i]);
      if (t.from == q) row.coeffs[first + i] += 1, touched = true;
      if (t.to == q) row.coeffs[first + i] -= 1, touched = true;
    }
    if (target) row.rhs = (q == a.initial() ? 1 : 0) - (q == *target ? 1 : 0);
    if (touched || row.rhs != 0) sys.rows.push_back(std::move(row));
  }
}

std::vector<AffineExpr> image_args(const AutomatonBase& a, const std::vector<std::size_t>& usable) {
  std::vector<AffineExpr> args(a.dimension());
  for (std::size_t k = 0; k < a.dimension(); ++k) {
    args[k].coeffs.assign(usable.size(), 0);
    for (std::size_t i = 0; i < usable.size(); ++i) args[k].coeffs[i] = a.transition(usable[i]).vec[k];
  }
  return args;
}

std::vector<std::int64_t> expand_counts(const AutomatonBase& a, const std::vector<std::size_t>& usable,
                                        const std::vector<std::int64_t>& values, std::size_t first) {
  std::vector<std::int64_t> counts(a.transitions().size(), 0);
  for (std::size_t i = 0; i < usable.size(); ++i) counts[usable[i]] = values[first + i];
  return counts;
}

Rel weaken(Rel r) {
  switch (r) {
    case Rel::Lt: return Rel::Le;
    case Rel::Gt: return Rel::Ge;
    case Rel::Ne: fail(ErrorKind::InvariantViolation, "disequality left in a lowered system");
    default: return r;
  }
}

/// Appends to `sys` the homogeneous copy of the atoms added after position
/// `rows_from` / `congruences_from`: image variables [0, n) move to [n, 2n),
/// auxiliaries at or above `aux_from` get fresh indices, right-hand sides
/// become zero.
void add_homogeneous_copy(IntSystem& sys, std::size_t n, std::size_t aux_from,
                          std::size_t rows_from, std::size_t congruences_from) {
  std::size_t aux_count = sys.num_vars - aux_from;
  std::size_t shift = sys.add_vars(aux_count) - aux_from;
  auto remap = [&](const Vec& coeffs) {
    Vec out(sys.num_vars, 0);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] == 0) continue;
      if (j < n) out[n + j] += coeffs[j];
      else if (j >= aux_from) out[j + shift] += coeffs[j];
      else fail(ErrorKind::InvariantViolation, "acceptance atom mentions a pump variable");
    }
    return out;
  };
  std::size_t rows_end = sys.rows.size();
  for (std::size_t i = rows_from; i < rows_end; ++i) {
    LinearAtom copy{remap(sys.rows[i].coeffs), weaken(sys.rows[i].rel), 0};
    sys.rows.push_back(std::move(copy));
  }
  std::size_t cong_end = sys.congruences.size();
  for (std::size_t i = congruences_from; i < cong_end; ++i) {
    CongruenceAtom copy{remap(sys.congruences[i].coeffs), sys.congruences[i].modulus, 0};
    sys.congruences.push_back(std::move(copy));
  }
}

}  // namespace

std::vector<std::size_t> realize_counts(const AutomatonBase& a,
                                        const std::vector<std::int64_t>& counts) {
  std::vector<std::int64_t> left = counts;
  std::int64_t total = 0;
  for (auto c : counts) total += c;
  std::vector<std::size_t> cursor(a.num_states(), 0);
  std::vector<std::pair<StateId, std::optional<std::size_t>>> stack{{a.initial(), std::nullopt}};
  std::vector<std::size_t> trail;
  while (!stack.empty()) {
    StateId q = stack.back().first;
    const auto& out = a.outgoing(q);
    while (cursor[q] < out.size() && left[out[cursor[q]]] == 0) ++cursor[q];
    if (cursor[q] < out.size()) {
      std::size_t t = out[cursor[q]];
      --left[t];
      stack.emplace_back(a.transition(t).to, t);
    } else {
      if (stack.back().second) trail.push_back(*stack.back().second);
      stack.pop_back();
    }
  }
  std::reverse(trail.begin(), trail.end());
  if (static_cast<std::int64_t>(trail.size()) != total)
    fail(ErrorKind::InvariantViolation, "transition counts are not realizable as one run");
  check_run(a, Run{trail});
  return trail;
}

EmptinessResult is_empty(const ParikhAutomaton& a, StepBudget& budget) {
  auto usable = usable_transitions(a);
  auto reach = reachable_states(a);
  FlowVars fv{usable, {}};
  for (std::size_t i = 0; i < usable.size(); ++i) fv.vars.push_back({i});
  auto args = image_args(a, usable);

  bool unknown = false;
  for (StateId f = 0; f < a.num_states(); ++f) {
    if (!a.is_accepting(f) || !reach[f]) continue;
    IntSystem base;
    base.add_vars(usable.size());
    add_flow_rows(base, a, usable, 0, f);
    for (const auto& sys : lower_membership(a.acceptance(), args, base)) {
      std::vector<std::int64_t> values;
      auto found = solve_connected(sys, fv, a, budget, values);
      if (found == Search::Found) {
        auto trail = realize_counts(a, expand_counts(a, usable, values, 0));
        return {Emptiness::Nonempty, run_word(a, Run{trail})};
      }
      if (found == Search::Unknown) unknown = true;
    }
  }
  return {unknown ? Emptiness::Unknown : Emptiness::Empty, {}};
}

EmptinessResult is_empty(const ParikhAutomaton& a, std::uint64_t budget_steps) {
  StepBudget budget(budget_steps);
  return is_empty(a, budget);
}

FinitenessResult is_finite(const ParikhAutomaton& a, StepBudget& budget) {
  auto usable = usable_transitions(a);
  auto reach = reachable_states(a);
  std::size_t n = usable.size();
  FlowVars fv{usable, {}};
  for (std::size_t i = 0; i < n; ++i) fv.vars.push_back({i, n + i});
  auto args = image_args(a, usable);

  bool unknown = false;
  for (StateId f = 0; f < a.num_states(); ++f) {
    if (!a.is_accepting(f) || !reach[f]) continue;
    IntSystem base;
    base.add_vars(2 * n);
    add_flow_rows(base, a, usable, 0, f);
    add_flow_rows(base, a, usable, n, std::nullopt);
    LinearAtom pump_nonzero{Vec(2 * n, 0), Rel::Ge, 1};
    for (std::size_t i = 0; i < n; ++i) pump_nonzero.coeffs[n + i] = 1;
    base.rows.push_back(std::move(pump_nonzero));
    std::size_t rows_from = base.rows.size();
    for (auto sys : lower_membership(a.acceptance(), args, base)) {
      add_homogeneous_copy(sys, n, 2 * n, rows_from, 0);
      std::vector<std::int64_t> values;
      auto found = solve_connected(sys, fv, a, budget, values);
      if (found == Search::Found) {
        FinitenessResult cert;
        cert.status = Finiteness::Infinite;
        cert.base_counts = expand_counts(a, usable, values, 0);
        cert.pump_counts = expand_counts(a, usable, values, n);
        cert.final_state = f;
        cert.base = pumped_word(a, cert, 1);
        return cert;
      }
      if (found == Search::Unknown) unknown = true;
    }
  }
  FinitenessResult out;
  out.status = unknown ? Finiteness::Unknown : Finiteness::Finite;
  return out;
}

FinitenessResult is_finite(const ParikhAutomaton& a, std::uint64_t budget_steps) {
  StepBudget budget(budget_steps);
  return is_finite(a, budget);
}

Word pumped_word(const ParikhAutomaton& a, const FinitenessResult& cert, std::int64_t k) {
  if (cert.status != Finiteness::Infinite)
    fail(ErrorKind::Precondition, "no pump for a language not shown infinite");
  if (k < 1) fail(ErrorKind::Precondition, "pump multiplier must be at least 1");
  std::vector<std::int64_t> counts(cert.base_counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    counts[i] = cert.base_counts[i] + k * cert.pump_counts[i];
  return run_word(a, Run{realize_counts(a, counts)});
}

}  // namespace parikh
