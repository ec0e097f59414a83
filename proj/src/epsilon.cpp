#include "parikh/epsilon.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <set>
#include <tuple>

namespace parikh {

namespace {

void extend_cycles(const EpsilonPA& e, std::size_t first, std::vector<std::size_t>& steps,
                   std::vector<StateId>& states, std::vector<std::vector<std::size_t>>& out) {
  for (auto t : e.outgoing(states.back(), kEpsilon)) {
    if (t <= first) continue;
    StateId to = e.transition(t).to;
    if (to == states.front()) {
      steps.push_back(t);
      out.push_back(steps);
      steps.pop_back();
    } else if (std::find(states.begin(), states.end(), to) == states.end()) {
      steps.push_back(t);
      states.push_back(to);
      extend_cycles(e, first, steps, states, out);
      states.pop_back();
      steps.pop_back();
    }
  }
}

/// An epsilon path with every closed cycle cut out.
struct ReducedPath {
  std::vector<std::size_t> steps;
  std::vector<StateId> states;  // states.size() == steps.size() + 1
  std::vector<bool> flags;

  StateId end() const { return states.back(); }
};

class CycleIndex {
 public:
  explicit CycleIndex(const std::vector<std::vector<std::size_t>>& cycles) {
    for (std::size_t i = 0; i < cycles.size(); ++i) ids_.emplace(cycles[i], i);
  }

  std::size_t id_of(std::vector<std::size_t> cycle) const {
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    auto it = ids_.find(cycle);
    if (it == ids_.end()) fail(ErrorKind::InvariantViolation, "closed epsilon cycle not indexed");
    return it->second;
  }

 private:
  std::map<std::vector<std::size_t>, std::size_t> ids_;
};

ReducedPath extend(const EpsilonPA& e, const CycleIndex& cycles, const ReducedPath& p,
                   std::size_t t) {
  ReducedPath next = p;
  StateId to = e.transition(t).to;
  auto pos = std::find(next.states.begin(), next.states.end(), to);
  if (pos == next.states.end()) {
    next.steps.push_back(t);
    next.states.push_back(to);
    return next;
  }
  auto i = static_cast<std::size_t>(pos - next.states.begin());
  std::vector<std::size_t> cycle(next.steps.begin() + static_cast<std::ptrdiff_t>(i), next.steps.end());
  cycle.push_back(t);
  next.flags[cycles.id_of(cycle)] = true;
  next.steps.resize(i);
  next.states.resize(i + 1);
  return next;
}

/// All reduced epsilon paths from `start`, in breadth-first discovery order.
std::vector<ReducedPath> reduced_paths(const EpsilonPA& e, const CycleIndex& cycles,
                                       std::size_t cycle_count, StateId start) {
  std::vector<ReducedPath> out;
  std::set<std::pair<std::vector<std::size_t>, std::vector<bool>>> seen;
  std::deque<ReducedPath> queue;
  ReducedPath root{{}, {start}, std::vector<bool>(cycle_count, false)};
  seen.emplace(root.steps, root.flags);
  queue.push_back(std::move(root));
  while (!queue.empty()) {
    ReducedPath p = std::move(queue.front());
    queue.pop_front();
    for (auto t : e.outgoing(p.end(), kEpsilon)) {
      ReducedPath next = extend(e, cycles, p, t);
      if (seen.emplace(next.steps, next.flags).second) queue.push_back(std::move(next));
    }
    out.push_back(std::move(p));
  }
  return out;
}

Vec path_image(const EpsilonPA& e, const std::vector<std::size_t>& steps) {
  Vec v(e.dimension(), 0);
  for (auto t : steps)
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += e.transition(t).vec[k];
  return v;
}

std::string fresh_state_name(const AutomatonBase& a, const std::string& stem) {
  std::string name = stem;
  for (int i = 1; a.find_state(name); ++i) name = stem + "_" + std::to_string(i);
  return name;
}

}  // namespace

std::vector<std::vector<std::size_t>> simple_epsilon_cycles(const EpsilonPA& e) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t t = 0; t < e.transitions().size(); ++t) {
    const auto& tr = e.transition(t);
    if (!tr.is_epsilon()) continue;
    if (tr.to == tr.from) {
      out.push_back({t});
      continue;
    }
    std::vector<std::size_t> steps{t};
    std::vector<StateId> states{tr.from, tr.to};
    extend_cycles(e, t, steps, states, out);
  }
  return out;
}

ParikhAutomaton eliminate_epsilon(const EpsilonPA& e) {
  auto cycles = simple_epsilon_cycles(e);
  std::size_t m = cycles.size();
  CycleIndex index(cycles);

  EpsilonClosureSet closure;
  closure.base = std::make_shared<const SemilinearSet>(e.acceptance());
  for (const auto& c : cycles) closure.cycle_images.push_back(path_image(e, c));

  std::vector<std::vector<ReducedPath>> paths(e.num_states());
  std::vector<std::vector<Vec>> images(e.num_states());
  for (StateId q = 0; q < e.num_states(); ++q) {
    paths[q] = reduced_paths(e, index, m, q);
    for (const auto& p : paths[q]) images[q].push_back(path_image(e, p.steps));
  }

  auto with_flags = [&](Vec v, const std::vector<bool>& f0, const std::vector<bool>& f1) {
    for (std::size_t j = 0; j < m; ++j) v.push_back(f0[j] || f1[j] ? 1 : 0);
    return v;
  };

  std::vector<Transition> out;
  std::set<std::tuple<StateId, Letter, Vec, StateId>> emitted;
  for (StateId q = 0; q < e.num_states(); ++q) {
    for (std::size_t i = 0; i < paths[q].size(); ++i) {
      const auto& pre = paths[q][i];
      for (auto t : e.outgoing(pre.end())) {
        const auto& tr = e.transition(t);
        if (tr.is_epsilon()) continue;
        Vec mid = add(images[q][i], tr.vec);
        for (std::size_t j = 0; j < paths[tr.to].size(); ++j) {
          const auto& post = paths[tr.to][j];
          Vec v = with_flags(add(mid, images[tr.to][j]), pre.flags, post.flags);
          if (emitted.emplace(q, tr.letter, v, post.end()).second)
            out.push_back(Transition{q, tr.letter, std::move(v), post.end()});
        }
      }
    }
  }

  bool plain_accepts_empty =
      e.is_accepting(e.initial()) && e.acceptance().contains(Vec(e.dimension(), 0));
  bool accepts_empty = false;
  for (std::size_t i = 0; i < paths[e.initial()].size() && !accepts_empty; ++i) {
    const auto& p = paths[e.initial()][i];
    if (e.is_accepting(p.end()) &&
        member_closure(closure, with_flags(images[e.initial()][i], p.flags, p.flags)))
      accepts_empty = true;
  }

  auto names = e.state_names();
  auto accepting = e.accepting();
  StateId initial = e.initial();
  std::size_t dim = e.dimension() + m;
  if (accepts_empty != plain_accepts_empty) {
    closure.counts_letters = true;
    closure.empty_word = accepts_empty;
    ++dim;
    for (auto& t : out) t.vec.push_back(1);
    initial = static_cast<StateId>(names.size());
    names.push_back(fresh_state_name(e, "start"));
    accepting.push_back(true);
    std::size_t count = out.size();
    for (std::size_t i = 0; i < count; ++i)
      if (out[i].from == e.initial()) {
        Transition copy = out[i];
        copy.from = initial;
        out.push_back(std::move(copy));
      }
  }
  return ParikhAutomaton(e.alphabet(), dim, std::move(names), initial, std::move(accepting),
                         std::move(out), SemilinearSet(std::move(closure)));
}

}  // namespace parikh
