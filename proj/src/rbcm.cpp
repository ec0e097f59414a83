#include "parikh/rbcm.hpp"

#include <algorithm>
#include <memory>
#include <map>
#include <set>
#include <tuple>

namespace parikh {

namespace {

std::vector<Symbol> all_symbols(const Alphabet& sigma) {
  std::vector<Symbol> out{kLeftEnd};
  for (Letter a = 0; a < sigma.size(); ++a) out.push_back(a);
  out.push_back(kRightEnd);
  return out;
}

std::string fresh_name(const std::set<std::string>& taken, const std::string& stem) {
  std::string name = stem;
  for (int i = 1; taken.count(name); ++i) name = stem + "_" + std::to_string(i);
  return name;
}

bool compatible(const std::vector<std::uint8_t>& guard, const std::vector<int>& update) {
  for (std::size_t j = 0; j < guard.size(); ++j)
    if (guard[j] == 0 && update[j] < 0) return false;
  return true;
}

std::size_t guard_count(std::size_t k) {
  if (k >= 20) fail(ErrorKind::InvalidInput, "too many counters to enumerate guards");
  return std::size_t{1} << k;
}

}  // namespace

CounterMachine::CounterMachine(std::size_t counters, Alphabet alphabet,
                               std::vector<std::string> state_names, StateId initial,
                               std::vector<bool> accepting, std::vector<MachineTransition> transitions,
                               std::optional<std::size_t> reversal_bound)
    : counters_(counters),
      alphabet_(std::move(alphabet)),
      state_names_(std::move(state_names)),
      initial_(initial),
      accepting_(std::move(accepting)),
      transitions_(std::move(transitions)),
      reversal_bound_(reversal_bound) {
  if (alphabet_.size() == 0) fail(ErrorKind::InvalidInput, "alphabet must not be empty");
  if (state_names_.empty()) fail(ErrorKind::InvalidInput, "machine needs at least one state");
  if (initial_ >= state_names_.size()) fail(ErrorKind::InvalidInput, "initial state out of range");
  if (accepting_.size() != state_names_.size())
    fail(ErrorKind::InvalidInput, "accepting flags do not match the state count");
  std::set<std::string> seen;
  for (const auto& n : state_names_)
    if (!seen.insert(n).second) fail(ErrorKind::InvalidInput, "duplicate state '" + n + "'");
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const auto& t = transitions_[i];
    auto where = "machine transition " + std::to_string(i);
    if (t.from >= state_names_.size() || t.to >= state_names_.size())
      fail(ErrorKind::InvalidInput, where + ": state out of range");
    if (t.symbol != kLeftEnd && t.symbol != kRightEnd && t.symbol >= alphabet_.size())
      fail(ErrorKind::InvalidInput, where + ": symbol out of range");
    if (t.guard.size() != counters_ || t.update.size() != counters_)
      fail(ErrorKind::InvalidInput, where + ": guard or update has the wrong length");
    if (t.move < -1 || t.move > 1) fail(ErrorKind::InvalidInput, where + ": move must be -1, 0 or 1");
    for (std::size_t j = 0; j < counters_; ++j) {
      if (t.guard[j] > 1) fail(ErrorKind::InvalidInput, where + ": guard entries must be 0 or 1");
      if (t.update[j] < -1 || t.update[j] > 1)
        fail(ErrorKind::InvalidInput, where + ": update entries must be -1, 0 or 1");
    }
    if (t.symbol == kLeftEnd && t.move < 0)
      fail(ErrorKind::InvalidInput, where + ": moves left of the left endmarker");
    if (t.symbol == kRightEnd && t.move > 0)
      fail(ErrorKind::InvalidInput, where + ": moves right of the right endmarker");
    if (!compatible(t.guard, t.update))
      fail(ErrorKind::InvalidInput, where + ": decrements a counter its guard says is zero");
  }
}

std::optional<StateId> CounterMachine::find_state(const std::string& name) const {
  for (std::size_t i = 0; i < state_names_.size(); ++i)
    if (state_names_[i] == name) return static_cast<StateId>(i);
  return std::nullopt;
}

bool CounterMachine::one_way() const {
  for (const auto& t : transitions_)
    if (t.move < 0) return false;
  return true;
}

std::string CounterMachine::symbol_name(Symbol s) const {
  if (s == kLeftEnd) return "^";
  if (s == kRightEnd) return "$";
  return alphabet_.name(s);
}

Configuration initial_configuration(const CounterMachine& m) {
  return Configuration{m.initial(), 0, std::vector<std::int64_t>(m.counters(), 0)};
}

Symbol tape_symbol(const Word& w, std::size_t head) {
  if (head == 0) return kLeftEnd;
  if (head == w.size() + 1) return kRightEnd;
  return w.at(head - 1);
}

bool guard_holds(const std::vector<std::uint8_t>& guard, const std::vector<std::int64_t>& counters) {
  for (std::size_t j = 0; j < guard.size(); ++j)
    if ((counters[j] != 0) != (guard[j] != 0)) return false;
  return true;
}

std::size_t guard_code(const std::vector<std::int64_t>& counters) {
  std::size_t code = 0;
  for (std::size_t j = 0; j < counters.size(); ++j)
    if (counters[j] != 0) code |= std::size_t{1} << j;
  return code;
}

std::vector<std::uint8_t> guard_of_code(std::size_t code, std::size_t k) {
  std::vector<std::uint8_t> g(k);
  for (std::size_t j = 0; j < k; ++j) g[j] = (code >> j) & 1U;
  return g;
}

std::vector<std::pair<std::size_t, Configuration>> cm_step(const CounterMachine& m, const Word& w,
                                                           const Configuration& c) {
  std::vector<std::pair<std::size_t, Configuration>> out;
  Symbol s = tape_symbol(w, c.head);
  for (std::size_t i = 0; i < m.transitions().size(); ++i) {
    const auto& t = m.transition(i);
    if (t.from != c.state || t.symbol != s || !guard_holds(t.guard, c.counters)) continue;
    Configuration next = c;
    next.state = t.to;
    next.head = static_cast<std::size_t>(static_cast<std::int64_t>(c.head) + t.move);
    for (std::size_t j = 0; j < next.counters.size(); ++j) next.counters[j] += t.update[j];
    out.emplace_back(i, std::move(next));
  }
  return out;
}

MachineResult cm_accepts(const CounterMachine& m, const Word& w, const SearchLimits& limits) {
  for (auto a : w)
    if (a >= m.alphabet().size()) fail(ErrorKind::InvalidInput, "letter outside the alphabet");
  std::int64_t cap = limits.counter_cap.value_or(
      static_cast<std::int64_t>(w.size() * m.counters()) + 8);
  StepBudget budget(limits.steps);
  MachineResult result;

  struct Node {
    Configuration config;
    std::size_t parent;
    std::size_t via;
  };
  std::vector<Node> nodes{{initial_configuration(m), SIZE_MAX, SIZE_MAX}};
  std::set<Configuration> seen{nodes.front().config};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Configuration cfg = nodes[i].config;
    if (m.is_accepting(cfg.state) && (!limits.end_test || limits.end_test(cfg.counters))) {
      for (std::size_t n = i; nodes[n].parent != SIZE_MAX; n = nodes[n].parent)
        result.trace.push_back(nodes[n].via);
      std::reverse(result.trace.begin(), result.trace.end());
      result.verdict = MachineVerdict::Accept;
      return result;
    }
    if (!budget.consume()) {
      result.verdict = MachineVerdict::Unknown;
      return result;
    }
    for (auto& [t, next] : cm_step(m, w, cfg)) {
      bool over = false;
      for (auto c : next.counters) over = over || c > cap;
      if (over) {
        result.cap_reached = true;
        continue;
      }
      if (seen.insert(next).second) nodes.push_back({std::move(next), i, t});
    }
  }
  result.verdict = result.cap_reached ? MachineVerdict::Unknown : MachineVerdict::Reject;
  return result;
}

std::size_t sign_alternations(const std::vector<int>& values) {
  std::size_t count = 0;
  int last = 0;
  for (int v : values) {
    if (v == 0) continue;
    if (last != 0 && (v > 0) != (last > 0)) ++count;
    last = v;
  }
  return count;
}

Reversals reversal_monitor(const CounterMachine& m, const std::vector<std::size_t>& run) {
  Reversals out;
  std::vector<int> moves;
  std::vector<std::vector<int>> columns(m.counters());
  for (auto i : run) {
    const auto& t = m.transition(i);
    moves.push_back(t.move);
    for (std::size_t j = 0; j < m.counters(); ++j) columns[j].push_back(t.update[j]);
  }
  out.head = sign_alternations(moves);
  for (const auto& col : columns) out.counters.push_back(sign_alternations(col));
  return out;
}

std::optional<Configuration> cm_replay(const CounterMachine& m, const Word& w,
                                       const std::vector<std::size_t>& run) {
  Configuration c = initial_configuration(m);
  for (auto i : run) {
    if (i >= m.transitions().size()) return std::nullopt;
    const auto& t = m.transition(i);
    if (t.from != c.state || t.symbol != tape_symbol(w, c.head) || !guard_holds(t.guard, c.counters))
      return std::nullopt;
    c.state = t.to;
    c.head = static_cast<std::size_t>(static_cast<std::int64_t>(c.head) + t.move);
    for (std::size_t j = 0; j < c.counters.size(); ++j) c.counters[j] += t.update[j];
  }
  return c;
}

namespace {

enum Status : std::uint8_t { kIni, kInc, kDec, kZero };

bool assumed_positive(std::uint8_t s) { return s == kInc || s == kDec; }

std::string status_tag(const std::vector<std::uint8_t>& s) {
  static const char* tags = "I+-0";
  std::string out;
  for (auto x : s) out += tags[x];
  return out;
}

}  // namespace

CounterMachine normalize(const CounterMachine& m) {
  if (!m.one_way()) fail(ErrorKind::InvalidInput, "normal form needs a one-way machine");
  std::size_t k = m.counters();
  std::size_t guards = guard_count(k);

  // Accepting states hand over to a drain that walks to the right endmarker,
  // empties the counters and then enters the only accepting state.
  std::set<std::string> taken(m.state_names().begin(), m.state_names().end());
  auto names = m.state_names();
  auto drain = static_cast<StateId>(names.size());
  names.push_back(fresh_name(taken, "drain"));
  taken.insert(names.back());
  auto accept = static_cast<StateId>(names.size());
  names.push_back(fresh_name(taken, "accept"));
  std::vector<MachineTransition> steps = m.transitions();
  std::vector<int> no_update(k, 0);
  for (StateId q = 0; q < m.num_states(); ++q) {
    if (!m.is_accepting(q)) continue;
    for (auto s : all_symbols(m.alphabet()))
      for (std::size_t g = 0; g < guards; ++g)
        steps.push_back({q, s, guard_of_code(g, k), drain, 0, no_update});
  }
  for (auto s : all_symbols(m.alphabet())) {
    for (std::size_t g = 0; g < guards; ++g) {
      auto guard = guard_of_code(g, k);
      if (s != kRightEnd) {
        steps.push_back({drain, s, guard, drain, 1, no_update});
      } else if (g == 0) {
        steps.push_back({drain, s, guard, accept, 0, no_update});
      } else {
        std::vector<int> down(k);
        for (std::size_t j = 0; j < k; ++j) down[j] = -static_cast<int>(guard[j]);
        steps.push_back({drain, s, guard, drain, 0, down});
      }
    }
  }

  // Product with per-counter statuses, reachable part only.
  using Key = std::pair<StateId, std::vector<std::uint8_t>>;
  std::map<Key, StateId> ids;
  std::vector<Key> keys;
  std::vector<std::string> out_names;
  auto id_of = [&](StateId q, const std::vector<std::uint8_t>& s) {
    auto [it, added] = ids.emplace(Key{q, s}, static_cast<StateId>(keys.size()));
    if (added) {
      keys.emplace_back(q, s);
      out_names.push_back(k == 0 ? names[q] : names[q] + "[" + status_tag(s) + "]");
    }
    return it->second;
  };
  id_of(m.initial(), std::vector<std::uint8_t>(k, kIni));
  std::optional<StateId> final_state;
  std::vector<MachineTransition> out;
  std::set<std::tuple<StateId, Symbol, std::vector<std::uint8_t>, StateId, int, std::vector<int>>> emitted;
  auto emit = [&](MachineTransition t) {
    if (emitted.emplace(t.from, t.symbol, t.guard, t.to, t.move, t.update).second) out.push_back(std::move(t));
  };

  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto [q, status] = keys[i];
    auto from = static_cast<StateId>(i);
    for (const auto& t : steps) {
      if (t.from != q) continue;
      bool consistent = true;
      for (std::size_t j = 0; j < k; ++j) consistent = consistent && (t.guard[j] != 0) == assumed_positive(status[j]);
      if (!consistent) continue;
      if (t.to == accept) {
        bool settled = true;
        for (auto s : status) settled = settled && (s == kIni || s == kZero);
        if (!settled) continue;
        if (!final_state) {
          final_state = static_cast<StateId>(keys.size());
          keys.emplace_back(accept, std::vector<std::uint8_t>{});
          out_names.push_back(names[accept]);
        }
        emit({from, t.symbol, std::vector<std::uint8_t>(k, 0), *final_state, 0, no_update});
        continue;
      }
      std::vector<std::vector<std::uint8_t>> options{{}};
      for (std::size_t j = 0; j < k; ++j) {
        std::vector<std::uint8_t> next_status;
        if (t.update[j] > 0) {
          if (status[j] == kIni || status[j] == kInc) next_status = {kInc};
        } else if (t.update[j] < 0) {
          next_status = {kDec, kZero};
        } else {
          next_status = {status[j]};
        }
        std::vector<std::vector<std::uint8_t>> grown;
        for (const auto& o : options)
          for (auto s : next_status) {
            auto g = o;
            g.push_back(s);
            grown.push_back(std::move(g));
          }
        options = std::move(grown);
      }
      for (const auto& s2 : options) {
        StateId to = id_of(t.to, s2);
        for (std::size_t g = 0; g < guards; ++g) {
          auto guard = guard_of_code(g, k);
          if (compatible(guard, t.update)) emit({from, t.symbol, guard, to, t.move, t.update});
        }
      }
    }
  }
  std::vector<bool> accepting(keys.size(), false);
  if (final_state) accepting[*final_state] = true;
  // The final state id may precede later-discovered states only in
  // numbering; keys and names stay aligned.
  return CounterMachine(k, m.alphabet(), std::move(out_names), 0, std::move(accepting), std::move(out),
                        m.reversal_bound());
}

EpsilonPA rbcm_to_epsilon_pa(const CounterMachine& m) {
  if (!m.one_way()) fail(ErrorKind::InvalidInput, "translation needs a one-way machine");
  std::size_t k = m.counters();
  std::size_t dim = k == 0 ? 1 : 2 * k;
  PaBuilder b(m.alphabet(), dim);
  std::map<std::pair<StateId, Symbol>, StateId> ids;
  std::vector<std::pair<StateId, Symbol>> keys;
  auto id_of = [&](StateId q, Symbol s) {
    auto [it, added] = ids.emplace(std::make_pair(q, s), static_cast<StateId>(keys.size()));
    if (added) {
      keys.emplace_back(q, s);
      b.add_state(m.state_name(q) + "@" + m.symbol_name(s), s == kRightEnd && m.is_accepting(q));
    }
    return it->second;
  };
  id_of(m.initial(), kLeftEnd);
  std::set<std::tuple<StateId, Letter, Vec, StateId>> emitted;
  auto emit = [&](StateId from, Letter a, const Vec& v, StateId to) {
    if (emitted.emplace(from, a, v, to).second) b.add_transition(from, a, v, to);
  };
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto [q, sym] = keys[i];
    auto from = static_cast<StateId>(i);
    for (const auto& t : m.transitions()) {
      if (t.from != q || t.symbol != sym) continue;
      Vec v(dim, 0);
      for (std::size_t j = 0; j < k; ++j) {
        if (t.update[j] > 0) v[2 * j] = 1;
        if (t.update[j] < 0) v[2 * j + 1] = 1;
      }
      if (t.move == 0) {
        emit(from, kEpsilon, v, id_of(t.to, sym));
      } else {
        for (Letter a = 0; a < m.alphabet().size(); ++a) emit(from, a, v, id_of(t.to, a));
        emit(from, kEpsilon, v, id_of(t.to, kRightEnd));
      }
    }
  }
  Conjunction balance;
  for (std::size_t j = 0; j < k; ++j) {
    Vec c(dim, 0);
    c[2 * j] = 1;
    c[2 * j + 1] = -1;
    balance.push_back(LinearAtom{c, Rel::Eq, 0});
  }
  return b.build_epsilon(ConstraintSet::of(dim, std::move(balance)));
}

PaMachine pa_to_rbcm(const ParikhAutomaton& a) {
  std::size_t k = a.dimension();
  std::size_t guards = guard_count(k);
  std::set<std::string> taken(a.state_names().begin(), a.state_names().end());
  std::vector<std::string> names = a.state_names();
  auto begin = static_cast<StateId>(names.size());
  names.push_back(fresh_name(taken, "begin"));
  taken.insert(names.back());
  auto end = static_cast<StateId>(names.size());
  names.push_back(fresh_name(taken, "end"));
  taken.insert(names.back());

  std::vector<MachineTransition> ts;
  std::vector<int> none(k, 0);
  auto add_all_guards = [&](StateId from, Symbol s, StateId to, int move, const std::vector<int>& update) {
    std::vector<std::size_t> by_guard(guards, SIZE_MAX);
    for (std::size_t g = 0; g < guards; ++g) {
      auto guard = guard_of_code(g, k);
      if (!compatible(guard, update)) continue;
      by_guard[g] = ts.size();
      ts.push_back({from, s, guard, to, move, update});
    }
    return by_guard;
  };

  PaMachine out{CounterMachine(k, a.alphabet(), {"x"}, 0, {false}, {}), {}, {}, {}, {}};
  out.start = add_all_guards(begin, kLeftEnd, a.initial(), 1, none);
  for (std::size_t i = 0; i < a.transitions().size(); ++i) {
    const auto& t = a.transition(i);
    std::int64_t height = 1;
    for (auto x : t.vec) height = std::max(height, x);
    std::vector<std::vector<std::size_t>> chain;
    StateId from = t.from;
    for (std::int64_t step = 0; step < height; ++step) {
      bool last = step + 1 == height;
      StateId to = t.to;
      if (!last) {
        to = static_cast<StateId>(names.size());
        names.push_back(fresh_name(taken, "t" + std::to_string(i) + "." + std::to_string(step + 1)));
        taken.insert(names.back());
      }
      std::vector<int> update(k);
      for (std::size_t j = 0; j < k; ++j) update[j] = t.vec[j] > step ? 1 : 0;
      chain.push_back(add_all_guards(from, t.letter, to, last ? 1 : 0, update));
      from = to;
    }
    out.chains.push_back(std::move(chain));
  }
  out.finish.assign(a.num_states(), std::vector<std::size_t>(guards, SIZE_MAX));
  for (StateId q = 0; q < a.num_states(); ++q)
    if (a.is_accepting(q)) out.finish[q] = add_all_guards(q, kRightEnd, end, 0, none);

  std::vector<bool> accepting(names.size(), false);
  accepting[end] = true;
  out.machine = CounterMachine(k, a.alphabet(), std::move(names), begin, std::move(accepting), std::move(ts));
  auto acceptance = std::make_shared<const SemilinearSet>(a.acceptance());
  out.end_test = [acceptance](const std::vector<std::int64_t>& counters) {
    return acceptance->contains(Vec(counters.begin(), counters.end()));
  };
  return out;
}

std::vector<std::size_t> machine_run_for(const PaMachine& pm, const ParikhAutomaton& a, const Run& run) {
  std::vector<std::int64_t> counters(a.dimension(), 0);
  std::vector<std::size_t> out{pm.start.at(0)};
  auto take = [&](std::size_t t) {
    if (t == SIZE_MAX) fail(ErrorKind::InvariantViolation, "no machine transition for this guard");
    out.push_back(t);
    const auto& mt = pm.machine.transition(t);
    for (std::size_t j = 0; j < counters.size(); ++j) counters[j] += mt.update[j];
  };
  for (auto t : run.transitions)
    for (const auto& step : pm.chains.at(t)) take(step.at(guard_code(counters)));
  StateId last = run_final_state(a, run);
  if (a.is_accepting(last)) take(pm.finish.at(last).at(guard_code(counters)));
  return out;
}

CounterMachine scan_wrapper(const CounterMachine& m) {
  std::size_t k = m.counters();
  std::set<std::string> taken(m.state_names().begin(), m.state_names().end());
  auto names = m.state_names();
  auto right = static_cast<StateId>(names.size());
  names.push_back(fresh_name(taken, "scan_right"));
  taken.insert(names.back());
  auto left = static_cast<StateId>(names.size());
  names.push_back(fresh_name(taken, "scan_left"));
  auto ts = m.transitions();
  std::vector<std::uint8_t> zero_guard(k, 0);
  std::vector<int> none(k, 0);
  ts.push_back({right, kLeftEnd, zero_guard, right, 1, none});
  for (Letter a = 0; a < m.alphabet().size(); ++a) ts.push_back({right, a, zero_guard, right, 1, none});
  ts.push_back({right, kRightEnd, zero_guard, left, -1, none});
  for (Letter a = 0; a < m.alphabet().size(); ++a) ts.push_back({left, a, zero_guard, left, -1, none});
  ts.push_back({left, kLeftEnd, zero_guard, m.initial(), 0, none});
  auto accepting = m.accepting();
  accepting.push_back(false);
  accepting.push_back(false);
  std::optional<std::size_t> bound;
  if (m.reversal_bound()) bound = *m.reversal_bound() + 2;
  return CounterMachine(k, m.alphabet(), std::move(names), right, std::move(accepting), std::move(ts), bound);
}

}  // namespace parikh
