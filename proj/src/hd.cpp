#include "parikh/hd.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace parikh {

Run run_resolver(const ParikhAutomaton& a, const Resolver& r, const Word& w) {
  Run run;
  auto session = r.start();
  StateId state = a.initial();
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto t = session(w[i]);
    bool ok = t && *t < a.transitions().size() && a.transition(*t).from == state &&
              a.transition(*t).letter == w[i];
    if (!ok) {
      Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i + 1));
      fail(ErrorKind::ResolverFault, "resolver '" + r.name() + "' has no chaining transition on prefix '" +
                                         a.alphabet().format_word(prefix) + "'");
    }
    run.transitions.push_back(*t);
    state = a.transition(*t).to;
  }
  return run;
}

ResolverVerdict validate_resolver(const ParikhAutomaton& a, const Resolver& r, std::size_t max_len) {
  ResolverVerdict verdict;
  for_each_word(a.alphabet().size(), max_len, [&](const Word& w) {
    if (!member(a, w)) return true;
    if (accepts_run(a, run_resolver(a, r, w))) return true;
    verdict.valid = false;
    verdict.counterexample = w;
    return false;
  });
  return verdict;
}

std::size_t AdamStrategy::depth() const {
  std::size_t d = 0;
  if (!stop)
    for (const auto& [move, child] : replies) d = std::max(d, 1 + child.depth());
  return d;
}

namespace {

using Frontier = std::vector<std::pair<StateId, Vec>>;

struct Position {
  bool alive = true;
  StateId state = 0;
  Vec image;
  Frontier frontier;
};

class LetterGame {
 public:
  LetterGame(const ParikhAutomaton& a, StepBudget& budget) : a_(a), budget_(budget) {}

  bool wins(const Position& pos, std::size_t remaining) {
    if (adam_wins_now(pos)) return true;
    if (remaining == 0) return false;
    auto key = std::make_tuple(pos.alive, pos.state, pos.image, pos.frontier, remaining);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (!budget_.consume()) {
      out_of_budget_ = true;
      return false;
    }
    bool result = false;
    for (Letter l = 0; l < a_.alphabet().size() && !result; ++l) result = letter_wins(pos, l, remaining);
    memo_.emplace(std::move(key), result);
    return result;
  }

  AdamStrategy strategy(const Position& pos, std::size_t remaining) {
    AdamStrategy s;
    if (adam_wins_now(pos)) return s;
    for (Letter l = 0; l < a_.alphabet().size(); ++l) {
      if (!letter_wins(pos, l, remaining)) continue;
      s.stop = false;
      s.letter = l;
      for (const auto& [move, child] : replies(pos, l))
        s.replies.emplace_back(move, strategy(child, remaining - 1));
      return s;
    }
    fail(ErrorKind::InvariantViolation, "strategy requested at a position Adam does not win");
  }

  Position root() const {
    return Position{true, a_.initial(), Vec(a_.dimension(), 0), {{a_.initial(), Vec(a_.dimension(), 0)}}};
  }
  bool out_of_budget() const { return out_of_budget_; }
  std::uint64_t positions() const { return memo_.size(); }

 private:
  bool accepting_pair(StateId q, const Vec& v) {
    if (!a_.is_accepting(q)) return false;
    auto it = accept_cache_.find(v);
    if (it == accept_cache_.end()) it = accept_cache_.emplace(v, a_.acceptance().contains(v)).first;
    return it->second;
  }

  bool adam_wins_now(const Position& pos) {
    bool member = std::any_of(pos.frontier.begin(), pos.frontier.end(),
                              [&](const auto& p) { return accepting_pair(p.first, p.second); });
    return member && !(pos.alive && accepting_pair(pos.state, pos.image));
  }

  bool letter_wins(const Position& pos, Letter l, std::size_t remaining) {
    auto next = replies(pos, l);
    if (next.empty()) return false;
    return std::all_of(next.begin(), next.end(),
                       [&](const auto& r) { return wins(r.second, remaining - 1); });
  }

  /// Eve's options after Adam plays l; empty when no run survives l.
  std::vector<std::pair<std::optional<std::size_t>, Position>> replies(const Position& pos, Letter l) {
    std::set<std::pair<StateId, Vec>> next;
    for (const auto& [q, v] : pos.frontier)
      for (auto t : a_.outgoing(q, l)) next.emplace(a_.transition(t).to, add(v, a_.transition(t).vec));
    if (next.empty()) return {};
    Frontier frontier(next.begin(), next.end());
    std::vector<std::pair<std::optional<std::size_t>, Position>> out;
    const auto& moves = pos.alive ? a_.outgoing(pos.state, l) : std::vector<std::size_t>{};
    if (moves.empty()) {
      out.emplace_back(std::nullopt, Position{false, 0, {}, frontier});
      return out;
    }
    for (auto t : moves) {
      const auto& tr = a_.transition(t);
      out.emplace_back(t, Position{true, tr.to, add(pos.image, tr.vec), frontier});
    }
    return out;
  }

  const ParikhAutomaton& a_;
  StepBudget& budget_;
  bool out_of_budget_ = false;
  std::map<Vec, bool> accept_cache_;
  std::map<std::tuple<bool, StateId, Vec, Frontier, std::size_t>, bool> memo_;
};

std::optional<std::string> replay(const ParikhAutomaton& a, const AdamStrategy& s, Word& word,
                                  std::optional<StateId> eve, const Vec& image) {
  if (s.stop) {
    if (!member(a, word))
      return "leaf word '" + a.alphabet().format_word(word) + "' is not a member";
    if (eve && a.is_accepting(*eve) && a.acceptance().contains(image))
      return "Eve's run on '" + a.alphabet().format_word(word) + "' is accepting";
    return std::nullopt;
  }
  std::vector<std::optional<std::size_t>> moves;
  if (eve)
    for (std::size_t t = 0; t < a.transitions().size(); ++t)
      if (a.transition(t).from == *eve && a.transition(t).letter == s.letter) moves.push_back(t);
  if (moves.empty()) moves.push_back(std::nullopt);
  word.push_back(s.letter);
  for (const auto& move : moves) {
    auto it = std::find_if(s.replies.begin(), s.replies.end(),
                           [&](const auto& r) { return r.first == move; });
    if (it == s.replies.end()) {
      word.pop_back();
      return "no reply for an Eve move after '" + a.alphabet().format_word(word) + "'";
    }
    std::optional<std::string> why;
    if (move) {
      const auto& tr = a.transition(*move);
      why = replay(a, it->second, word, tr.to, add(image, tr.vec));
    } else {
      why = replay(a, it->second, word, std::nullopt, image);
    }
    if (why) {
      word.pop_back();
      return why;
    }
  }
  word.pop_back();
  return std::nullopt;
}

void count_from(const AutomatonBase& a, StateId root, StateId q, std::vector<bool>& on_path,
                std::size_t& count) {
  for (auto t : a.outgoing(q)) {
    StateId to = a.transition(t).to;
    if (to == root) {
      ++count;
    } else if (!on_path[to]) {
      on_path[to] = true;
      count_from(a, root, to, on_path, count);
      on_path[to] = false;
    }
  }
}

}  // namespace

GameResult letter_game(const ParikhAutomaton& a, std::size_t horizon, StepBudget& budget) {
  LetterGame game(a, budget);
  GameResult result;
  auto root = game.root();
  if (game.wins(root, horizon)) {
    result.outcome = GameOutcome::AdamWins;
    result.witness = game.strategy(root, horizon);
  } else {
    result.outcome = game.out_of_budget() ? GameOutcome::Unknown : GameOutcome::EveWinsToHorizon;
  }
  result.positions = game.positions();
  return result;
}

GameResult letter_game(const ParikhAutomaton& a, std::size_t horizon, std::uint64_t budget_steps) {
  StepBudget budget(budget_steps);
  return letter_game(a, horizon, budget);
}

std::optional<std::string> replay_adam_strategy(const ParikhAutomaton& a, const AdamStrategy& s) {
  Word word;
  return replay(a, s, word, a.initial(), Vec(a.dimension(), 0));
}

std::size_t count_rooted_cycles(const AutomatonBase& a) {
  std::size_t count = 0;
  for (StateId root = 0; root < a.num_states(); ++root) {
    std::vector<bool> on_path(a.num_states(), false);
    on_path[root] = true;
    count_from(a, root, root, on_path, count);
  }
  return count;
}

std::size_t pumping_length(std::size_t states, std::size_t cycles) {
  return (states + 1) * (2 * cycles + 1);
}

PumpDecomposition pumping_decompose(const ParikhAutomaton& a, const Resolver& r, const Word& w) {
  PumpDecomposition dec;
  dec.states = a.num_states();
  dec.cycles = count_rooted_cycles(a);
  dec.length_bound = pumping_length(dec.states, dec.cycles);
  if (w.size() <= dec.length_bound)
    fail(ErrorKind::Precondition, "word length " + std::to_string(w.size()) +
                                      " does not exceed the pumping length " +
                                      std::to_string(dec.length_bound));
  auto run = run_resolver(a, r, w).transitions;
  std::size_t seg = dec.states + 1;

  // First cycle to close inside each segment: (start offset, transitions).
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> found;
  for (std::size_t j = 0; j < 2 * dec.cycles + 1; ++j) {
    std::size_t begin = j * seg;
    std::vector<StateId> states{a.transition(run[begin]).from};
    std::optional<std::pair<std::size_t, std::vector<std::size_t>>> cycle;
    for (std::size_t k = begin; k < begin + seg && !cycle; ++k) {
      StateId to = a.transition(run[k]).to;
      auto pos = std::find(states.begin(), states.end(), to);
      if (pos != states.end()) {
        std::size_t start = begin + static_cast<std::size_t>(pos - states.begin());
        cycle.emplace(start, std::vector<std::size_t>(run.begin() + static_cast<std::ptrdiff_t>(start),
                                                      run.begin() + static_cast<std::ptrdiff_t>(k + 1)));
      }
      states.push_back(to);
    }
    if (!cycle) fail(ErrorKind::InvariantViolation, "segment without a cycle");
    found.push_back(std::move(*cycle));
  }

  for (std::size_t j0 = 0; j0 < found.size(); ++j0) {
    for (std::size_t j1 = j0 + 2; j1 < found.size(); ++j1) {
      if (found[j0].second != found[j1].second) continue;
      std::size_t len = found[j0].second.size();
      std::size_t s0 = found[j0].first;
      std::size_t s1 = found[j1].first;
      auto slice = [&](std::size_t from, std::size_t to) {
        return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
      };
      dec.u = slice(0, s0);
      dec.v = slice(s0, s0 + len);
      dec.x = slice(s0 + len, s1);
      dec.z = slice(s1 + len, w.size());
      return dec;
    }
  }
  fail(ErrorKind::InvariantViolation, "no cycle repeats in two non-adjacent segments");
}

std::vector<PumpViolation> pumping_check(const ParikhAutomaton& a, const PumpDecomposition& dec,
                                         const std::vector<Word>& suffixes) {
  auto cat = [](std::initializer_list<const Word*> parts) {
    Word out;
    for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
  };
  std::vector<PumpViolation> out;
  for (const auto& z : suffixes) {
    if (!member(a, cat({&dec.u, &dec.v, &dec.x, &dec.v, &z}))) continue;
    for (auto pumped : {cat({&dec.u, &dec.v, &dec.v, &dec.x, &z}), cat({&dec.u, &dec.x, &dec.v, &dec.v, &z})})
      if (!member(a, pumped)) out.push_back({z, std::move(pumped)});
  }
  return out;
}

}  // namespace parikh
