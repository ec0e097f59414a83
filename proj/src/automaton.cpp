#include "parikh/automaton.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace parikh {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty()) fail(ErrorKind::InvalidInput, "empty letter name");
    for (char c : n)
      if (std::isspace(static_cast<unsigned char>(c)))
        fail(ErrorKind::InvalidInput, "letter name contains whitespace: '" + n + "'");
    if (!index_.emplace(n, static_cast<Letter>(i)).second)
      fail(ErrorKind::InvalidInput, "duplicate letter '" + n + "'");
  }
}

std::optional<Letter> Alphabet::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Letter Alphabet::at(const std::string& name) const {
  auto a = find(name);
  if (!a) fail(ErrorKind::InvalidInput, "letter '" + name + "' is not in the alphabet");
  return *a;
}

bool Alphabet::single_char() const {
  return std::all_of(names_.begin(), names_.end(), [](const auto& n) { return n.size() == 1; });
}

Word Alphabet::parse_word(const std::string& text) const {
  Word w;
  bool spaced = std::any_of(text.begin(), text.end(),
                            [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (spaced || !single_char()) {
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) w.push_back(at(tok));
    return w;
  }
  for (char c : text) w.push_back(at(std::string(1, c)));
  return w;
}

std::string Alphabet::format_word(const Word& w) const {
  std::string out;
  bool compact = single_char();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i) out += ' ';
    out += name(w[i]);
  }
  return out;
}

AutomatonBase::AutomatonBase(Alphabet alphabet, std::size_t dim,
                             std::vector<std::string> state_names, StateId initial,
                             std::vector<bool> accepting, std::vector<Transition> transitions,
                             SemilinearSet acceptance, bool allow_epsilon)
    : alphabet_(std::move(alphabet)),
      dim_(dim),
      state_names_(std::move(state_names)),
      initial_(initial),
      accepting_(std::move(accepting)),
      transitions_(std::move(transitions)),
      acceptance_(std::move(acceptance)) {
  if (alphabet_.size() == 0) fail(ErrorKind::InvalidInput, "alphabet must not be empty");
  if (dim_ == 0) fail(ErrorKind::InvalidInput, "dimension must be at least 1");
  if (state_names_.empty()) fail(ErrorKind::InvalidInput, "automaton needs at least one state");
  if (initial_ >= state_names_.size()) fail(ErrorKind::InvalidInput, "initial state out of range");
  if (accepting_.size() != state_names_.size())
    fail(ErrorKind::InvalidInput, "accepting flags do not match the state count");
  std::set<std::string> seen;
  for (const auto& n : state_names_)
    if (!seen.insert(n).second) fail(ErrorKind::InvalidInput, "duplicate state '" + n + "'");
  if (acceptance_.dimension() != dim_)
    fail(ErrorKind::InvalidInput, "acceptance set has dimension " +
                                      std::to_string(acceptance_.dimension()) + ", expected " +
                                      std::to_string(dim_));
  std::size_t width = alphabet_.size() + 1;
  outgoing_.assign(state_names_.size(), {});
  by_letter_.assign(state_names_.size() * width, {});
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const auto& t = transitions_[i];
    auto where = "transition " + std::to_string(i);
    if (t.from >= state_names_.size() || t.to >= state_names_.size())
      fail(ErrorKind::InvalidInput, where + ": endpoint out of range");
    if (t.is_epsilon()) {
      if (!allow_epsilon) fail(ErrorKind::InvalidInput, where + ": epsilon transition");
    } else if (t.letter >= alphabet_.size()) {
      fail(ErrorKind::InvalidInput, where + ": letter out of range");
    }
    if (t.vec.size() != dim_)
      fail(ErrorKind::InvalidInput, where + ": vector has dimension " +
                                        std::to_string(t.vec.size()) + ", expected " +
                                        std::to_string(dim_));
    for (auto x : t.vec)
      if (x < 0) fail(ErrorKind::InvalidInput, where + ": negative vector entry");
    outgoing_[t.from].push_back(i);
    std::size_t slot = t.is_epsilon() ? alphabet_.size() : t.letter;
    by_letter_[t.from * width + slot].push_back(i);
  }
}

std::optional<StateId> AutomatonBase::find_state(const std::string& name) const {
  for (std::size_t i = 0; i < state_names_.size(); ++i)
    if (state_names_[i] == name) return static_cast<StateId>(i);
  return std::nullopt;
}

const std::vector<std::size_t>& AutomatonBase::outgoing(StateId q, Letter a) const {
  std::size_t width = alphabet_.size() + 1;
  std::size_t slot = a == kEpsilon ? alphabet_.size() : a;
  if (q >= state_names_.size() || slot >= width) return empty_;
  return by_letter_[q * width + slot];
}

EpsilonPA EpsilonPA::from(const ParikhAutomaton& a) {
  return EpsilonPA(a.alphabet(), a.dimension(), a.state_names(), a.initial(), a.accepting(),
                   a.transitions(), a.acceptance());
}

StateId PaBuilder::add_state(const std::string& name, bool accepting) {
  names_.push_back(name);
  accepting_.push_back(accepting);
  return static_cast<StateId>(names_.size() - 1);
}

ParikhAutomaton PaBuilder::build(SemilinearSet acceptance) const {
  return ParikhAutomaton(alphabet_, dim_, names_, initial_, accepting_, transitions_,
                         std::move(acceptance));
}

EpsilonPA PaBuilder::build_epsilon(SemilinearSet acceptance) const {
  return EpsilonPA(alphabet_, dim_, names_, initial_, accepting_, transitions_,
                   std::move(acceptance));
}

void check_run(const AutomatonBase& a, const Run& r) {
  StateId cur = a.initial();
  for (std::size_t i = 0; i < r.transitions.size(); ++i) {
    std::size_t t = r.transitions[i];
    if (t >= a.transitions().size())
      fail(ErrorKind::InvalidRun, "run step " + std::to_string(i) + ": no such transition");
    if (a.transition(t).from != cur)
      fail(ErrorKind::InvalidRun, "run step " + std::to_string(i) + ": does not chain");
    cur = a.transition(t).to;
  }
}

Word run_word(const AutomatonBase& a, const Run& r) {
  Word w;
  for (auto t : r.transitions)
    if (!a.transition(t).is_epsilon()) w.push_back(a.transition(t).letter);
  return w;
}

Vec run_image(const AutomatonBase& a, const Run& r) {
  Vec v(a.dimension(), 0);
  for (auto t : r.transitions) {
    const auto& tv = a.transition(t).vec;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += tv[k];
  }
  return v;
}

StateId run_final_state(const AutomatonBase& a, const Run& r) {
  return r.transitions.empty() ? a.initial() : a.transition(r.transitions.back()).to;
}

bool accepts_run(const AutomatonBase& a, const Run& r) {
  check_run(a, r);
  return a.is_accepting(run_final_state(a, r)) && a.acceptance().contains(run_image(a, r));
}

bool member(const ParikhAutomaton& a, const Word& w) {
  for (auto l : w)
    if (l >= a.alphabet().size()) fail(ErrorKind::InvalidInput, "letter outside the alphabet");
  std::set<std::pair<StateId, Vec>> current{{a.initial(), Vec(a.dimension(), 0)}};
  for (auto l : w) {
    std::set<std::pair<StateId, Vec>> next;
    for (const auto& [q, v] : current)
      for (auto t : a.outgoing(q, l)) next.emplace(a.transition(t).to, add(v, a.transition(t).vec));
    if (next.empty()) return false;
    current = std::move(next);
  }
  std::map<Vec, bool> cache;
  for (const auto& [q, v] : current) {
    if (!a.is_accepting(q)) continue;
    auto it = cache.find(v);
    if (it == cache.end()) it = cache.emplace(v, a.acceptance().contains(v)).first;
    if (it->second) return true;
  }
  return false;
}

bool is_deterministic(const ParikhAutomaton& a) {
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (Letter l = 0; l < a.alphabet().size(); ++l) {
      const auto& out = a.outgoing(q, l);
      for (std::size_t i = 1; i < out.size(); ++i) {
        const auto& t0 = a.transition(out[0]);
        const auto& ti = a.transition(out[i]);
        if (t0.to != ti.to || t0.vec != ti.vec) return false;
      }
    }
  }
  return true;
}

namespace {

std::string fresh_name(const AutomatonBase& a, const std::string& stem) {
  std::string name = stem;
  for (int i = 1; a.find_state(name); ++i) name = stem + "_" + std::to_string(i);
  return name;
}

}  // namespace

ParikhAutomaton complete(const ParikhAutomaton& a) {
  bool total = true;
  for (StateId q = 0; q < a.num_states() && total; ++q)
    for (Letter l = 0; l < a.alphabet().size(); ++l)
      if (a.outgoing(q, l).empty()) total = false;
  if (total) return a;
  auto names = a.state_names();
  auto accepting = a.accepting();
  auto transitions = a.transitions();
  auto sink = static_cast<StateId>(names.size());
  names.push_back(fresh_name(a, "sink"));
  accepting.push_back(false);
  Vec zero(a.dimension(), 0);
  for (StateId q = 0; q < a.num_states(); ++q)
    for (Letter l = 0; l < a.alphabet().size(); ++l)
      if (a.outgoing(q, l).empty()) transitions.push_back(Transition{q, l, zero, sink});
  for (Letter l = 0; l < a.alphabet().size(); ++l)
    transitions.push_back(Transition{sink, l, zero, sink});
  return ParikhAutomaton(a.alphabet(), a.dimension(), names, a.initial(), accepting, transitions,
                         a.acceptance());
}

Alphabet merge_alphabets(const Alphabet& x, const Alphabet& y) {
  auto names = x.names();
  for (const auto& n : y.names())
    if (!x.find(n)) names.push_back(n);
  return Alphabet(names);
}

ParikhAutomaton over_alphabet(const ParikhAutomaton& a, const Alphabet& target) {
  if (a.alphabet() == target) return a;
  auto transitions = a.transitions();
  for (auto& t : transitions) t.letter = target.at(a.alphabet().name(t.letter));
  return ParikhAutomaton(target, a.dimension(), a.state_names(), a.initial(), a.accepting(),
                         transitions, a.acceptance());
}

std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t max_len) {
  std::vector<Word> out;
  for_each_word(alphabet_size, max_len, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

}  // namespace parikh
