#include "support/fixtures.hpp"

#include <functional>

#include "parikh/semilinear.hpp"

namespace fixture {

using namespace parikh;

namespace {

LinearAtom lin(Vec c, Rel r, std::int64_t rhs) { return LinearAtom{std::move(c), r, rhs}; }
CongruenceAtom mod(Vec c, std::int64_t m, std::int64_t r) { return CongruenceAtom{std::move(c), m, r}; }

ConstraintSet when(std::size_t dim, Conjunction atoms) { return ConstraintSet::of(dim, std::move(atoms)); }

/// Single accepting state with one loop per letter.
ParikhAutomaton loops(std::vector<std::string> letters, std::vector<Vec> images, SemilinearSet c,
                      bool accepting = true) {
  std::size_t dim = images.front().size();
  PaBuilder b(Alphabet(letters), dim);
  auto q = b.add_state("q", accepting);
  for (std::size_t i = 0; i < letters.size(); ++i) b.add_transition(q, letters[i], images[i], q);
  return b.build(std::move(c));
}

}  // namespace

ParikhAutomaton a_loop_eq5() { return loops({"a"}, {{1}}, when(1, {lin({1}, Rel::Eq, 5)})); }

ParikhAutomaton equal_ab() { return loops({"a", "b"}, {{1, 0}, {0, 1}}, when(2, {lin({1, -1}, Rel::Eq, 0)})); }

ParikhAutomaton universal_ab() { return loops({"a", "b"}, {{0}, {0}}, ConstraintSet::total(1)); }

ParikhAutomaton no_accepting() { return loops({"a", "b"}, {{1}, {1}}, ConstraintSet::total(1), false); }

std::vector<DecideCase> decide_suite() {
  std::vector<DecideCase> out;
  auto push = [&](std::string name, ParikhAutomaton a, bool empty, bool finite) {
    out.push_back({std::move(name), std::move(a), empty, finite});
  };
  push("a-loop x=5", a_loop_eq5(), false, true);
  push("ex1", corpus_get("ex1").automaton, false, false);
  push("nonDyck", corpus_get("nonDyck").automaton, false, false);
  push("no accepting state", no_accepting(), true, true);
  push("a-loop x=11", loops({"a"}, {{1}}, when(1, {lin({1}, Rel::Eq, 11)})), false, true);
  push("a-loop x=1 mod 3", loops({"a"}, {{1}}, when(1, {mod({1}, 3, 1)})), false, false);
  push("a-loop x<0", loops({"a"}, {{1}}, when(1, {lin({1}, Rel::Lt, 0)})), true, true);
  push("equal a b up to 3",
       loops({"a", "b"}, {{1, 0}, {0, 1}}, when(2, {lin({1, -1}, Rel::Eq, 0), lin({1, 0}, Rel::Le, 3)})), false,
       true);
  push("twice as many a", loops({"a", "b"}, {{1, 0}, {0, 1}}, when(2, {lin({1, -2}, Rel::Eq, 0)})), false, false);
  {
    PaBuilder b(Alphabet({"a", "b"}), 1);
    auto q0 = b.add_state("q0");
    auto q1 = b.add_state("q1");
    auto q2 = b.add_state("q2", true);
    b.add_transition(q0, "a", {0}, q1);
    b.add_transition(q1, "b", {0}, q2);
    push("chain ab", b.build(ConstraintSet::total(1)), false, true);
  }
  {
    PaBuilder b(Alphabet({"a"}), 1);
    auto q0 = b.add_state("q0");
    auto q1 = b.add_state("q1", true);
    b.add_transition(q0, "a", {1}, q0);
    b.add_transition(q1, "a", {1}, q1);
    push("unreachable accepting state", b.build(ConstraintSet::total(1)), true, true);
  }
  push("a-loop of 2 odd", loops({"a"}, {{2}}, when(1, {mod({1}, 2, 1)})), true, true);
  {
    PaBuilder b(Alphabet({"a", "b"}), 2);
    auto q0 = b.add_state("q0");
    auto q1 = b.add_state("q1", true);
    b.add_transition(q0, "a", {1, 0}, q0);
    b.add_transition(q0, "b", {0, 1}, q1);
    b.add_transition(q1, "b", {0, 1}, q1);
    push("a^n b^n n>=2", b.build(when(2, {lin({1, 1}, Rel::Ge, 4), lin({1, -1}, Rel::Eq, 0)})), false, false);
  }
  push("explicit singleton 3", loops({"a"}, {{1}}, ExplicitSemilinear::singleton({3})), false, true);
  push("zero loop", loops({"a"}, {{0}}, when(1, {lin({1}, Rel::Eq, 0)})), false, false);
  {
    // the only cycle with a nonzero image is unreachable
    PaBuilder b(Alphabet({"a", "b"}), 1);
    auto q0 = b.add_state("q0", true);
    auto q1 = b.add_state("q1");
    b.add_transition(q0, "a", {0}, q0);
    b.add_transition(q1, "b", {1}, q1);
    push("disconnected cycle", b.build(when(1, {lin({1}, Rel::Eq, 1)})), true, true);
  }
  {
    PaBuilder b(Alphabet({"a", "b"}), 1);
    auto q0 = b.add_state("q0");
    auto q1 = b.add_state("q1", true);
    auto q2 = b.add_state("q2");
    b.add_transition(q0, "a", {0}, q1);
    b.add_transition(q2, "b", {1}, q2);
    b.add_transition(q2, "a", {0}, q1);
    push("disconnected counting state", b.build(when(1, {lin({1}, Rel::Ge, 1)})), true, true);
  }
  push("a-loop 0<x<=2", loops({"a"}, {{1}}, when(1, {lin({1}, Rel::Ne, 0), lin({1}, Rel::Le, 2)})), false, true);
  push("D", corpus_get("D").automaton, false, false);
  push("E", corpus_get("E").automaton, false, false);
  return out;
}

std::vector<EpsilonCase> epsilon_cases() {
  std::vector<EpsilonCase> out;
  auto push = [&](std::string name, const PaBuilder& b, SemilinearSet c) {
    out.push_back({std::move(name), b.build_epsilon(std::move(c))});
  };
  out.push_back({"no epsilon", EpsilonPA::from(corpus_get("ex1").automaton)});
  {
    PaBuilder b(Alphabet({"a"}), 1);
    auto q0 = b.add_state("q0");
    auto q1 = b.add_state("q1", true);
    b.add_transition(q0, kEpsilon, {1}, q0);
    b.add_transition(q0, "a", {0}, q1);
    push("loop before letter", b, when(1, {lin({1}, Rel::Ge, 2)}));
  }
  {
    PaBuilder b(Alphabet({"a"}), 1);
    auto q0 = b.add_state("q0");
    auto q1 = b.add_state("q1", true);
    auto q2 = b.add_state("q2", true);
    b.add_transition(q0, "a", {1}, q1);
    b.add_transition(q1, kEpsilon, {1}, q2);
    push("epsilon after accepting state", b, when(1, {lin({1}, Rel::Eq, 2)}));
  }
  {
    PaBuilder b(Alphabet({"a"}), 1);
    auto q0 = b.add_state("q0");
    auto q1 = b.add_state("q1", true);
    b.add_transition(q0, kEpsilon, {0}, q1);
    b.add_transition(q1, kEpsilon, {0}, q0);
    b.add_transition(q1, "a", {1}, q1);
    push("zero-image cycle", b, ConstraintSet::total(1));
  }
  {
    PaBuilder b(Alphabet({"a"}), 1);
    auto q0 = b.add_state("q0", true);
    b.add_transition(q0, kEpsilon, {1}, q0);
    b.add_transition(q0, "a", {0}, q0);
    push("odd epsilon count", b, when(1, {mod({1}, 2, 1)}));
  }
  {
    PaBuilder b(Alphabet({"a", "b"}), 2);
    auto q0 = b.add_state("q0");
    auto q1 = b.add_state("q1", true);
    b.add_transition(q0, kEpsilon, {1, 0}, q0);
    b.add_transition(q0, "a", {0, 0}, q1);
    b.add_transition(q1, kEpsilon, {0, 1}, q1);
    b.add_transition(q1, "b", {0, 0}, q1);
    push("two cycles", b, when(2, {lin({1, -1}, Rel::Eq, 0), lin({1, 0}, Rel::Ge, 1)}));
  }
  {
    PaBuilder b(Alphabet({"a"}), 2);
    auto q0 = b.add_state("q0", true);
    auto q1 = b.add_state("q1");
    b.add_transition(q0, "a", {1, 0}, q1);
    b.add_transition(q1, kEpsilon, {0, 1}, q0);
    push("epsilon return", b, when(2, {lin({0, 1}, Rel::Eq, 2)}));
  }
  {
    PaBuilder b(Alphabet({"a", "b"}), 1);
    auto q0 = b.add_state("q0");
    auto q1 = b.add_state("q1");
    auto q2 = b.add_state("q2", true);
    b.add_transition(q0, kEpsilon, {1}, q1);
    b.add_transition(q1, kEpsilon, {1}, q0);
    b.add_transition(q0, "a", {0}, q2);
    b.add_transition(q2, "b", {0}, q2);
    push("two-step cycle", b, when(1, {mod({1}, 4, 2)}));
  }
  {
    PaBuilder b(Alphabet({"a", "b"}), 1);
    auto q0 = b.add_state("q0");
    auto q1 = b.add_state("q1", true);
    b.add_transition(q0, "a", {1}, q0);
    b.add_transition(q0, kEpsilon, {0}, q1);
    b.add_transition(q1, "b", {1}, q1);
    push("epsilon bridge", b, when(1, {lin({1}, Rel::Le, 3)}));
  }
  {
    PaBuilder b(Alphabet({"a"}), 1);
    auto q0 = b.add_state("q0");
    auto q1 = b.add_state("q1", true);
    b.add_transition(q0, kEpsilon, {0}, q1);
    b.add_transition(q1, "a", {0}, q1);
    push("epsilon start", b, ConstraintSet::total(1));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> closure_pairs() {
  return {{"ex1", "E"},         {"ex1", "ex1"},        {"E", "E"},       {"ex1", "nonDyck"},
          {"nonDyck", "nonDyck"}, {"D", "D"},          {"Eprime", "E"},  {"Eprime", "ex1"},
          {"Nprime", "nonDyck"},  {"D", "ex1"}};
}

Resolver resolver_for(const CorpusEntry& entry) {
  return entry.resolver ? *entry.resolver : first_choice_resolver(entry.automaton);
}

std::vector<std::string> hd_corpus() { return {"ex1", "nonDyck", "D", "Eprime", "Nprime"}; }

namespace {

/// Machine assembly by names; a transition listed with guard "*" is added for
/// every guard compatible with its update.
class MachineSketch {
 public:
  MachineSketch(std::size_t k, std::vector<std::string> letters) : k_(k), sigma_(std::move(letters)) {}

  StateId state(const std::string& name, bool accepting = false) {
    names_.push_back(name);
    accepting_.push_back(accepting);
    return static_cast<StateId>(names_.size() - 1);
  }

  void add(StateId from, const std::string& sym, const std::string& guard, StateId to, int move,
           std::vector<int> update = {}) {
    if (update.empty()) update.assign(k_, 0);
    Symbol s = sym == "^" ? kLeftEnd : sym == "$" ? kRightEnd : sigma_.at(sym);
    for (std::size_t code = 0; code < (std::size_t{1} << k_); ++code) {
      std::vector<std::uint8_t> g(k_);
      bool ok = true;
      for (std::size_t j = 0; j < k_; ++j) {
        g[j] = (code >> j) & 1;
        if (guard != "*" && guard[j] - '0' != g[j]) ok = false;
        if (update[j] < 0 && g[j] == 0) ok = false;
      }
      if (ok) transitions_.push_back({from, s, g, to, move, update});
    }
  }

  CounterMachine build() const { return CounterMachine(k_, sigma_, names_, 0, accepting_, transitions_); }

 private:
  std::size_t k_;
  Alphabet sigma_;
  std::vector<std::string> names_;
  std::vector<bool> accepting_;
  std::vector<MachineTransition> transitions_;
};

}  // namespace

std::vector<MachineCase> machine_suite() {
  std::vector<MachineCase> out;
  {
    MachineSketch m(2, {"a", "b"});
    auto s = m.state("scan");
    auto d = m.state("drain");
    auto acc = m.state("acc", true);
    m.add(s, "^", "*", s, 1);
    m.add(s, "a", "*", s, 1, {1, 0});
    m.add(s, "b", "*", s, 1, {0, 1});
    m.add(s, "$", "*", d, 0);
    m.add(d, "$", "11", d, 0, {-1, -1});
    m.add(d, "$", "00", acc, 0);
    out.push_back({"eqab", m.build()});
  }
  {
    MachineSketch m(1, {"a", "b"});
    auto a = m.state("A");
    auto b = m.state("B");
    auto acc = m.state("acc", true);
    m.add(a, "^", "*", a, 1);
    m.add(a, "a", "*", a, 1, {1});
    m.add(a, "b", "1", b, 1, {-1});
    m.add(b, "b", "1", b, 1, {-1});
    m.add(a, "$", "0", acc, 0);
    m.add(b, "$", "0", acc, 0);
    out.push_back({"anbn", m.build()});
  }
  {
    MachineSketch m(0, {"a", "b"});
    auto s = m.state("s");
    auto s1 = m.state("s1");
    auto t = m.state("t", true);
    m.add(s, "^", "*", s, 1);
    m.add(s, "a", "*", s, 1);
    m.add(s, "b", "*", s, 1);
    m.add(s, "a", "*", s1, 1);
    m.add(s1, "a", "*", t, 1);
    m.add(t, "a", "*", t, 1);
    m.add(t, "b", "*", t, 1);
    out.push_back({"nocounter", m.build()});
  }
  {
    MachineSketch m(1, {"a", "b"});
    auto a = m.state("A");
    auto a2 = m.state("A2");
    auto b = m.state("B");
    auto acc = m.state("acc", true);
    m.add(a, "^", "*", a, 1);
    m.add(a, "a", "*", a2, 0, {1});
    m.add(a2, "a", "*", a, 1, {1});
    m.add(a, "b", "1", b, 1, {-1});
    m.add(b, "b", "1", b, 1, {-1});
    m.add(a, "$", "0", acc, 0);
    m.add(b, "$", "0", acc, 0);
    out.push_back({"stationary", m.build()});
  }
  return out;
}

}  // namespace fixture
