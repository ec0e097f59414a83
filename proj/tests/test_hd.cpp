#include <doctest.h>

#include <random>

#include "parikh/hd.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace parikh;

namespace {

// Horizon at which Adam first wins on E; found by the game search.
constexpr std::size_t kEHorizon = 3;

const CorpusEntry& non_dyck() {
  static const CorpusEntry e = corpus_get("nonDyck");
  return e;
}

Word w2(const std::string& s) { return oracle::word(non_dyck().automaton.alphabet(), s); }

}  // namespace

TEST_CASE("resolver runs on the non-Dyck automaton") {
  const auto& a = non_dyck().automaton;
  const auto& r = *non_dyck().resolver;
  auto run = run_resolver(a, r, w2("01"));
  REQUIRE(run.transitions.size() == 2);
  CHECK(a.state_name(a.transition(run.transitions[0]).to) == "qc");
  CHECK(a.state_name(a.transition(run.transitions[1]).to) == "qc");
  CHECK(run_resolver(a, r, {}).transitions.empty());
  auto one = run_resolver(a, r, w2("1"));
  CHECK(a.state_name(run_final_state(a, one)) == "qn");
  CHECK(accepts_run(a, one));
}

TEST_CASE("resolver validation") {
  const auto& a = non_dyck().automaton;
  CHECK(validate_resolver(a, *non_dyck().resolver, 10).valid);

  PositionalTable greedy;
  greedy.rules.push_back({0, 0, {}, 0});
  greedy.rules.push_back({0, 1, {}, 1});
  auto v = validate_resolver(a, positional_resolver(a, greedy), 6);
  CHECK_FALSE(v.valid);
  REQUIRE(v.counterexample);
  CHECK(*v.counterexample == w2("1"));

  auto none = fixture::no_accepting();
  CHECK(validate_resolver(none, first_choice_resolver(none), 6).valid);
}

TEST_CASE("positional rules are checked against the automaton") {
  const auto& a = non_dyck().automaton;
  PositionalTable bad;
  bad.rules.push_back({0, 0, {}, 5});
  CHECK_THROWS_AS(positional_resolver(a, bad), Error);
}

TEST_CASE("guarded positional resolver for the non-Dyck automaton") {
  const auto& a = non_dyck().automaton;
  // leave q_c on 1 exactly when the prefix image is balanced
  PositionalTable t;
  Conjunction balanced{LinearAtom{{1, -1}, Rel::Eq, 0}};
  t.rules.push_back({0, 1, balanced, 3});
  t.rules.push_back({0, 0, {}, 0});
  t.rules.push_back({0, 1, {}, 1});
  CHECK(validate_resolver(a, positional_resolver(a, t), 10).valid);
}

TEST_CASE("letter game on E") {
  auto e = corpus_get("E").automaton;
  StepBudget budget(5'000'000);
  for (std::size_t h = 0; h < kEHorizon; ++h) CHECK(letter_game(e, h, budget).outcome == GameOutcome::EveWinsToHorizon);
  auto g = letter_game(e, kEHorizon);
  REQUIRE(g.outcome == GameOutcome::AdamWins);
  REQUIRE(g.witness);
  CHECK(g.witness->depth() <= kEHorizon);
  CHECK_FALSE(replay_adam_strategy(e, *g.witness).has_value());
}

TEST_CASE("letter game where Eve survives") {
  CHECK(letter_game(non_dyck().automaton, 6).outcome == GameOutcome::EveWinsToHorizon);
  auto ex1 = corpus_get("ex1").automaton;
  for (std::size_t h = 0; h <= 6; ++h) CHECK(letter_game(ex1, h).outcome == GameOutcome::EveWinsToHorizon);
}

TEST_CASE("a broken strategy fails replay") {
  auto e = corpus_get("E").automaton;
  AdamStrategy stop_now;  // the empty word is not in E
  CHECK(replay_adam_strategy(e, stop_now).has_value());
}

TEST_CASE("pumping parameters") {
  CHECK(pumping_length(2, 3) == 21);
  CHECK(count_rooted_cycles(non_dyck().automaton) == 4);
  const auto& a = non_dyck().automaton;
  auto l = pumping_length(a.num_states(), count_rooted_cycles(a));
  CHECK(l == 27);
  auto dec = pumping_decompose(a, *non_dyck().resolver, Word(l + 1, 0));
  CHECK(dec.v == Word{0});
  CHECK_THROWS_AS(pumping_decompose(a, *non_dyck().resolver, Word(l, 0)), Error);
  try {
    pumping_decompose(a, *non_dyck().resolver, Word(l, 0));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
}

TEST_CASE("pumping harness") {
  const auto& a = non_dyck().automaton;
  PumpDecomposition dec;
  CHECK(pumping_check(a, dec, {}).empty());
  // not a decomposition of any resolver run: 1 v 00 v with v = 1 pumps to 0011
  dec.v = w2("1");
  dec.x = w2("00");
  auto bad = pumping_check(a, dec, {Word{}});
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].pumped == w2("0011"));
}

TEST_CASE("property: decompositions satisfy the size constraints") {
  std::mt19937 rng(17);
  for (const auto& name : fixture::hd_corpus()) {
    CAPTURE(name);
    auto entry = corpus_get(name);
    auto a = complete(entry.automaton);
    auto r = complete_resolver(a, fixture::resolver_for(entry));
    auto p = a.num_states();
    auto l = pumping_length(p, count_rooted_cycles(a));
    std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(a.alphabet().size() - 1));
    for (int round = 0; round < 10; ++round) {
      Word w(l + 1 + static_cast<std::size_t>(round), 0);
      for (auto& x : w) x = letter(rng);
      auto dec = pumping_decompose(a, r, w);
      CHECK(dec.states == p);
      CHECK(!dec.v.empty());
      CHECK(dec.v.size() <= p);
      CHECK(dec.x.size() > p);
      Word joined = dec.u;
      for (const auto* part : {&dec.v, &dec.x, &dec.v, &dec.z}) joined.insert(joined.end(), part->begin(), part->end());
      CHECK(joined == w);
      std::vector<Word> suffixes;
      for (int s = 0; s < 5; ++s) {
        Word z(static_cast<std::size_t>(s * 3), 0);
        for (auto& x : z) x = letter(rng);
        suffixes.push_back(z);
      }
      CHECK(pumping_check(a, dec, suffixes).empty());
    }
  }
}
