#include <doctest.h>

#include <stdexcept>

#include "parikh/epsilon.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace parikh;

namespace {

EpsilonPA case_named(const std::string& name) {
  for (auto& c : fixture::epsilon_cases())
    if (c.name == name) return c.automaton;
  throw std::out_of_range(name);
}

}  // namespace

TEST_CASE("no epsilon transitions gives the same automaton") {
  auto ex1 = corpus_get("ex1").automaton;
  auto p = eliminate_epsilon(EpsilonPA::from(ex1));
  CHECK(p.num_states() == ex1.num_states());
  CHECK(p.transitions().size() == ex1.transitions().size());
  if (const auto* k = std::get_if<EpsilonClosureSet>(&p.acceptance().node())) CHECK(k->cycle_images.empty());
  for_each_word(2, 6, [&](const Word& w) {
    REQUIRE(member(p, w) == member(ex1, w));
    return true;
  });
}

TEST_CASE("epsilon loop before a letter") {
  auto e = case_named("loop before letter");
  CHECK(simple_epsilon_cycles(e).size() == 1);
  auto p = eliminate_epsilon(e);
  CHECK(member(p, Word{0}));
  CHECK_FALSE(member(p, Word{}));
  CHECK_FALSE(member(p, Word{0, 0}));
}

TEST_CASE("epsilon after an accepting state") {
  auto p = eliminate_epsilon(case_named("epsilon after accepting state"));
  CHECK(member(p, Word{0}));
}

TEST_CASE("empty word through an epsilon run") {
  auto p = eliminate_epsilon(case_named("zero-image cycle"));
  CHECK(member(p, Word{}));
  CHECK(member(p, Word{0, 0}));
  auto odd = eliminate_epsilon(case_named("odd epsilon count"));
  CHECK(member(odd, Word{}));
}

TEST_CASE("simple cycles are listed once") {
  auto two = case_named("two-step cycle");
  auto cycles = simple_epsilon_cycles(two);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].size() == 2);
  CHECK(simple_epsilon_cycles(case_named("two cycles")).size() == 2);
}

TEST_CASE("property: elimination preserves the language") {
  for (const auto& c : fixture::epsilon_cases()) {
    CAPTURE(c.name);
    auto p = eliminate_epsilon(c.automaton);
    for_each_word(c.automaton.alphabet().size(), 6, [&](const Word& w) {
      CAPTURE(oracle::text(c.automaton.alphabet(), w));
      REQUIRE(member(p, w) == oracle::epsilon_member(c.automaton, w));
      return true;
    });
  }
}
