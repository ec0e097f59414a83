#include <doctest.h>

#include <algorithm>

#include "parikh/decide.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace parikh;

TEST_CASE("emptiness on small cases") {
  auto r = is_empty(corpus_get("ex1").automaton);
  CHECK(r.status == Emptiness::Nonempty);
  auto a5 = fixture::a_loop_eq5();
  r = is_empty(a5);
  REQUIRE(r.status == Emptiness::Nonempty);
  CHECK(r.witness == Word(5, 0));
  CHECK(is_empty(fixture::no_accepting()).status == Emptiness::Empty);
}

TEST_CASE("finiteness on small cases") {
  auto ex1 = corpus_get("ex1").automaton;
  auto r = is_finite(ex1);
  REQUIRE(r.status == Finiteness::Infinite);
  std::size_t last = 0;
  for (std::int64_t k = 1; k <= 5; ++k) {
    auto w = pumped_word(ex1, r, k);
    CHECK(member(ex1, w));
    if (k > 1) CHECK(w.size() > last);
    last = w.size();
  }
  CHECK(is_finite(fixture::a_loop_eq5()).status == Finiteness::Finite);
  CHECK(is_finite(fixture::no_accepting()).status == Finiteness::Finite);
}

TEST_CASE("property: emptiness agrees with enumeration on the decide suite") {
  for (const auto& c : fixture::decide_suite()) {
    CAPTURE(c.name);
    auto r = is_empty(c.automaton);
    REQUIRE(r.status != Emptiness::Unknown);
    CHECK((r.status == Emptiness::Empty) == c.empty);
    auto census = oracle::length_census(c.automaton, 10);
    bool short_member = std::find(census.begin(), census.end(), true) != census.end();
    if (r.status == Emptiness::Nonempty) CHECK(oracle::run_member(c.automaton, r.witness));
    else CHECK_FALSE(short_member);
  }
}

TEST_CASE("property: finiteness agrees with the length census") {
  for (const auto& c : fixture::decide_suite()) {
    CAPTURE(c.name);
    auto r = is_finite(c.automaton);
    REQUIRE(r.status != Finiteness::Unknown);
    CHECK((r.status == Finiteness::Finite) == c.finite);
    auto census = oracle::length_census(c.automaton, 20);
    int long_lengths = static_cast<int>(std::count(census.begin() + 11, census.end(), true));
    CHECK((long_lengths >= 2) == !c.finite);
    if (r.status == Finiteness::Infinite) {
      std::size_t last = 0;
      for (std::int64_t k = 1; k <= 5; ++k) {
        auto w = pumped_word(c.automaton, r, k);
        CHECK(oracle::run_member(c.automaton, w));
        if (k > 1) CHECK(w.size() > last);
        last = w.size();
      }
    }
  }
}

TEST_CASE("an exhausted budget is reported as unknown") {
  auto d = corpus_get("D").automaton;
  CHECK(is_empty(d, 1).status == Emptiness::Unknown);
  CHECK(is_finite(d, 1).status == Finiteness::Unknown);
}

TEST_CASE("counts are realized as runs") {
  auto ex1 = corpus_get("ex1").automaton;
  auto trail = realize_counts(ex1, {2, 1, 3});
  Run run{trail};
  CHECK(run_word(ex1, run) == Word{0, 0, 1, 1, 1, 1});
  CHECK_THROWS_AS(realize_counts(ex1, {0, 0, 1}), Error);
}
