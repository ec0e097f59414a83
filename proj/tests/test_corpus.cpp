#include <doctest.h>

#include <fstream>
#include <sstream>

#include "parikh/corpus.hpp"
#include "parikh/hd.hpp"
#include "parikh/text_format.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace parikh;

namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::string(GOLDEN_DIR) + "/" + name + ".pa");
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool accepts(const std::string& entry, const std::string& w) {
  auto e = corpus_get(entry);
  return member(e.automaton, oracle::word(e.automaton.alphabet(), w));
}

}  // namespace

TEST_CASE("spot checks") {
  CHECK(accepts("D", "cdcd"));
  CHECK_FALSE(accepts("D", "cdccd"));
  CHECK(accepts("D", "cdd"));
  CHECK_FALSE(accepts("D", "cdccdccccd"));
  CHECK_FALSE(accepts("D", "dcd"));
  CHECK(accepts("ex1", ""));
  CHECK(accepts("Nprime", "c10"));
  CHECK_FALSE(accepts("Nprime", "c01"));
  CHECK(accepts("E", "abaabb"));
  CHECK_FALSE(accepts("E", "aba"));
  CHECK_FALSE(accepts("nonDyck", ""));
  CHECK(accepts("Eprime", "ccabab"));
  CHECK_FALSE(accepts("Eprime", "ccaaab"));
}

TEST_CASE("reference predicates") {
  CHECK(ref_ex1("aabbbb"));
  CHECK_FALSE(ref_ex1("abab"));
  CHECK(ref_non_dyck("0110"));
  CHECK_FALSE(ref_non_dyck("0101"));
  CHECK(ref_d("cdccccccd"));
  CHECK_FALSE(ref_d("cdccdccccd"));
  CHECK(ref_e_prime("cbab"));
  CHECK_FALSE(ref_e_prime("caab"));
  CHECK(ref_n_prime("cc1100"));
  CHECK_FALSE(ref_n_prime("cc0110"));
  CHECK_FALSE(ref_n_prime("cc01"));
  CHECK(ref_e("bbab"));
  CHECK_FALSE(ref_e("abba"));
  auto e = corpus_get("E");
  CHECK_THROWS_AS(reference_member(e, Word{5}), Error);
  CHECK_THROWS_AS(corpus_get("nope"), Error);
}

TEST_CASE("property: automata match the reference predicates") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    auto e = corpus_get(name);
    std::size_t len = e.automaton.alphabet().size() > 2 ? 6 : 8;
    for_each_word(e.automaton.alphabet().size(), len, [&](const Word& w) {
      CAPTURE(oracle::text(e.automaton.alphabet(), w));
      REQUIRE(member(e.automaton, w) == reference_member(e, w));
      return true;
    });
  }
}

TEST_CASE("property: corpus resolvers are sound") {
  for (const auto& name : fixture::hd_corpus()) {
    CAPTURE(name);
    auto e = corpus_get(name);
    std::size_t len = e.automaton.alphabet().size() > 2 ? 6 : 8;
    auto v = validate_resolver(e.automaton, fixture::resolver_for(e), len);
    CHECK(v.valid);
  }
}

TEST_CASE("letter game on the corpus") {
  CHECK(letter_game(corpus_get("E").automaton, 3).outcome == GameOutcome::AdamWins);
  for (const auto& name : {"nonDyck", "D", "Eprime", "Nprime"}) {
    CAPTURE(name);
    CHECK(letter_game(corpus_get(name).automaton, 6).outcome == GameOutcome::EveWinsToHorizon);
  }
}

TEST_CASE("goldens match the built-in automata") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    auto text = golden(name);
    CHECK(serialize(corpus_get(name).automaton) == text);
    CHECK(serialize(parse_document(text)) == text);
  }
}
