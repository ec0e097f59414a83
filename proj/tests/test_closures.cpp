#include <doctest.h>

#include <functional>

#include "parikh/closures.hpp"
#include "parikh/epsilon.hpp"
#include "parikh/hd.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace parikh;

namespace {

Word over(const Alphabet& sigma, const std::string& s) { return oracle::word(sigma, s); }

/// Membership of w (over `merged`) in an automaton over a sub-alphabet.
bool member_in(const ParikhAutomaton& a, const Alphabet& merged, const Word& w) {
  Word local;
  for (auto l : w) {
    auto x = a.alphabet().find(merged.name(l));
    if (!x) return false;
    local.push_back(*x);
  }
  return member(a, local);
}

/// Calls f on every run of length at most n.
void for_each_run(const AutomatonBase& a, std::size_t n, const std::function<void(const Run&)>& f) {
  Run run;
  std::function<void(StateId)> go = [&](StateId q) {
    f(run);
    if (run.transitions.size() == n) return;
    for (auto t : a.outgoing(q)) {
      run.transitions.push_back(t);
      go(a.transition(t).to);
      run.transitions.pop_back();
    }
  };
  go(a.initial());
}

}  // namespace

TEST_CASE("union of example 1 and the non-Dyck automaton") {
  auto u = union_pa(corpus_get("ex1").automaton, corpus_get("nonDyck").automaton).automaton;
  CHECK(member(u, u.alphabet().parse_word("aabb")));
  CHECK(member(u, u.alphabet().parse_word("1")));
  CHECK_FALSE(member(u, u.alphabet().parse_word("a1")));
}

TEST_CASE("union is idempotent") {
  auto ex1 = corpus_get("ex1").automaton;
  auto u = union_pa(ex1, ex1).automaton;
  for_each_word(2, 8, [&](const Word& w) {
    REQUIRE(member(u, w) == member(ex1, w));
    return true;
  });
}

TEST_CASE("empty word in one side only") {
  auto u = union_pa(corpus_get("ex1").automaton, corpus_get("E").automaton).automaton;
  CHECK(member(u, {}));
  auto v = union_pa(corpus_get("E").automaton, corpus_get("nonDyck").automaton).automaton;
  CHECK_FALSE(member(v, {}));
}

TEST_CASE("intersection with equal letter counts") {
  auto ex1 = corpus_get("ex1").automaton;
  auto eq = fixture::equal_ab();
  auto i = intersect_pa(ex1, eq).automaton;
  CHECK(member(i, over(i.alphabet(), "aabb")));
  CHECK_FALSE(member(i, over(i.alphabet(), "abb")));
  for_each_word(2, 8, [&](const Word& w) {
    REQUIRE(member(i, w) == (member(ex1, w) && member(eq, w)));
    return true;
  });
}

TEST_CASE("intersection identities") {
  auto ex1 = corpus_get("ex1").automaton;
  auto same = intersect_pa(ex1, fixture::universal_ab()).automaton;
  auto none = intersect_pa(ex1, fixture::no_accepting()).automaton;
  for_each_word(2, 8, [&](const Word& w) {
    REQUIRE(member(same, w) == member(ex1, w));
    REQUIRE_FALSE(member(none, w));
    return true;
  });
}

TEST_CASE("inverse homomorphism") {
  auto ex1 = corpus_get("ex1").automaton;
  Homomorphism h{Alphabet({"a"}), ex1.alphabet(), {over(ex1.alphabet(), "ab")}};
  auto inv = inverse_hom(ex1, h).automaton;
  CHECK(member(inv, Word{0}));
  CHECK_FALSE(member(inv, Word{0, 0}));

  Homomorphism id{ex1.alphabet(), ex1.alphabet(), {{0}, {1}}};
  auto same = inverse_hom(ex1, id).automaton;
  for_each_word(2, 8, [&](const Word& w) {
    REQUIRE(member(same, w) == member(ex1, w));
    return true;
  });

  // erasing every letter gives everything or nothing
  Homomorphism erase{Alphabet({"x", "y"}), ex1.alphabet(), {{}, {}}};
  auto all = inverse_hom(ex1, erase).automaton;
  auto e = corpus_get("E").automaton;
  auto nothing = inverse_hom(e, Homomorphism{Alphabet({"x", "y"}), e.alphabet(), {{}, {}}}).automaton;
  for_each_word(2, 5, [&](const Word& w) {
    CHECK(member(all, w));
    CHECK_FALSE(member(nothing, w));
    return true;
  });
}

TEST_CASE("property: inverse homomorphism matches the image") {
  auto entry = corpus_get("nonDyck");
  const auto& nd = entry.automaton;
  const auto& t = nd.alphabet();
  Homomorphism h{Alphabet({"x", "y", "z"}), t, {over(t, "01"), over(t, "1"), {}}};
  auto inv = inverse_hom(nd, h, &*entry.resolver);
  for_each_word(3, 6, [&](const Word& w) {
    REQUIRE(member(inv.automaton, w) == member(nd, h.apply(w)));
    return true;
  });
  REQUIRE(inv.resolver);
  CHECK(validate_resolver(inv.automaton, *inv.resolver, 6).valid);
}

TEST_CASE("commutative membership") {
  auto ex1 = corpus_get("ex1").automaton;
  CHECK(commutative_member(ex1, over(ex1.alphabet(), "baba")) == true);
  CHECK(commutative_member(ex1, {}) == true);
  CHECK(commutative_member(ex1, over(ex1.alphabet(), "baa")) == false);
  auto nd = corpus_get("nonDyck").automaton;
  CHECK(commutative_member(nd, over(nd.alphabet(), "00")) == false);
  CHECK(commutative_member(nd, over(nd.alphabet(), "10")) == true);
}

TEST_CASE("property: corpus pairs combine as sets") {
  for (const auto& [n1, n2] : fixture::closure_pairs()) {
    CAPTURE(n1);
    CAPTURE(n2);
    auto e1 = corpus_get(n1);
    auto e2 = corpus_get(n2);
    auto r1 = fixture::resolver_for(e1);
    auto r2 = fixture::resolver_for(e2);
    auto u = union_pa(e1.automaton, e2.automaton, &r1, &r2);
    auto i = intersect_pa(e1.automaton, e2.automaton, &r1, &r2);
    const auto& sigma = u.automaton.alphabet();
    CHECK(sigma == i.automaton.alphabet());
    std::size_t len = sigma.size() > 2 ? 5 : 6;
    for_each_word(sigma.size(), len, [&](const Word& w) {
      bool m1 = member_in(e1.automaton, sigma, w);
      bool m2 = member_in(e2.automaton, sigma, w);
      REQUIRE(member(u.automaton, w) == (m1 || m2));
      REQUIRE(member(i.automaton, w) == (m1 && m2));
      return true;
    });
    bool hd1 = e1.name != "E";
    bool hd2 = e2.name != "E";
    if (hd1 && hd2) {
      REQUIRE(u.resolver);
      REQUIRE(i.resolver);
      CHECK(validate_resolver(u.automaton, *u.resolver, len).valid);
      CHECK(validate_resolver(i.automaton, *i.resolver, len).valid);
    }
  }
}

TEST_CASE("property: union flags track component acceptance") {
  for (const auto& [n1, n2] : fixture::closure_pairs()) {
    auto u = union_pa(corpus_get(n1).automaton, corpus_get(n2).automaton);
    for_each_run(u.automaton, 5, [&](const Run& run) {
      if (run.transitions.empty()) return;
      auto q = run_final_state(u.automaton, run);
      auto image = run_image(u.automaton, run);
      auto [q1, q2] = u.pairs.at(q);
      REQUIRE((image[0] % 2 == 0) == u.components[0].is_accepting(q1));
      REQUIRE((image[1] % 2 == 0) == u.components[1].is_accepting(q2));
    });
  }
}

TEST_CASE("bounded equivalence") {
  auto ex1 = corpus_get("ex1").automaton;
  CHECK(bounded_equiv(ex1, ex1, 8).equal);
  auto eps = eliminate_epsilon(EpsilonPA::from(ex1));
  CHECK(bounded_equiv(ex1, eps, 8).equal);
  auto r = bounded_equiv(ex1, corpus_get("nonDyck").automaton, 8);
  CHECK_FALSE(r.equal);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->empty());
  auto s = bounded_equiv(corpus_get("E").automaton, corpus_get("nonDyck").automaton, 8);
  REQUIRE(s.counterexample);
  CHECK(s.alphabet.format_word(*s.counterexample) == "1");
}
