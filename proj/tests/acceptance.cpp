// Acceptance checks, one PASS/FAIL line per criterion.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "parikh/closures.hpp"
#include "parikh/corpus.hpp"
#include "parikh/decide.hpp"
#include "parikh/epsilon.hpp"
#include "parikh/hd.hpp"
#include "parikh/rbcm.hpp"
#include "parikh/reductions.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/process.hpp"

using namespace parikh;

namespace {

// Found by the game search; kept as a regression value.
constexpr std::size_t kEHorizon = 3;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::size_t corpus_len(const ParikhAutomaton& a, std::size_t two, std::size_t three) {
  return a.alphabet().size() > 2 ? three : two;
}

Outcome corpus_fidelity() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& name : corpus_names()) {
    auto e = corpus_get(name);
    for_each_word(e.automaton.alphabet().size(), corpus_len(e.automaton, 10, 8), [&](const Word& w) {
      ++checked;
      o.require(member(e.automaton, w) == reference_member(e, w),
                name + " disagrees on \"" + oracle::text(e.automaton.alphabet(), w) + "\"");
      return o.pass;
    });
  }
  if (o.pass) o.detail = std::to_string(checked) + " words, 0 mismatches";
  return o;
}

Outcome resolver_soundness() {
  Outcome o;
  for (const auto& name : fixture::hd_corpus()) {
    auto e = corpus_get(name);
    auto v = validate_resolver(e.automaton, fixture::resolver_for(e), 10);
    o.require(v.valid, name + " resolver fails on \"" +
                           (v.counterexample ? oracle::text(e.automaton.alphabet(), *v.counterexample) : "") + "\"");
  }
  if (o.pass) o.detail = "5 resolvers valid to length 10";
  return o;
}

Outcome non_hd_witness() {
  Outcome o;
  auto e = corpus_get("E").automaton;
  std::optional<std::size_t> found;
  StepBudget budget(50'000'000);
  for (std::size_t h = 0; h <= 12 && !found; ++h) {
    auto g = letter_game(e, h, budget);
    o.require(g.outcome != GameOutcome::Unknown, "game budget exhausted at horizon " + std::to_string(h));
    if (g.outcome == GameOutcome::AdamWins) {
      found = h;
      o.require(g.witness && !replay_adam_strategy(e, *g.witness), "witness strategy fails replay");
    }
  }
  o.require(found.has_value(), "no Adam win up to horizon 12");
  o.require(found == kEHorizon, "Adam wins at an unexpected horizon");
  if (o.pass) o.detail = "Adam wins at horizon " + std::to_string(*found) + ", strategy replayed";
  return o;
}

Outcome pumping() {
  Outcome o;
  std::mt19937 rng(20240611);
  std::ostringstream lengths;
  std::size_t premises = 0;
  for (const auto& name : fixture::hd_corpus()) {
    auto e = corpus_get(name);
    auto a = complete(e.automaton);
    auto r = complete_resolver(a, fixture::resolver_for(e));
    auto p = a.num_states();
    auto l = pumping_length(p, count_rooted_cycles(a));
    lengths << ' ' << name << "=" << l;
    std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(a.alphabet().size() - 1));
    std::uniform_int_distribution<std::size_t> extra(1, 40);
    std::uniform_int_distribution<std::size_t> suffix_len(0, 12);
    for (int round = 0; round < 100 && o.pass; ++round) {
      Word w(l + extra(rng));
      for (auto& x : w) x = letter(rng);
      auto dec = pumping_decompose(a, r, w);
      o.require(!dec.v.empty() && dec.v.size() <= p && dec.x.size() > p, name + ": size constraint violated");
      std::vector<Word> suffixes(50);
      for (auto& z : suffixes) {
        z.resize(suffix_len(rng));
        for (auto& x : z) x = letter(rng);
      }
      for (const auto& z : suffixes) {
        Word probe = dec.u;
        for (const Word* part : std::initializer_list<const Word*>{&dec.v, &dec.x, &dec.v, &z})
          probe.insert(probe.end(), part->begin(), part->end());
        premises += member(a, probe);
      }
      auto bad = pumping_check(a, dec, suffixes);
      o.require(bad.empty(), name + ": pumped word rejected");
    }
  }
  if (o.pass) o.detail = "100 words x 50 suffixes per automaton, " + std::to_string(premises) +
                         " with uvxvz accepted, lengths" + lengths.str();
  return o;
}

bool member_in(const ParikhAutomaton& a, const Alphabet& merged, const Word& w) {
  Word local;
  for (auto l : w) {
    auto x = a.alphabet().find(merged.name(l));
    if (!x) return false;
    local.push_back(*x);
  }
  return member(a, local);
}

Outcome closures() {
  Outcome o;
  for (const auto& [n1, n2] : fixture::closure_pairs()) {
    auto e1 = corpus_get(n1);
    auto e2 = corpus_get(n2);
    auto r1 = fixture::resolver_for(e1);
    auto r2 = fixture::resolver_for(e2);
    auto u = union_pa(e1.automaton, e2.automaton, &r1, &r2);
    auto i = intersect_pa(e1.automaton, e2.automaton, &r1, &r2);
    const auto& sigma = u.automaton.alphabet();
    std::string pair = n1 + "/" + n2;
    for_each_word(sigma.size(), 8, [&](const Word& w) {
      bool m1 = member_in(e1.automaton, sigma, w);
      bool m2 = member_in(e2.automaton, sigma, w);
      o.require(member(u.automaton, w) == (m1 || m2), pair + ": union differs");
      o.require(member(i.automaton, w) == (m1 && m2), pair + ": intersection differs");
      return o.pass;
    });
    Homomorphism h{Alphabet({"x", "y"}), sigma, {Word{0, static_cast<Letter>(sigma.size() - 1)}, Word{1}}};
    auto inv = inverse_hom(u.automaton, h);
    for_each_word(2, 8, [&](const Word& w) {
      o.require(member(inv.automaton, w) == member(u.automaton, h.apply(w)), pair + ": inverse image differs");
      return o.pass;
    });
    if (e1.name != "E" && e2.name != "E") {
      o.require(u.resolver && validate_resolver(u.automaton, *u.resolver, 8).valid, pair + ": union resolver");
      o.require(i.resolver && validate_resolver(i.automaton, *i.resolver, 8).valid, pair + ": intersection resolver");
    }
  }
  if (o.pass) o.detail = "10 pairs to length 8, combined resolvers valid";
  return o;
}

Outcome epsilon_elimination() {
  Outcome o;
  bool zero_cycle = false, nonzero_cycle = false;
  for (const auto& c : fixture::epsilon_cases()) {
    for (const auto& cyc : simple_epsilon_cycles(c.automaton)) {
      bool zero = true;
      for (auto t : cyc) zero = zero && is_zero(c.automaton.transition(t).vec);
      (zero ? zero_cycle : nonzero_cycle) = true;
    }
    auto p = eliminate_epsilon(c.automaton);
    for_each_word(c.automaton.alphabet().size(), 6, [&](const Word& w) {
      o.require(member(p, w) == oracle::epsilon_member(c.automaton, w),
                c.name + " differs on \"" + oracle::text(c.automaton.alphabet(), w) + "\"");
      return o.pass;
    });
  }
  o.require(zero_cycle && nonzero_cycle, "cases lack a zero or nonzero epsilon cycle");
  if (o.pass) o.detail = "10 cases to length 6";
  return o;
}

Outcome pipeline() {
  Outcome o;
  for (const auto& c : fixture::machine_suite()) {
    auto p = eliminate_epsilon(rbcm_to_epsilon_pa(normalize(c.machine)));
    for_each_word(c.machine.alphabet().size(), 6, [&](const Word& w) {
      auto r = cm_accepts(c.machine, w);
      o.require(r.verdict != MachineVerdict::Unknown, c.name + ": machine search inconclusive");
      o.require(member(p, w) == (r.verdict == MachineVerdict::Accept), c.name + ": pipeline differs");
      return o.pass;
    });
  }
  for (const auto& name : corpus_names()) {
    auto a = corpus_get(name).automaton;
    auto pm = pa_to_rbcm(a);
    for_each_word(a.alphabet().size(), 6, [&](const Word& w) {
      SearchLimits limits;
      limits.end_test = pm.end_test;
      auto r = cm_accepts(pm.machine, w, limits);
      o.require(r.verdict != MachineVerdict::Unknown, name + ": machine search inconclusive");
      o.require((r.verdict == MachineVerdict::Accept) == member(a, w), name + ": machine differs");
      return o.pass;
    });
  }
  if (o.pass) o.detail = "4 machines and 6 corpus automata to length 6";
  return o;
}

Outcome decisions() {
  Outcome o;
  auto suite = fixture::decide_suite();
  o.require(suite.size() == 20, "suite size");
  for (const auto& c : suite) {
    auto e = is_empty(c.automaton);
    auto census10 = oracle::length_census(c.automaton, 10);
    bool short_member = std::find(census10.begin(), census10.end(), true) != census10.end();
    o.require(e.status != Emptiness::Unknown, c.name + ": emptiness unknown");
    if (e.status == Emptiness::Nonempty)
      o.require(oracle::run_member(c.automaton, e.witness), c.name + ": witness rejected");
    else
      o.require(!short_member, c.name + ": empty but enumeration finds a member");
    o.require((e.status == Emptiness::Empty) == c.empty, c.name + ": emptiness verdict");

    auto f = is_finite(c.automaton);
    auto census20 = oracle::length_census(c.automaton, 20);
    auto long_lengths = std::count(census20.begin() + 11, census20.end(), true);
    o.require(f.status != Finiteness::Unknown, c.name + ": finiteness unknown");
    o.require((f.status == Finiteness::Infinite) == (long_lengths >= 2), c.name + ": finiteness differs from census");
    o.require((f.status == Finiteness::Finite) == c.finite, c.name + ": finiteness verdict");
  }
  if (o.pass) o.detail = "20 automata";
  return o;
}

Outcome reductions() {
  Outcome o;
  auto halt = minsky_suite("halt");
  o.require(!member(build_universality_hdpa(halt).automaton, Word{0, 1}), "halt: \"01\" accepted");
  auto loop = minsky_suite("loop");
  auto ul = build_universality_hdpa(loop).automaton;
  for_each_word(loop.size(), 7, [&](const Word& w) {
    o.require(member(ul, w), "loop: non-member found");
    return o.pass;
  });
  auto safety = build_safety_dpa(loop);
  auto projection = minsky_run(loop, 19).projection();
  for (std::size_t n = 1; n <= projection.size(); ++n)
    o.require(member(safety, Word(projection.begin(), projection.begin() + static_cast<std::ptrdiff_t>(n))),
              "loop: projection prefix rejected");
  for (const auto& name : minsky_suite_names()) {
    auto m = minsky_suite(name);
    auto proj = minsky_run(m, 100).projection();
    for_each_word(m.size(), 5, [&](const Word& w) {
      if (w.empty() || w[0] != 0) return true;
      bool error_free = true;
      for (std::size_t n = 0; n + 1 < w.size(); ++n) error_free = error_free && !has_error_at(m, w, n);
      bool prefix = w.size() <= proj.size() && std::equal(w.begin(), w.end(), proj.begin());
      o.require(error_free == prefix, name + ": error-free words differ from run prefixes");
      return o.pass;
    });
  }
  if (o.pass) o.detail = "halt witness \"01\", loop universal to 7, 20 prefixes safe, line-word check to 5";
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const auto& name : minsky_suite_names())
    o.require(is_deterministic(build_safety_dpa(minsky_suite(name))), name + ": safety automaton not deterministic");
  o.require(is_deterministic(corpus_get("ex1").automaton), "ex1 not deterministic");

  std::vector<std::string> commands;
  for (const auto& name : corpus_names()) {
    commands.push_back("corpus get " + name);
    commands.push_back("--json corpus get " + name);
    commands.push_back("empty corpus:" + name);
    commands.push_back("finite corpus:" + name);
    commands.push_back("hd validate corpus:" + name);
    commands.push_back("pa to-rbcm corpus:" + name);
    commands.push_back("collapse corpus:" + name);
    commands.push_back("eps-eliminate corpus:" + name);
  }
  for (const auto& name : minsky_suite_names())
    for (const auto& target : {"safety", "universality", "regularity"})
      commands.push_back("minsky compile minsky:" + name + " --target " + target);
  commands.insert(commands.end(),
                  {"corpus list", "member corpus:ex1 aabbbb", "comm-member corpus:ex1 baba",
                   "product --op union corpus:ex1 corpus:nonDyck", "product --op intersect corpus:ex1 corpus:E",
                   "invhom --map x=ab --map y=b corpus:ex1", "equiv corpus:ex1 corpus:nonDyck", "hd game corpus:E",
                   "hd pump corpus:nonDyck 0101010101010101010101010101010", "minsky run minsky:six",
                   "pair corpus:ex1", "pair corpus:nonDyck", "rbcm normalize -", "rbcm to-pa -"});
  auto machine_file = std::string("/tmp/parikh-acceptance-") + std::to_string(::getpid()) + ".cm";
  {
    auto text = proc::run(std::string(CLI_PATH) + " pa to-rbcm corpus:ex1");
    auto normal = proc::run("printf '%s' " + proc::quote(text.out) + " | " + CLI_PATH + " rbcm normalize - > " +
                            machine_file);
    o.require(normal.code == 0, "could not prepare a machine file");
  }
  auto sweep = [&]() {
    std::string all;
    for (const auto& c : commands) {
      std::string cmd = std::string(CLI_PATH) + " " + c;
      if (c.back() == '-') cmd += " < " + machine_file;
      auto r = proc::run(cmd + " 2>&1");
      all += "$ " + c + "\n" + r.out + "exit " + std::to_string(r.code) + "\n";
    }
    return all;
  };
  auto first = sweep();
  auto second = sweep();
  std::remove(machine_file.c_str());
  o.require(first == second, "CLI output differs between runs");
  if (o.pass) o.detail = std::to_string(commands.size()) + " CLI invocations identical across two runs";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"corpus fidelity", corpus_fidelity},
      {"resolver soundness", resolver_soundness},
      {"non-HD witness", non_hd_witness},
      {"pumping", pumping},
      {"closure constructions", closures},
      {"epsilon elimination", epsilon_elimination},
      {"machine pipeline", pipeline},
      {"decision procedures", decisions},
      {"reductions", reductions},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
              << o.detail << " (" << static_cast<int>(secs * 10) / 10.0 << "s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
