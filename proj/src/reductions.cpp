#include "parikh/reductions.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <tuple>

#include "parikh/closures.hpp"

namespace parikh {

namespace {

void require_guarded(const MinskyMachine& m) {
  if (!m.guarded()) fail(ErrorKind::Precondition, "machine does not have guarded decrements");
}

CongruenceAtom congruent(std::size_t dim, std::size_t i, std::int64_t modulus, std::int64_t residue) {
  Vec c(dim, 0);
  c[i] = 1;
  return CongruenceAtom{c, modulus, residue};
}

LinearAtom balance(std::size_t dim, std::size_t inc, std::size_t dec, Rel rel) {
  Vec c(dim, 0);
  c[inc] = 1;
  c[dec] = -1;
  return LinearAtom{c, rel, 0};
}

LinearAtom equals(std::size_t dim, std::size_t i, std::int64_t value) {
  Vec c(dim, 0);
  c[i] = 1;
  return LinearAtom{c, Rel::Eq, value};
}

/// Unit vector for the increment (offset 0) or decrement (offset 1) of the
/// counter touched by line l; zero for other instructions.
Vec count_vector(const MinskyMachine& m, std::size_t l, std::size_t dim, std::size_t stride) {
  Vec v(dim, 0);
  if (l == m.stop_line()) return v;
  const auto& in = m.line(l);
  auto base = static_cast<std::size_t>(in.counter) * stride;
  if (in.op == Opcode::Inc) v[base] = 1;
  if (in.op == Opcode::Dec) v[base + 1] = 1;
  return v;
}

std::string line_name(std::size_t l) { return std::to_string(l); }

}  // namespace

ParikhAutomaton build_safety_dpa(const MinskyMachine& m) {
  require_guarded(m);
  constexpr std::size_t dim = 6;
  const std::size_t k = m.size();
  PaBuilder b(m.line_alphabet(), dim);

  using Key = std::tuple<std::size_t, int, int, bool>;  // previous letter, goto codes, local error
  std::map<Key, StateId> ids;
  std::vector<Key> keys;
  StateId init = b.add_state("init", true);
  auto id_of = [&](const Key& key) {
    auto [it, added] = ids.emplace(key, static_cast<StateId>(b.num_states()));
    if (added) {
      auto [p, g0, g1, bad] = key;
      auto name = "s" + line_name(p) + "_" + std::to_string(g0) + std::to_string(g1) + (bad ? "x" : "");
      b.add_state(name, !bad);
      keys.push_back(key);
    }
    return it->second;
  };
  for (std::size_t l = 0; l < k; ++l) b.add_transition(init, static_cast<Letter>(l), Vec(dim, 0), id_of({l, 0, 0, l != 0}));

  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto [p, g0, g1, bad] = keys[i];
    StateId from = ids.at(keys[i]);
    const auto& in = m.line(p);
    for (std::size_t l = 0; l < k; ++l) {
      int codes[2] = {0, 0};
      if (p != m.stop_line() && in.op == Opcode::Ite) {
        int code = 3;
        if (in.if_zero == in.if_nonzero) code = l == in.if_zero ? 0 : 3;
        else if (l == in.if_zero) code = 1;
        else if (l == in.if_nonzero) code = 2;
        codes[in.counter] = code;
      }
      bool local_error = p == m.stop_line() ||
                         ((in.op == Opcode::Inc || in.op == Opcode::Dec) && l != p + 1);
      Vec v = count_vector(m, p, dim, 3);
      v[2] = ((codes[0] - g0) % 4 + 4) % 4;
      v[5] = ((codes[1] - g1) % 4 + 4) % 4;
      b.add_transition(from, static_cast<Letter>(l), v, id_of({l, codes[0], codes[1], local_error}));
    }
  }

  std::vector<Conjunction> dnf;
  dnf.push_back({congruent(dim, 2, 4, 0), congruent(dim, 5, 4, 0)});
  for (std::size_t i = 0; i < 2; ++i) {
    dnf.push_back({congruent(dim, 3 * i + 2, 4, 1), balance(dim, 3 * i, 3 * i + 1, Rel::Eq)});
    dnf.push_back({congruent(dim, 3 * i + 2, 4, 2), balance(dim, 3 * i, 3 * i + 1, Rel::Ne)});
  }
  return b.build(ConstraintSet(dim, std::move(dnf)));
}

ParikhAutomaton build_no_stop_dfa(const MinskyMachine& m) {
  PaBuilder b(m.line_alphabet(), 1);
  StateId start = b.add_state("start", true);
  StateId running = b.add_state("running", true);
  StateId other = b.add_state("other", true);
  StateId stopped = b.add_state("stopped", false);
  Vec zero{0};
  for (std::size_t l = 0; l < m.size(); ++l) {
    auto a = static_cast<Letter>(l);
    bool stop = l == m.stop_line();
    b.add_transition(start, a, zero, l != 0 ? other : stop ? stopped : running);
    b.add_transition(running, a, zero, stop ? stopped : running);
    b.add_transition(other, a, zero, other);
    b.add_transition(stopped, a, zero, stopped);
  }
  return b.build(ConstraintSet::total(1));
}

ResolvedPA build_error_guess_pa(const MinskyMachine& m) {
  require_guarded(m);
  constexpr std::size_t dim = 5;
  constexpr std::size_t kind_dim = 4;
  const std::size_t k = m.size();
  const std::size_t stop = m.stop_line();
  PaBuilder b(m.line_alphabet(), dim);

  // Choice tables shared with the resolver sessions.
  struct Tables {
    std::optional<std::size_t> first;
    std::vector<std::vector<std::optional<std::size_t>>> proceed, commit;
    std::vector<std::vector<int>> kind;  // -1: the pair is never an error
    std::vector<std::size_t> wait_loop, done_loop;
    std::vector<Vec> counts;
  };
  auto tab = std::make_shared<Tables>();
  tab->proceed.assign(k, std::vector<std::optional<std::size_t>>(k));
  tab->commit = tab->proceed;
  tab->kind.assign(k, std::vector<int>(k, -1));
  for (std::size_t l = 0; l < k; ++l) tab->counts.push_back(count_vector(m, l, dim, 2));

  StateId start = b.add_state("start");
  std::vector<StateId> scan(k);
  for (std::size_t l = 0; l < stop; ++l) scan[l] = b.add_state("scan" + line_name(l));
  StateId wait = b.add_state("wait");
  StateId done = b.add_state("done", true);

  auto add = [&](StateId from, std::size_t l, Vec v, StateId to) {
    b.add_transition(from, static_cast<Letter>(l), std::move(v), to);
    return b.num_transitions() - 1;
  };
  if (stop != 0) tab->first = add(start, 0, tab->counts[0], scan[0]);
  for (std::size_t p = 0; p < stop; ++p) {
    const auto& in = m.line(p);
    for (std::size_t l = 0; l < k; ++l) {
      if (l != stop) tab->proceed[p][l] = add(scan[p], l, tab->counts[l], scan[l]);
      int kind = -1;
      if (in.op != Opcode::Ite) {
        if (l != p + 1) kind = 0;
      } else if (l != in.if_zero && l != in.if_nonzero) {
        kind = 0;
      } else if (in.if_zero != in.if_nonzero) {
        kind = (l == in.if_zero ? 1 : 2) + 2 * in.counter;
      }
      if (kind < 0) continue;
      tab->kind[p][l] = kind;
      Vec v(dim, 0);
      v[kind_dim] = kind;
      tab->commit[p][l] = add(scan[p], l, v, l == stop ? done : wait);
    }
  }
  for (std::size_t l = 0; l < k; ++l) {
    tab->wait_loop.push_back(add(wait, l, Vec(dim, 0), l == stop ? done : wait));
    tab->done_loop.push_back(add(done, l, Vec(dim, 0), done));
  }

  std::vector<Conjunction> dnf;
  dnf.push_back({equals(dim, kind_dim, 0)});
  for (std::size_t i = 0; i < 2; ++i) {
    dnf.push_back({equals(dim, kind_dim, 1 + 2 * static_cast<std::int64_t>(i)), balance(dim, 2 * i, 2 * i + 1, Rel::Ne)});
    dnf.push_back({equals(dim, kind_dim, 2 + 2 * static_cast<std::int64_t>(i)), balance(dim, 2 * i, 2 * i + 1, Rel::Eq)});
  }
  auto automaton = b.build(ConstraintSet(dim, std::move(dnf)));

  Resolver resolver("first-error", [tab, stop]() -> ResolverSession {
    enum class Phase { Start, Scan, Wait, Done };
    struct Session {
      Phase phase = Phase::Start;
      std::size_t prev = 0;
      std::int64_t c[2] = {0, 0};
    };
    auto s = std::make_shared<Session>();
    return [tab, stop, s](Letter a) -> std::optional<std::size_t> {
      std::size_t l = a;
      if (l >= tab->counts.size()) return std::nullopt;
      auto note = [&](std::size_t line) {
        const auto& v = tab->counts[line];
        s->c[0] += v[0] - v[1];
        s->c[1] += v[2] - v[3];
      };
      switch (s->phase) {
        case Phase::Start:
          if (l != 0 || !tab->first) return std::nullopt;
          s->phase = Phase::Scan;
          s->prev = 0;
          note(0);
          return tab->first;
        case Phase::Scan: {
          int kind = tab->kind[s->prev][l];
          bool actual = kind == 0 || (kind == 1 && s->c[0] != 0) || (kind == 2 && s->c[0] == 0) ||
                        (kind == 3 && s->c[1] != 0) || (kind == 4 && s->c[1] == 0);
          if (actual) {
            auto t = tab->commit[s->prev][l];
            s->phase = l == stop ? Phase::Done : Phase::Wait;
            return t;
          }
          if (l == stop) return std::nullopt;
          auto t = tab->proceed[s->prev][l];
          s->prev = l;
          note(l);
          return t;
        }
        case Phase::Wait:
          if (l == stop) s->phase = Phase::Done;
          return tab->wait_loop[l];
        case Phase::Done:
          return tab->done_loop[l];
      }
      return std::nullopt;
    };
  });
  return ResolvedPA{std::move(automaton), std::move(resolver)};
}

ParikhAutomaton build_tail_dpa(const MinskyMachine& m) {
  if (m.size() < 2) fail(ErrorKind::Precondition, "machine needs at least two lines");
  constexpr std::size_t dim = 3;  // zeros, ones, flag
  const std::size_t stop = m.stop_line();
  PaBuilder b(m.line_alphabet(), dim);
  StateId start = b.add_state("start");
  StateId pre = b.add_state("pre");
  StateId empty = b.add_state("empty", true);
  StateId zeros = b.add_state("zeros", true);
  StateId ones = b.add_state("ones", true);
  StateId bad = b.add_state("bad", true);
  auto vec = [](std::int64_t z, std::int64_t o, std::int64_t f) { return Vec{z, o, f}; };
  for (std::size_t l = 0; l < m.size(); ++l) {
    auto a = static_cast<Letter>(l);
    if (l == 0) b.add_transition(start, a, vec(0, 0, 0), pre);
    b.add_transition(pre, a, vec(0, 0, l == stop ? 1 : 0), l == stop ? empty : pre);
    // The flag is odd in `empty` and `bad` and even in `zeros` and `ones`.
    if (l == 0) b.add_transition(empty, a, vec(1, 0, 1), zeros);
    else b.add_transition(empty, a, vec(0, 0, 0), bad);
    if (l == 0) b.add_transition(zeros, a, vec(1, 0, 0), zeros);
    else if (l == 1) b.add_transition(zeros, a, vec(0, 1, 0), ones);
    else b.add_transition(zeros, a, vec(0, 0, 1), bad);
    if (l == 1) b.add_transition(ones, a, vec(0, 1, 0), ones);
    else b.add_transition(ones, a, vec(0, 0, 1), bad);
    b.add_transition(bad, a, vec(0, 0, 0), bad);
  }
  Vec unequal{1, -1, 0};
  return b.build(ConstraintSet(dim, {{LinearAtom{unequal, Rel::Ne, 0}}, {congruent(dim, 2, 2, 1)}}));
}

ResolvedPA build_universality_hdpa(const MinskyMachine& m) {
  auto no_stop = build_no_stop_dfa(m);
  auto guess = build_error_guess_pa(m);
  auto first = first_choice_resolver(no_stop);
  auto joined = union_pa(no_stop, guess.automaton, &first, &guess.resolver);
  return ResolvedPA{std::move(joined.automaton), std::move(*joined.resolver)};
}

ResolvedPA build_regularity_hdpa(const MinskyMachine& m) {
  auto univ = build_universality_hdpa(m);
  auto tail = build_tail_dpa(m);
  auto first = first_choice_resolver(tail);
  auto joined = union_pa(univ.automaton, tail, &univ.resolver, &first);
  return ResolvedPA{std::move(joined.automaton), std::move(*joined.resolver)};
}

ParikhAutomaton collapse_alphabet(const ParikhAutomaton& a) {
  auto ts = a.transitions();
  for (auto& t : ts) t.letter = 0;
  return ParikhAutomaton(Alphabet({"#"}), a.dimension(), a.state_names(), a.initial(), a.accepting(),
                         std::move(ts), a.acceptance());
}

Alphabet pairing_alphabet(const Alphabet& sigma) {
  if (sigma.find("#")) fail(ErrorKind::InvalidInput, "alphabet already contains '#'");
  std::vector<std::string> names;
  auto firsts = sigma.names();
  firsts.push_back("#");
  for (const auto& x : firsts)
    for (const char* y : {"a", "b"}) names.push_back(x + ":" + y);
  return Alphabet(std::move(names));
}

ParikhAutomaton build_pairing(const ParikhAutomaton& a, const ParikhAutomaton& e) {
  const auto& sigma = a.alphabet();
  Alphabet pairs = pairing_alphabet(sigma);
  auto pair_letter = [&](const std::string& x, const std::string& y) { return pairs.at(x + ":" + y); };
  for (const auto& y : e.alphabet().names())
    if (y != "a" && y != "b") fail(ErrorKind::InvalidInput, "second component automaton must be over {a, b}");

  // First component: L(a) followed optionally by # and anything.
  PaBuilder first(pairs, a.dimension());
  std::set<std::string> taken(a.state_names().begin(), a.state_names().end());
  for (StateId q = 0; q < a.num_states(); ++q) first.add_state(a.state_name(q), a.is_accepting(q));
  first.set_initial(a.initial());
  std::string sink = "H";
  for (int i = 1; taken.count(sink); ++i) sink = "H_" + std::to_string(i);
  StateId h = first.add_state(sink, true);
  Vec zero(a.dimension(), 0);
  for (const auto& t : a.transitions())
    for (const char* y : {"a", "b"}) first.add_transition(t.from, pair_letter(sigma.name(t.letter), y), t.vec, t.to);
  for (StateId q = 0; q < a.num_states(); ++q)
    if (a.is_accepting(q))
      for (const char* y : {"a", "b"}) first.add_transition(q, pair_letter("#", y), zero, h);
  for (Letter l = 0; l < pairs.size(); ++l) first.add_transition(h, l, zero, h);
  auto lifted_a = first.build(a.acceptance());

  // Second component: E read through the pairs.
  PaBuilder second(pairs, e.dimension());
  for (StateId q = 0; q < e.num_states(); ++q) second.add_state(e.state_name(q), e.is_accepting(q));
  second.set_initial(e.initial());
  auto firsts = sigma.names();
  firsts.push_back("#");
  for (const auto& t : e.transitions())
    for (const auto& x : firsts) second.add_transition(t.from, pair_letter(x, e.alphabet().name(t.letter)), t.vec, t.to);
  auto lifted_e = second.build(e.acceptance());

  return union_pa(lifted_a, lifted_e).automaton;
}

ParikhAutomaton restrict_first(const ParikhAutomaton& paired, const std::vector<std::string>& u) {
  const auto& pairs = paired.alphabet();
  std::vector<std::pair<std::string, std::string>> parts;
  std::vector<std::string> seconds;
  for (const auto& name : pairs.names()) {
    auto colon = name.rfind(':');
    if (colon == std::string::npos) fail(ErrorKind::InvalidInput, "letter '" + name + "' is not a pair");
    parts.emplace_back(name.substr(0, colon), name.substr(colon + 1));
    if (std::find(seconds.begin(), seconds.end(), parts.back().second) == seconds.end())
      seconds.push_back(parts.back().second);
  }
  for (const auto& x : u) {
    bool known = std::any_of(parts.begin(), parts.end(), [&](const auto& p) { return p.first == x; });
    if (!known || x == "#") fail(ErrorKind::InvalidInput, "'" + x + "' is not a first component");
  }
  Alphabet out_alpha(seconds);
  PaBuilder b(out_alpha, paired.dimension());
  std::map<std::pair<StateId, std::size_t>, StateId> ids;
  std::vector<std::pair<StateId, std::size_t>> keys;
  auto id_of = [&](StateId q, std::size_t j) {
    auto [it, added] = ids.emplace(std::make_pair(q, j), static_cast<StateId>(keys.size()));
    if (added) {
      keys.emplace_back(q, j);
      b.add_state(paired.state_name(q) + "/" + std::to_string(j), j == u.size() && paired.is_accepting(q));
    }
    return it->second;
  };
  id_of(paired.initial(), 0);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto [q, j] = keys[i];
    auto from = static_cast<StateId>(i);
    const std::string& expect = j < u.size() ? u[j] : std::string("#");
    for (auto t : paired.outgoing(q)) {
      const auto& tr = paired.transition(t);
      const auto& [x, y] = parts[tr.letter];
      if (x != expect) continue;
      b.add_transition(from, out_alpha.at(y), tr.vec, id_of(tr.to, std::min(j + 1, u.size())));
    }
  }
  return b.build(paired.acceptance());
}

MinskyMachine minsky_suite(const std::string& name) {
  using I = Instruction;
  if (name == "halt") return MinskyMachine({I{Opcode::Ite, 0, 1, 1}, I{Opcode::Stop}});
  if (name == "loop") return MinskyMachine({I{Opcode::Inc, 0}, I{Opcode::Ite, 0, 0, 0}, I{Opcode::Stop}});
  if (name == "six")
    return MinskyMachine({I{Opcode::Inc, 0}, I{Opcode::Ite, 1, 2, 5}, I{Opcode::Inc, 1}, I{Opcode::Ite, 0, 5, 4},
                          I{Opcode::Dec, 0}, I{Opcode::Stop}});
  fail(ErrorKind::InvalidInput, "unknown machine '" + name + "'");
}

std::vector<std::string> minsky_suite_names() { return {"halt", "loop", "six"}; }

}  // namespace parikh
