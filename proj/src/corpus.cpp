#include "parikh/corpus.hpp"

#include <algorithm>
#include <memory>

namespace parikh {

namespace {

using Index = std::size_t;

struct Built {
  PaBuilder builder;
  Index add(StateId from, const std::string& a, Vec v, StateId to) {
    builder.add_transition(from, a, std::move(v), to);
    return builder.num_transitions() - 1;
  }
};

LinearAtom atom(Vec coeffs, Rel rel, std::int64_t rhs) { return LinearAtom{std::move(coeffs), rel, rhs}; }

CorpusEntry make_ex1() {
  Built b{PaBuilder(Alphabet({"a", "b"}), 2)};
  StateId p = b.builder.add_state("p", true);
  StateId r = b.builder.add_state("r", true);
  b.add(p, "a", {1, 0}, p);
  b.add(p, "b", {0, 1}, r);
  b.add(r, "b", {0, 1}, r);
  ExplicitSemilinear c(2, {LinearSet({0, 0}, {{1, 1}}), LinearSet({0, 0}, {{1, 2}})});
  return {"ex1", "a^n b^n or a^n b^2n", b.builder.build(c), std::nullopt, ref_ex1};
}

CorpusEntry make_non_dyck() {
  Built b{PaBuilder(Alphabet({"0", "1"}), 2)};
  StateId qc = b.builder.add_state("qc");
  StateId qn = b.builder.add_state("qn", true);
  Index stay[2] = {b.add(qc, "0", {1, 0}, qc), b.add(qc, "1", {0, 1}, qc)};
  Index leave[2] = {b.add(qc, "0", {1, 0}, qn), b.add(qc, "1", {0, 1}, qn)};
  Index done[2] = {b.add(qn, "0", {0, 0}, qn), b.add(qn, "1", {0, 0}, qn)};
  auto a = b.builder.build(ConstraintSet::of(2, {atom({1, -1}, Rel::Lt, 0)}));

  // Stop counting at the first prefix with more 1s than 0s.
  Resolver r("first-non-dyck-prefix", [=]() -> ResolverSession {
    auto balance = std::make_shared<std::int64_t>(0);
    auto stopped = std::make_shared<bool>(false);
    return [=](Letter l) -> std::optional<std::size_t> {
      if (l > 1) return std::nullopt;
      if (*stopped) return done[l];
      *balance += l == 0 ? 1 : -1;
      if (*balance < 0) {
        *stopped = true;
        return leave[l];
      }
      return stay[l];
    };
  });
  return {"nonDyck", "words with a non-Dyck prefix", std::move(a), std::move(r), ref_non_dyck};
}

CorpusEntry make_d() {
  Built b{PaBuilder(Alphabet({"c", "d"}), 3)};
  StateId s0 = b.builder.add_state("s0");
  StateId s1 = b.builder.add_state("s1");
  StateId odd = b.builder.add_state("odd");
  StateId even = b.builder.add_state("even");
  StateId acc = b.builder.add_state("acc", true);
  StateId tail = b.builder.add_state("tail");
  Index first_c = b.add(s0, "c", {1, 0, 0}, s1);
  Index first_d = b.add(s1, "d", {0, 0, 1}, odd);
  Index odd_c = b.add(odd, "c", {0, 1, 0}, odd);
  Index odd_d = b.add(odd, "d", {0, 0, 1}, even);
  Index even_c = b.add(even, "c", {1, 0, 0}, even);
  Index even_d = b.add(even, "d", {0, 0, 1}, odd);
  Index odd_stop = b.add(odd, "d", {0, 0, 1}, acc);
  Index even_stop = b.add(even, "d", {0, 0, 1}, acc);
  Index acc_d = b.add(acc, "d", {0, 0, 0}, acc);
  Index acc_c = b.add(acc, "c", {0, 0, 0}, tail);
  Index tail_c = b.add(tail, "c", {0, 0, 0}, tail);
  Index tail_d = b.add(tail, "d", {0, 0, 0}, acc);
  // (e, o, j): j counts the d's read up to the stop, so the last summed block
  // has index j - 1.
  Vec e2o{2, -1, 0}, e2o1{1, -2, 0}, j{0, 0, 1};
  ConstraintSet c(3, {{atom(e2o, Rel::Ne, 0), CongruenceAtom{j, 2, 0}},
                      {atom(e2o1, Rel::Ne, 1), CongruenceAtom{j, 2, 1}}});
  auto a = b.builder.build(c);

  // Stop at the d that closes the first block with n_{j+1} != 2 n_j.
  Resolver r("first-doubling-violation", [=]() -> ResolverSession {
    struct S {
      int phase = 0;  // 0 before the first d, 1 summing, 2 stopped
      bool in_odd = true;
      std::int64_t prev = 0, cur = 0;
    };
    auto s = std::make_shared<S>();
    return [=](Letter l) -> std::optional<std::size_t> {
      bool is_c = l == 0;
      if (l > 1) return std::nullopt;
      switch (s->phase) {
        case 0:
          if (is_c) {
            ++s->cur;
            return s->cur == 1 ? std::optional<std::size_t>(first_c) : std::nullopt;
          }
          s->phase = 1;
          s->prev = s->cur;
          s->cur = 0;
          return s->prev == 1 ? std::optional<std::size_t>(first_d) : std::nullopt;
        case 1:
          if (is_c) {
            ++s->cur;
            return s->in_odd ? odd_c : even_c;
          }
          if (s->cur != 2 * s->prev) {
            s->phase = 2;
            return s->in_odd ? odd_stop : even_stop;
          }
          s->prev = s->cur;
          s->cur = 0;
          s->in_odd = !s->in_odd;
          return s->in_odd ? even_d : odd_d;
        default:
          if (s->phase == 2) {
            if (is_c) s->phase = 3;
            return is_c ? acc_c : acc_d;
          }
          if (!is_c) s->phase = 2;
          return is_c ? tail_c : tail_d;
      }
    };
  });
  return {"D", "c d c^n1 d ... c^nk d with some n_{j+1} != 2 n_j", std::move(a), std::move(r), ref_d};
}

CorpusEntry make_e_prime() {
  Built b{PaBuilder(Alphabet({"a", "b", "c"}), 4)};
  StateId p0 = b.builder.add_state("p0");
  StateId p1 = b.builder.add_state("p1");
  StateId q = b.builder.add_state("q");
  StateId p3 = b.builder.add_state("p3");
  StateId p4 = b.builder.add_state("p4", true);
  Index c_loop = b.add(p0, "c", {1, 0, 0, 0}, p0);
  Index enter[2] = {b.add(p0, "a", {0, 1, 0, 0}, p1), b.add(p0, "b", {0, 1, 0, 0}, p1)};
  Index mid[2] = {b.add(p1, "a", {0, 1, 0, 0}, p1), b.add(p1, "b", {0, 1, 0, 0}, p1)};
  Index to_q = b.add(p1, "b", {0, 1, 0, 0}, q);
  Index q_a = b.add(q, "a", {0, 0, 1, 0}, p3);
  Index a_loop = b.add(p3, "a", {0, 0, 1, 0}, p3);
  Index first_b = b.add(p3, "b", {0, 0, 0, 1}, p4);
  Index b_loop = b.add(p4, "b", {0, 0, 0, 1}, p4);
  Index direct = b.add(p0, "b", {0, 1, 0, 0}, q);
  ExplicitSemilinear c(4, {LinearSet({0, 0, 0, 0}, {{1, 1, 0, 0}, {0, 0, 1, 1}})});
  auto a = b.builder.build(c);

  // The m-th letter after c^m moves to q when it is a b.
  Resolver r("count-c", [=]() -> ResolverSession {
    struct S {
      std::int64_t cs = 0, seen = 0;
      StateId at = 0;
      bool failed = false;
    };
    auto s = std::make_shared<S>();
    StateId p0_ = p0, p1_ = p1, q_ = q, p3_ = p3, p4_ = p4;
    return [=](Letter l) -> std::optional<std::size_t> {
      if (s->failed || l > 2) return std::nullopt;
      auto none = [&]() -> std::optional<std::size_t> {
        s->failed = true;
        return std::nullopt;
      };
      if (s->at == p0_) {
        if (l == 2) {
          ++s->cs;
          return c_loop;
        }
        ++s->seen;
        if (l == 1 && s->seen == s->cs) {
          s->at = q_;
          return direct;
        }
        s->at = p1_;
        return enter[l];
      }
      if (s->at == p1_) {
        if (l == 2) return none();
        ++s->seen;
        if (l == 1 && s->seen == s->cs) {
          s->at = q_;
          return to_q;
        }
        return mid[l];
      }
      if (s->at == q_) {
        if (l != 0) return none();
        s->at = p3_;
        return q_a;
      }
      if (s->at == p3_) {
        if (l == 0) return a_loop;
        if (l == 1) {
          s->at = p4_;
          return first_b;
        }
        return none();
      }
      if (l == 1) return b_loop;
      return none();
    };
  });
  return {"Eprime", "c^m {a,b}^(m-1) b a^n b^n with m, n > 0", std::move(a), std::move(r), ref_e_prime};
}

CorpusEntry make_n_prime() {
  Built b{PaBuilder(Alphabet({"0", "1", "c"}), 3)};
  StateId s0 = b.builder.add_state("s0");
  StateId q = b.builder.add_state("q", true);
  StateId s2 = b.builder.add_state("s2", true);
  Index c_loop = b.add(s0, "c", {0, 0, 1}, s0);
  Index enter[2] = {b.add(s0, "0", {1, 0, 0}, q), b.add(s0, "1", {0, 1, 0}, q)};
  Index stay[2] = {b.add(q, "0", {1, 0, 0}, q), b.add(q, "1", {0, 1, 0}, q)};
  Index leave[2] = {b.add(q, "0", {0, 0, 0}, s2), b.add(q, "1", {0, 0, 0}, s2)};
  Index rest[2] = {b.add(s2, "0", {0, 0, 0}, s2), b.add(s2, "1", {0, 0, 0}, s2)};
  ConstraintSet c = ConstraintSet::of(3, {atom({1, -1, 0}, Rel::Lt, 0), atom({1, 1, -1}, Rel::Eq, 0)});
  auto a = b.builder.build(c);

  // Leave q with the (2n+1)-th letter of c^n w.
  Resolver r("count-c", [=]() -> ResolverSession {
    struct S {
      std::int64_t cs = 0, pos = 0;
      int phase = 0;  // 0 reading c, 1 in q, 2 after q
      bool failed = false;
    };
    auto s = std::make_shared<S>();
    return [=](Letter l) -> std::optional<std::size_t> {
      if (s->failed || l > 2) return std::nullopt;
      std::int64_t index = s->pos++;
      if (s->phase == 0) {
        if (l == 2) {
          ++s->cs;
          return c_loop;
        }
        s->phase = 1;
        return enter[l];
      }
      if (l == 2) {
        s->failed = true;
        return std::nullopt;
      }
      if (s->phase == 1 && index == 2 * s->cs) {
        s->phase = 2;
        return leave[l];
      }
      return s->phase == 1 ? stay[l] : rest[l];
    };
  });
  return {"Nprime", "c^n w with |w| >= n and a non-Dyck length-n prefix of w", std::move(a), std::move(r),
          ref_n_prime};
}

CorpusEntry make_e() {
  Built b{PaBuilder(Alphabet({"a", "b"}), 2)};
  StateId q0 = b.builder.add_state("q0");
  StateId q1 = b.builder.add_state("q1");
  StateId q2 = b.builder.add_state("q2", true);
  b.add(q0, "a", {0, 0}, q0);
  b.add(q0, "b", {0, 0}, q0);
  b.add(q0, "a", {1, 0}, q1);
  b.add(q1, "a", {1, 0}, q1);
  b.add(q1, "b", {0, 1}, q2);
  b.add(q2, "b", {0, 1}, q2);
  auto a = b.builder.build(ConstraintSet::of(2, {atom({1, -1}, Rel::Eq, 0)}));
  return {"E", "{a,b}* a^n b^n with n > 0", std::move(a), std::nullopt, ref_e};
}

}  // namespace

std::vector<std::string> corpus_names() { return {"ex1", "nonDyck", "D", "Eprime", "Nprime", "E"}; }

CorpusEntry corpus_get(const std::string& name) {
  if (name == "ex1") return make_ex1();
  if (name == "nonDyck") return make_non_dyck();
  if (name == "D") return make_d();
  if (name == "Eprime") return make_e_prime();
  if (name == "Nprime") return make_n_prime();
  if (name == "E") return make_e();
  fail(ErrorKind::InvalidInput, "unknown corpus entry '" + name + "'");
}

bool reference_member(const CorpusEntry& entry, const Word& w) {
  std::string text;
  const auto& sigma = entry.automaton.alphabet();
  for (auto l : w) {
    if (l >= sigma.size()) fail(ErrorKind::InvalidInput, "letter outside the alphabet of " + entry.name);
    text += sigma.name(l);
  }
  return entry.reference(text);
}

bool ref_ex1(std::string_view w) {
  auto n = w.find_first_not_of('a');
  if (n == std::string_view::npos) n = w.size();
  auto rest = w.substr(n);
  if (rest.find_first_not_of('b') != std::string_view::npos) return false;
  return rest.size() == n || rest.size() == 2 * n;
}

bool ref_non_dyck(std::string_view w) {
  long balance = 0;
  for (char ch : w) {
    balance += ch == '0' ? 1 : -1;
    if (balance < 0) return true;
  }
  return false;
}

bool ref_d(std::string_view w) {
  if (w.empty() || w.back() != 'd') return false;
  std::vector<std::size_t> blocks;
  std::size_t run = 0;
  for (char ch : w) {
    if (ch == 'c') {
      ++run;
    } else {
      blocks.push_back(run);
      run = 0;
    }
  }
  if (blocks.size() < 2 || blocks[0] != 1) return false;
  for (std::size_t j = 0; j + 1 < blocks.size(); ++j)
    if (blocks[j + 1] != 2 * blocks[j]) return true;
  return false;
}

bool ref_e_prime(std::string_view w) {
  std::size_t m = w.find_first_not_of('c');
  if (m == 0 || m == std::string_view::npos) return false;
  auto rest = w.substr(m);
  if (std::ranges::count(rest, 'c') > 0) return false;
  // rest = x b a^n b^n with |x| = m - 1
  if (rest.size() < m + 2 || rest[m - 1] != 'b') return false;
  auto tail = rest.substr(m);
  std::size_t n = tail.find_first_not_of('a');
  if (n == 0 || n == std::string_view::npos) return false;
  auto bs = tail.substr(n);
  return bs.size() == n && bs.find_first_not_of('b') == std::string_view::npos;
}

bool ref_n_prime(std::string_view w) {
  std::size_t n = w.find_first_not_of('c');
  if (n == std::string_view::npos) n = w.size();
  auto rest = w.substr(n);
  if (std::ranges::count(rest, 'c') > 0 || rest.size() < n) return false;
  long zeros = 0, ones = 0;
  for (std::size_t i = 0; i < n; ++i) (rest[i] == '0' ? zeros : ones) += 1;
  return zeros < ones;
}

bool ref_e(std::string_view w) {
  std::size_t t = 0;
  while (t < w.size() && w[w.size() - 1 - t] == 'b') ++t;
  if (t == 0 || w.size() < 2 * t) return false;
  auto as = w.substr(w.size() - 2 * t, t);
  return as.find_first_not_of('a') == std::string_view::npos;
}

}  // namespace parikh
