#include "parikh/closures.hpp"

#include <deque>
#include <map>
#include <memory>
#include <set>
#include <tuple>

namespace parikh {

namespace {

bool is_constraint(const SemilinearSet& s) {
  return std::holds_alternative<ConstraintSet>(s.node());
}

SemilinearSet everything(std::size_t dim, bool constraint) {
  if (constraint) return ConstraintSet::total(dim);
  return ExplicitSemilinear::full(dim);
}

// Nonempty runs only; the empty word gets its own clause.
SemilinearSet positive_even(bool constraint) {
  if (constraint) return ConstraintSet::of(1, {CongruenceAtom{{1}, 2, 0}, LinearAtom{{1}, Rel::Ge, 2}});
  return ExplicitSemilinear(1, {LinearSet({2}, {{2}})});
}

SemilinearSet zero_only(std::size_t dim, bool constraint) {
  if (!constraint) return ExplicitSemilinear::singleton(Vec(dim, 0));
  Conjunction atoms;
  for (std::size_t k = 0; k < dim; ++k) {
    Vec c(dim, 0);
    c[k] = 1;
    atoms.push_back(LinearAtom{c, Rel::Eq, 0});
  }
  return ConstraintSet::of(dim, std::move(atoms));
}

std::vector<std::optional<Letter>> letter_map(const Alphabet& from, const Alphabet& to) {
  std::vector<std::optional<Letter>> out;
  for (const auto& n : from.names()) out.push_back(to.find(n));
  return out;
}

std::string fresh_state_name(const AutomatonBase& a, const std::string& stem) {
  std::string name = stem;
  for (int i = 1; a.find_state(name); ++i) name = stem + "_" + std::to_string(i);
  return name;
}

/// `a` with a fresh initial state that copies the outgoing transitions of the
/// old one. clone_of[t] is the copy of transition t when t leaves the old
/// initial state, t itself otherwise.
ParikhAutomaton with_fresh_initial(const ParikhAutomaton& a, std::vector<std::size_t>& clone_of) {
  auto names = a.state_names();
  auto accepting = a.accepting();
  auto transitions = a.transitions();
  auto fresh = static_cast<StateId>(names.size());
  names.push_back(fresh_state_name(a, "init"));
  accepting.push_back(a.is_accepting(a.initial()));
  clone_of.resize(transitions.size());
  for (std::size_t t = 0; t < a.transitions().size(); ++t) {
    clone_of[t] = t;
    if (a.transition(t).from != a.initial()) continue;
    Transition copy = a.transition(t);
    copy.from = fresh;
    clone_of[t] = transitions.size();
    transitions.push_back(std::move(copy));
  }
  return ParikhAutomaton(a.alphabet(), a.dimension(), std::move(names), fresh, std::move(accepting),
                         std::move(transitions), a.acceptance());
}

/// Follows one component's resolver while letters arrive over the merged
/// alphabet. Transition indices of `automaton` extend those of the automaton
/// the resolver was written for.
class ComponentSession {
 public:
  ComponentSession(std::shared_ptr<const ParikhAutomaton> automaton,
                   std::vector<std::optional<Letter>> own_letter, const Resolver& r, bool fallback)
      : automaton_(std::move(automaton)),
        own_letter_(std::move(own_letter)),
        inner_(r.start()),
        fallback_(fallback),
        state_(automaton_->initial()) {}

  std::optional<std::size_t> next(Letter a) {
    if (dead_) return std::nullopt;
    std::optional<std::size_t> pick;
    if (own_letter_[a]) pick = inner_(*own_letter_[a]);
    bool chains = pick && *pick < automaton_->transitions().size() &&
                  automaton_->transition(*pick).from == state_ && automaton_->transition(*pick).letter == a;
    if (!chains) {
      pick.reset();
      if (fallback_ && !automaton_->outgoing(state_, a).empty()) pick = automaton_->outgoing(state_, a).front();
    }
    if (!pick) {
      dead_ = true;
      return std::nullopt;
    }
    state_ = automaton_->transition(*pick).to;
    return pick;
  }

 private:
  std::shared_ptr<const ParikhAutomaton> automaton_;
  std::vector<std::optional<Letter>> own_letter_;
  ResolverSession inner_;
  bool fallback_;
  StateId state_;
  bool dead_ = false;
};

struct ProductSkeleton {
  std::vector<std::string> names;
  std::vector<std::pair<StateId, StateId>> pairs;
  std::vector<Transition> transitions;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> by_pair;
};

/// Reachable synchronized product; `label` gives the vector of a pair of
/// component transitions.
template <class Label>
ProductSkeleton build_product(const ParikhAutomaton& p1, const ParikhAutomaton& p2, Label label) {
  ProductSkeleton out;
  std::map<std::pair<StateId, StateId>, StateId> ids;
  auto id_of = [&](StateId q1, StateId q2) {
    auto [it, added] = ids.emplace(std::make_pair(q1, q2), static_cast<StateId>(out.pairs.size()));
    if (added) {
      out.pairs.emplace_back(q1, q2);
      out.names.push_back("(" + p1.state_name(q1) + "," + p2.state_name(q2) + ")");
    }
    return it->second;
  };
  id_of(p1.initial(), p2.initial());
  for (std::size_t i = 0; i < out.pairs.size(); ++i) {
    auto [q1, q2] = out.pairs[i];
    for (Letter l = 0; l < p1.alphabet().size(); ++l) {
      for (auto t1 : p1.outgoing(q1, l)) {
        for (auto t2 : p2.outgoing(q2, l)) {
          StateId to = id_of(p1.transition(t1).to, p2.transition(t2).to);
          out.by_pair.emplace(std::make_pair(t1, t2), out.transitions.size());
          out.transitions.push_back(Transition{static_cast<StateId>(i), l, label(t1, t2), to});
        }
      }
    }
  }
  return out;
}

Resolver pair_resolver(const std::string& name, std::shared_ptr<const ProductSkeleton> skeleton,
                       std::shared_ptr<const ParikhAutomaton> c1, std::vector<std::optional<Letter>> own1,
                       const Resolver& r1, std::vector<std::size_t> remap1,
                       std::shared_ptr<const ParikhAutomaton> c2, std::vector<std::optional<Letter>> own2,
                       const Resolver& r2, std::vector<std::size_t> remap2, bool fallback) {
  // remap_i sends a transition of the resolver's automaton at the initial
  // state to the transition used by the product on the first letter.
  return Resolver(name, [=]() -> ResolverSession {
    auto s1 = std::make_shared<ComponentSession>(c1, own1, r1, fallback);
    auto s2 = std::make_shared<ComponentSession>(c2, own2, r2, fallback);
    auto first = std::make_shared<bool>(true);
    return [=](Letter a) -> std::optional<std::size_t> {
      auto t1 = s1->next(a);
      auto t2 = s2->next(a);
      bool at_start = *first;
      *first = false;
      if (!t1 || !t2) return std::nullopt;
      std::size_t u1 = at_start && *t1 < remap1.size() ? remap1[*t1] : *t1;
      std::size_t u2 = at_start && *t2 < remap2.size() ? remap2[*t2] : *t2;
      auto it = skeleton->by_pair.find({u1, u2});
      if (it == skeleton->by_pair.end()) return std::nullopt;
      return it->second;
    };
  });
}

}  // namespace

ProductResult union_pa(const ParikhAutomaton& a1, const ParikhAutomaton& a2, const Resolver* r1,
                       const Resolver* r2) {
  Alphabet sigma = merge_alphabets(a1.alphabet(), a2.alphabet());
  auto b1 = complete(over_alphabet(a1, sigma));
  auto b2 = complete(over_alphabet(a2, sigma));
  std::vector<std::size_t> clone1, clone2;
  auto p1 = with_fresh_initial(b1, clone1);
  auto p2 = with_fresh_initial(b2, clone2);

  auto flag = [](const ParikhAutomaton& p, const Transition& t) -> std::int64_t {
    if (t.from == p.initial()) return p.is_accepting(t.to) ? 2 : 1;
    return p.is_accepting(t.from) == p.is_accepting(t.to) ? 2 : 1;
  };
  auto skeleton = std::make_shared<ProductSkeleton>(build_product(p1, p2, [&](std::size_t t1, std::size_t t2) {
    const auto& x = p1.transition(t1);
    const auto& y = p2.transition(t2);
    Vec v{flag(p1, x), flag(p2, y)};
    v.insert(v.end(), x.vec.begin(), x.vec.end());
    v.insert(v.end(), y.vec.begin(), y.vec.end());
    return v;
  }));

  std::size_t d1 = a1.dimension(), d2 = a2.dimension();
  std::size_t dim = 2 + d1 + d2;
  bool c1 = is_constraint(a1.acceptance()), c2 = is_constraint(a2.acceptance());
  std::vector<SemilinearSet> members{
      product_of({positive_even(c1), everything(1, c1), a1.acceptance(), everything(d2, c1)}),
      product_of({everything(1, c2), positive_even(c2), everything(d1, c2), a2.acceptance()}),
  };
  if (member(a1, {}) || member(a2, {})) members.push_back(zero_only(dim, c1 && c2));
  SemilinearSet acceptance = union_of(dim, std::move(members));

  std::vector<bool> accepting(skeleton->pairs.size(), true);
  ProductResult out{ParikhAutomaton(sigma, dim, skeleton->names, 0, std::move(accepting),
                                    skeleton->transitions, std::move(acceptance)),
                    std::nullopt, skeleton->pairs, {p1, p2}};
  if (r1 && r2) {
    out.resolver = pair_resolver(
        "union(" + r1->name() + "," + r2->name() + ")", skeleton,
        std::make_shared<const ParikhAutomaton>(b1), letter_map(sigma, a1.alphabet()), *r1, clone1,
        std::make_shared<const ParikhAutomaton>(b2), letter_map(sigma, a2.alphabet()), *r2, clone2, true);
  }
  return out;
}

ProductResult intersect_pa(const ParikhAutomaton& a1, const ParikhAutomaton& a2, const Resolver* r1,
                           const Resolver* r2) {
  Alphabet sigma = merge_alphabets(a1.alphabet(), a2.alphabet());
  auto p1 = over_alphabet(a1, sigma);
  auto p2 = over_alphabet(a2, sigma);
  auto skeleton = std::make_shared<ProductSkeleton>(build_product(p1, p2, [&](std::size_t t1, std::size_t t2) {
    Vec v = p1.transition(t1).vec;
    const auto& y = p2.transition(t2).vec;
    v.insert(v.end(), y.begin(), y.end());
    return v;
  }));
  std::vector<bool> accepting;
  for (auto [q1, q2] : skeleton->pairs) accepting.push_back(p1.is_accepting(q1) && p2.is_accepting(q2));
  ProductResult out{ParikhAutomaton(sigma, a1.dimension() + a2.dimension(), skeleton->names, 0,
                                    std::move(accepting), skeleton->transitions,
                                    product_of({a1.acceptance(), a2.acceptance()})),
                    std::nullopt, skeleton->pairs, {p1, p2}};
  if (r1 && r2) {
    out.resolver = pair_resolver(
        "intersect(" + r1->name() + "," + r2->name() + ")", skeleton,
        std::make_shared<const ParikhAutomaton>(p1), letter_map(sigma, a1.alphabet()), *r1, {},
        std::make_shared<const ParikhAutomaton>(p2), letter_map(sigma, a2.alphabet()), *r2, {}, false);
  }
  return out;
}

Word Homomorphism::apply(const Word& w) const {
  Word out;
  for (auto a : w) out.insert(out.end(), images.at(a).begin(), images.at(a).end());
  return out;
}

InverseHomResult inverse_hom(const ParikhAutomaton& a, const Homomorphism& h, const Resolver* r) {
  if (h.images.size() != h.source.size())
    fail(ErrorKind::InvalidInput, "homomorphism must give an image for every source letter");
  std::vector<Word> images;
  for (const auto& img : h.images) {
    Word translated;
    for (auto b : img) translated.push_back(a.alphabet().at(h.target.name(b)));
    images.push_back(std::move(translated));
  }

  using Key = std::tuple<StateId, Letter, Vec, StateId>;
  std::vector<Transition> transitions;
  auto index = std::make_shared<std::map<Key, std::size_t>>();
  for (StateId p = 0; p < a.num_states(); ++p) {
    for (Letter l = 0; l < h.source.size(); ++l) {
      std::set<std::pair<StateId, Vec>> current{{p, Vec(a.dimension(), 0)}};
      for (auto b : images[l]) {
        std::set<std::pair<StateId, Vec>> next;
        for (const auto& [q, v] : current)
          for (auto t : a.outgoing(q, b)) next.emplace(a.transition(t).to, add(v, a.transition(t).vec));
        current = std::move(next);
      }
      for (const auto& [q, v] : current) {
        index->emplace(Key{p, l, v, q}, transitions.size());
        transitions.push_back(Transition{p, l, v, q});
      }
    }
  }
  InverseHomResult out{ParikhAutomaton(h.source, a.dimension(), a.state_names(), a.initial(), a.accepting(),
                                       std::move(transitions), a.acceptance()),
                       std::nullopt};
  if (r) {
    auto source = std::make_shared<const ParikhAutomaton>(a);
    Resolver inner = *r;
    out.resolver = Resolver("invhom(" + r->name() + ")", [source, inner, images, index]() -> ResolverSession {
      auto session = std::make_shared<ResolverSession>(inner.start());
      auto state = std::make_shared<std::optional<StateId>>(source->initial());
      return [source, session, state, images, index](Letter l) -> std::optional<std::size_t> {
        if (!*state) return std::nullopt;
        StateId from = **state, q = from;
        Vec v(source->dimension(), 0);
        for (auto b : images[l]) {
          auto t = (*session)(b);
          if (!t || *t >= source->transitions().size() || source->transition(*t).from != q ||
              source->transition(*t).letter != b) {
            state->reset();
            return std::nullopt;
          }
          v = add(v, source->transition(*t).vec);
          q = source->transition(*t).to;
        }
        *state = q;
        auto it = index->find(Key{from, l, v, q});
        if (it == index->end()) return std::nullopt;
        return it->second;
      };
    });
  }
  return out;
}

std::optional<bool> commutative_member(const ParikhAutomaton& a, const Word& w,
                                       std::uint64_t budget_steps) {
  std::size_t n = a.alphabet().size();
  Vec counts(n, 0);
  for (auto l : w) {
    if (l >= n) fail(ErrorKind::InvalidInput, "letter outside the alphabet");
    ++counts[l];
  }
  auto transitions = a.transitions();
  for (auto& t : transitions) {
    Vec unit(n, 0);
    unit[t.letter] = 1;
    t.vec.insert(t.vec.end(), unit.begin(), unit.end());
  }
  SemilinearSet target = ExplicitSemilinear::singleton(counts);
  if (is_constraint(a.acceptance())) {
    Conjunction atoms;
    for (std::size_t k = 0; k < n; ++k) {
      Vec c(n, 0);
      c[k] = 1;
      atoms.push_back(LinearAtom{c, Rel::Eq, counts[k]});
    }
    target = ConstraintSet::of(n, std::move(atoms));
  }
  ParikhAutomaton augmented(a.alphabet(), a.dimension() + n, a.state_names(), a.initial(), a.accepting(),
                            std::move(transitions), product_of({a.acceptance(), target}));
  auto res = is_empty(augmented, budget_steps);
  if (res.status == Emptiness::Unknown) return std::nullopt;
  return res.status == Emptiness::Nonempty;
}

EquivResult bounded_equiv(const ParikhAutomaton& a1, const ParikhAutomaton& a2, std::size_t max_len) {
  EquivResult out;
  out.alphabet = merge_alphabets(a1.alphabet(), a2.alphabet());
  auto p1 = over_alphabet(a1, out.alphabet);
  auto p2 = over_alphabet(a2, out.alphabet);
  for_each_word(out.alphabet.size(), max_len, [&](const Word& w) {
    if (member(p1, w) == member(p2, w)) return true;
    out.equal = false;
    out.counterexample = w;
    return false;
  });
  return out;
}

}  // namespace parikh
