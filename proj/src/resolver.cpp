#include "parikh/resolver.hpp"

namespace parikh {

std::optional<std::size_t> Resolver::choose(std::span<const Letter> history) const {
  if (history.empty()) fail(ErrorKind::Precondition, "resolver queried on the empty history");
  auto session = start();
  std::optional<std::size_t> last;
  for (auto a : history) last = session(a);
  return last;
}

namespace {

/// Tracks the state and image of the run built so far by a session.
struct RunCursor {
  std::shared_ptr<const ParikhAutomaton> automaton;
  StateId state;
  Vec image;
  bool alive = true;

  explicit RunCursor(std::shared_ptr<const ParikhAutomaton> a)
      : automaton(std::move(a)), state(automaton->initial()), image(automaton->dimension(), 0) {}

  bool chains(std::optional<std::size_t> t, Letter a) const {
    if (!t || *t >= automaton->transitions().size()) return false;
    const auto& tr = automaton->transition(*t);
    return tr.from == state && tr.letter == a;
  }
  void take(std::size_t t) {
    const auto& tr = automaton->transition(t);
    state = tr.to;
    for (std::size_t k = 0; k < image.size(); ++k) image[k] += tr.vec[k];
  }
  std::optional<std::size_t> first(Letter a) const {
    const auto& out = automaton->outgoing(state, a);
    if (out.empty()) return std::nullopt;
    return out.front();
  }
};

}  // namespace

Resolver positional_resolver(const ParikhAutomaton& a, PositionalTable table) {
  for (std::size_t i = 0; i < table.rules.size(); ++i) {
    const auto& rule = table.rules[i];
    auto where = "resolver rule " + std::to_string(i);
    if (rule.transition >= a.transitions().size())
      fail(ErrorKind::InvalidInput, where + ": no such transition");
    const auto& t = a.transition(rule.transition);
    if (t.from != rule.state || t.letter != rule.letter)
      fail(ErrorKind::InvalidInput, where + ": transition does not match state and letter");
    for (const auto& atom : rule.guard) {
      const Vec& coeffs = std::holds_alternative<LinearAtom>(atom)
                              ? std::get<LinearAtom>(atom).coeffs
                              : std::get<CongruenceAtom>(atom).coeffs;
      if (coeffs.size() != a.dimension())
        fail(ErrorKind::InvalidInput, where + ": guard dimension mismatch");
    }
  }
  auto shared = std::make_shared<const ParikhAutomaton>(a);
  auto rules = std::make_shared<const PositionalTable>(table);
  Resolver r("positional", [shared, rules]() -> ResolverSession {
    auto cursor = std::make_shared<RunCursor>(shared);
    return [cursor, rules](Letter a) -> std::optional<std::size_t> {
      if (!cursor->alive) return std::nullopt;
      std::optional<std::size_t> pick;
      for (const auto& rule : rules->rules) {
        if (rule.state != cursor->state || rule.letter != a) continue;
        bool ok = true;
        for (const auto& atom : rule.guard) ok = ok && holds(atom, cursor->image);
        if (ok) {
          pick = rule.transition;
          break;
        }
      }
      if (!pick && rules->fallback_first) pick = cursor->first(a);
      if (!pick) {
        cursor->alive = false;
        return std::nullopt;
      }
      cursor->take(*pick);
      return pick;
    };
  });
  r.table_ = std::move(table);
  return r;
}

Resolver first_choice_resolver(const ParikhAutomaton& a) {
  auto shared = std::make_shared<const ParikhAutomaton>(a);
  return Resolver("first", [shared]() -> ResolverSession {
    auto cursor = std::make_shared<RunCursor>(shared);
    return [cursor](Letter a) -> std::optional<std::size_t> {
      if (!cursor->alive) return std::nullopt;
      auto pick = cursor->first(a);
      if (!pick) {
        cursor->alive = false;
        return std::nullopt;
      }
      cursor->take(*pick);
      return pick;
    };
  });
}

Resolver complete_resolver(const ParikhAutomaton& completed, const Resolver& r) {
  auto shared = std::make_shared<const ParikhAutomaton>(completed);
  return Resolver(r.name(), [shared, r]() -> ResolverSession {
    auto cursor = std::make_shared<RunCursor>(shared);
    auto inner = std::make_shared<ResolverSession>(r.start());
    return [cursor, inner](Letter a) -> std::optional<std::size_t> {
      auto pick = (*inner)(a);
      if (!cursor->chains(pick, a)) pick = cursor->first(a);
      if (!pick) return std::nullopt;
      cursor->take(*pick);
      return pick;
    };
  });
}

}  // namespace parikh
