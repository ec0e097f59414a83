#include "parikh/semilinear.hpp"

#include <algorithm>
#include <sstream>

#include "parikh/ilp.hpp"
#include "parikh/lowering.hpp"

namespace parikh {

std::string format_vec(const Vec& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

Rel negate(Rel r) {
  switch (r) {
    case Rel::Lt: return Rel::Ge;
    case Rel::Le: return Rel::Gt;
    case Rel::Eq: return Rel::Ne;
    case Rel::Ge: return Rel::Lt;
    case Rel::Gt: return Rel::Le;
    case Rel::Ne: return Rel::Eq;
  }
  return r;
}

const char* rel_token(Rel r) {
  switch (r) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Eq: return "=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
    case Rel::Ne: return "!=";
  }
  return "?";
}

std::optional<Rel> parse_rel(const std::string& t) {
  if (t == "<") return Rel::Lt;
  if (t == "<=") return Rel::Le;
  if (t == "=") return Rel::Eq;
  if (t == ">=") return Rel::Ge;
  if (t == ">") return Rel::Gt;
  if (t == "!=") return Rel::Ne;
  return std::nullopt;
}

namespace {

std::int64_t dot(const Vec& a, const Vec& x) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

void check_dim(std::size_t expected, std::size_t got) {
  if (expected != got)
    fail(ErrorKind::InvalidInput, "dimension mismatch: expected " + std::to_string(expected) +
                                      ", got " + std::to_string(got));
}

void check_atom(const Atom& atom, std::size_t dim) {
  std::visit([&](const auto& a) { check_dim(dim, a.coeffs.size()); }, atom);
  if (const auto* c = std::get_if<CongruenceAtom>(&atom)) {
    if (c->modulus < 2) fail(ErrorKind::InvalidInput, "congruence modulus must be at least 2");
    if (c->residue < 0 || c->residue >= c->modulus)
      fail(ErrorKind::InvalidInput, "congruence residue out of range");
  }
}

}  // namespace

bool LinearAtom::holds(const Vec& x) const {
  std::int64_t s = dot(coeffs, x);
  switch (rel) {
    case Rel::Lt: return s < rhs;
    case Rel::Le: return s <= rhs;
    case Rel::Eq: return s == rhs;
    case Rel::Ge: return s >= rhs;
    case Rel::Gt: return s > rhs;
    case Rel::Ne: return s != rhs;
  }
  return false;
}

bool CongruenceAtom::holds(const Vec& x) const {
  std::int64_t s = dot(coeffs, x) % modulus;
  if (s < 0) s += modulus;
  return s == residue;
}

bool holds(const Atom& atom, const Vec& x) {
  return std::visit([&](const auto& a) { return a.holds(x); }, atom);
}

LinearSet::LinearSet(Vec offset, std::vector<Vec> periods) : offset_(std::move(offset)) {
  for (auto x : offset_)
    if (x < 0) fail(ErrorKind::InvalidInput, "negative offset entry");
  for (auto& p : periods) {
    check_dim(offset_.size(), p.size());
    for (auto x : p)
      if (x < 0) fail(ErrorKind::InvalidInput, "negative period entry");
    if (!is_zero(p)) periods_.push_back(std::move(p));
  }
  std::sort(periods_.begin(), periods_.end());
  periods_.erase(std::unique(periods_.begin(), periods_.end()), periods_.end());
}

namespace {

bool combine_search(const std::vector<Vec>& periods, std::size_t i, Vec& rest) {
  if (i == periods.size()) return is_zero(rest);
  const Vec& p = periods[i];
  std::size_t applied = 0;
  bool found = false;
  for (;;) {
    if (combine_search(periods, i + 1, rest)) {
      found = true;
      break;
    }
    bool fits = true;
    for (std::size_t k = 0; k < p.size(); ++k)
      if (rest[k] < p[k]) fits = false;
    if (!fits) break;
    for (std::size_t k = 0; k < p.size(); ++k) rest[k] -= p[k];
    ++applied;
  }
  for (std::size_t k = 0; k < p.size(); ++k) rest[k] += static_cast<std::int64_t>(applied) * p[k];
  return found;
}

}  // namespace

bool LinearSet::contains(const Vec& v) const {
  check_dim(dimension(), v.size());
  Vec rest(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    rest[k] = v[k] - offset_[k];
    if (rest[k] < 0) return false;
  }
  // Every period is nonzero and nonnegative, so each coefficient is at most
  // max_k v_k and the search terminates.
  return combine_search(periods_, 0, rest);
}

ExplicitSemilinear::ExplicitSemilinear(std::size_t dim, std::vector<LinearSet> parts)
    : dim_(dim), parts_(std::move(parts)) {
  if (dim_ == 0) fail(ErrorKind::InvalidInput, "set dimension must be at least 1");
  for (const auto& p : parts_) check_dim(dim_, p.dimension());
}

ExplicitSemilinear ExplicitSemilinear::full(std::size_t dim) {
  std::vector<Vec> units;
  for (std::size_t i = 0; i < dim; ++i) {
    Vec u(dim, 0);
    u[i] = 1;
    units.push_back(u);
  }
  return ExplicitSemilinear(dim, {LinearSet(Vec(dim, 0), units)});
}

ExplicitSemilinear ExplicitSemilinear::singleton(const Vec& v) {
  return ExplicitSemilinear(v.size(), {LinearSet(v, {})});
}

ConstraintSet::ConstraintSet(std::size_t dim, std::vector<Conjunction> dnf)
    : dim_(dim), dnf_(std::move(dnf)) {
  if (dim_ == 0) fail(ErrorKind::InvalidInput, "set dimension must be at least 1");
  for (const auto& conj : dnf_)
    for (const auto& atom : conj) check_atom(atom, dim_);
}

ConstraintSet ConstraintSet::total(std::size_t dim) { return ConstraintSet(dim, {Conjunction{}}); }
ConstraintSet ConstraintSet::none(std::size_t dim) { return ConstraintSet(dim, {}); }
ConstraintSet ConstraintSet::of(std::size_t dim, Conjunction atoms) {
  return ConstraintSet(dim, {std::move(atoms)});
}

std::size_t EpsilonClosureSet::base_dimension() const { return base->dimension(); }

std::size_t EpsilonClosureSet::dimension() const {
  return base_dimension() + cycle_images.size() + (counts_letters ? 1 : 0);
}

SemilinearSet::SemilinearSet(EpsilonClosureSet s) : node_(std::move(s)) {
  const auto& k = std::get<EpsilonClosureSet>(node_);
  if (!k.base) fail(ErrorKind::InvalidInput, "closure set without base");
  for (const auto& img : k.cycle_images) check_dim(k.base_dimension(), img.size());
}

SemilinearSet::SemilinearSet(ProductSet s) : node_(std::move(s)) {
  if (std::get<ProductSet>(node_).factors.empty())
    fail(ErrorKind::InvalidInput, "empty product set");
}

SemilinearSet::SemilinearSet(UnionSet s) : node_(std::move(s)) {
  const auto& u = std::get<UnionSet>(node_);
  if (u.dim == 0) fail(ErrorKind::InvalidInput, "set dimension must be at least 1");
  for (const auto& m : u.members) check_dim(u.dim, m.dimension());
}

std::size_t SemilinearSet::dimension() const {
  return std::visit(
      [](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ProductSet>) {
          std::size_t d = 0;
          for (const auto& f : n.factors) d += f.dimension();
          return d;
        } else if constexpr (std::is_same_v<T, UnionSet>) {
          return n.dim;
        } else {
          return n.dimension();
        }
      },
      node_);
}

bool SemilinearSet::contains(const Vec& v) const {
  check_dim(dimension(), v.size());
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ExplicitSemilinear>) {
          return member_explicit(n, v);
        } else if constexpr (std::is_same_v<T, ConstraintSet>) {
          return member_constraint(n, v);
        } else if constexpr (std::is_same_v<T, EpsilonClosureSet>) {
          return member_closure(n, v);
        } else if constexpr (std::is_same_v<T, ProductSet>) {
          std::size_t off = 0;
          for (const auto& f : n.factors) {
            Vec part(v.begin() + static_cast<std::ptrdiff_t>(off),
                     v.begin() + static_cast<std::ptrdiff_t>(off + f.dimension()));
            if (!f.contains(part)) return false;
            off += f.dimension();
          }
          return true;
        } else {
          for (const auto& m : n.members)
            if (m.contains(v)) return true;
          return false;
        }
      },
      node_);
}

bool member_explicit(const ExplicitSemilinear& s, const Vec& v) {
  check_dim(s.dimension(), v.size());
  for (const auto& part : s.parts())
    if (part.contains(v)) return true;
  return false;
}

bool member_constraint(const ConstraintSet& k, const Vec& v) {
  check_dim(k.dimension(), v.size());
  for (const auto& conj : k.dnf()) {
    bool all = true;
    for (const auto& atom : conj) {
      if (!holds(atom, v)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool member_closure(const EpsilonClosureSet& k, const Vec& x) {
  check_dim(k.dimension(), x.size());
  std::size_t d = k.base_dimension();
  std::size_t m = k.cycle_images.size();
  if (k.counts_letters) {
    if (x[d + m] == 0) return k.empty_word && is_zero(x);
  }
  Vec base(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(d));
  IntSystem sys;
  std::vector<AffineExpr> args;
  for (std::size_t c = 0; c < d; ++c) args.push_back(AffineExpr::constant_of(base[c]));
  bool needs_search = false;
  for (std::size_t j = 0; j < m; ++j) {
    if (x[d + j] == 0) continue;  // y_j = 0
    const Vec& img = k.cycle_images[j];
    if (is_zero(img)) continue;  // y_j = 1 changes nothing
    needs_search = true;
    std::size_t y = sys.add_var();
    sys.rows.push_back(LinearAtom{AffineExpr::variable(y).coeffs, Rel::Ge, 1});
    for (std::size_t c = 0; c < d; ++c)
      if (img[c] != 0) args[c].add(AffineExpr::variable(y, img[c]));
  }
  if (!needs_search) return k.base->contains(base);
  StepBudget budget(1'000'000);
  bool unknown = false;
  for (const auto& s : lower_membership(*k.base, args, sys)) {
    auto res = ilp_solve(s, budget);
    if (res.status == SolveStatus::Feasible) return true;
    if (res.status == SolveStatus::Unknown) unknown = true;
  }
  if (unknown) fail(ErrorKind::Budget, "closure membership exceeded the solver budget");
  return false;
}

ExplicitSemilinear union_sets(const ExplicitSemilinear& s, const ExplicitSemilinear& t) {
  check_dim(s.dimension(), t.dimension());
  std::vector<LinearSet> parts = s.parts();
  parts.insert(parts.end(), t.parts().begin(), t.parts().end());
  return ExplicitSemilinear(s.dimension(), std::move(parts));
}

ExplicitSemilinear concat_sets(const ExplicitSemilinear& s, const ExplicitSemilinear& t) {
  std::size_t d = s.dimension(), e = t.dimension();
  std::vector<LinearSet> parts;
  for (const auto& a : s.parts()) {
    for (const auto& b : t.parts()) {
      Vec offset = a.offset();
      offset.insert(offset.end(), b.offset().begin(), b.offset().end());
      std::vector<Vec> periods;
      for (const auto& p : a.periods()) {
        Vec q = p;
        q.resize(d + e, 0);
        periods.push_back(std::move(q));
      }
      for (const auto& p : b.periods()) {
        Vec q(d, 0);
        q.insert(q.end(), p.begin(), p.end());
        periods.push_back(std::move(q));
      }
      parts.emplace_back(std::move(offset), std::move(periods));
    }
  }
  return ExplicitSemilinear(d + e, std::move(parts));
}

ConstraintSet constraint_and(const ConstraintSet& a, const ConstraintSet& b) {
  check_dim(a.dimension(), b.dimension());
  std::vector<Conjunction> dnf;
  for (const auto& x : a.dnf()) {
    for (const auto& y : b.dnf()) {
      Conjunction c = x;
      c.insert(c.end(), y.begin(), y.end());
      dnf.push_back(std::move(c));
    }
  }
  return ConstraintSet(a.dimension(), std::move(dnf));
}

ConstraintSet constraint_or(const ConstraintSet& a, const ConstraintSet& b) {
  check_dim(a.dimension(), b.dimension());
  std::vector<Conjunction> dnf = a.dnf();
  dnf.insert(dnf.end(), b.dnf().begin(), b.dnf().end());
  return ConstraintSet(a.dimension(), std::move(dnf));
}

namespace {

std::vector<Atom> negate_atom(const Atom& atom) {
  if (const auto* lin = std::get_if<LinearAtom>(&atom))
    return {LinearAtom{lin->coeffs, negate(lin->rel), lin->rhs}};
  const auto& c = std::get<CongruenceAtom>(atom);
  std::vector<Atom> out;
  for (std::int64_t r = 0; r < c.modulus; ++r)
    if (r != c.residue) out.push_back(CongruenceAtom{c.coeffs, c.modulus, r});
  return out;
}

}  // namespace

ConstraintSet constraint_not(const ConstraintSet& a) {
  // not (C1 or ... or Cn) = (not C1) and ... and (not Cn), each not Ci a
  // disjunction of negated atoms.
  ConstraintSet acc = ConstraintSet::total(a.dimension());
  for (const auto& conj : a.dnf()) {
    std::vector<Conjunction> alternatives;
    for (const auto& atom : conj)
      for (auto& neg : negate_atom(atom)) alternatives.push_back({std::move(neg)});
    acc = constraint_and(acc, ConstraintSet(a.dimension(), std::move(alternatives)));
  }
  return acc;
}

ConstraintSet bool_constraint(BoolOp op, const ConstraintSet& k1,
                              const std::optional<ConstraintSet>& k2) {
  switch (op) {
    case BoolOp::Not: return constraint_not(k1);
    case BoolOp::And:
    case BoolOp::Or:
      if (!k2) fail(ErrorKind::InvalidInput, "binary operation needs two operands");
      return op == BoolOp::And ? constraint_and(k1, *k2) : constraint_or(k1, *k2);
  }
  return k1;
}

ConstraintSet pad_constraint(const ConstraintSet& k, std::size_t before, std::size_t after) {
  std::size_t dim = before + k.dimension() + after;
  auto pad = [&](const Vec& c) {
    Vec out(before, 0);
    out.insert(out.end(), c.begin(), c.end());
    out.resize(dim, 0);
    return out;
  };
  std::vector<Conjunction> dnf;
  for (const auto& conj : k.dnf()) {
    Conjunction c;
    for (const auto& atom : conj) {
      if (const auto* lin = std::get_if<LinearAtom>(&atom)) {
        c.push_back(LinearAtom{pad(lin->coeffs), lin->rel, lin->rhs});
      } else {
        const auto& cg = std::get<CongruenceAtom>(atom);
        c.push_back(CongruenceAtom{pad(cg.coeffs), cg.modulus, cg.residue});
      }
    }
    dnf.push_back(std::move(c));
  }
  return ConstraintSet(dim, std::move(dnf));
}

SemilinearSet product_of(std::vector<SemilinearSet> factors) {
  if (factors.empty()) fail(ErrorKind::InvalidInput, "empty product");
  if (factors.size() == 1) return factors.front();
  bool all_explicit = true, all_constraint = true;
  for (const auto& f : factors) {
    all_explicit = all_explicit && std::holds_alternative<ExplicitSemilinear>(f.node());
    all_constraint = all_constraint && std::holds_alternative<ConstraintSet>(f.node());
  }
  if (all_explicit) {
    ExplicitSemilinear acc = std::get<ExplicitSemilinear>(factors[0].node());
    for (std::size_t i = 1; i < factors.size(); ++i)
      acc = concat_sets(acc, std::get<ExplicitSemilinear>(factors[i].node()));
    return acc;
  }
  if (all_constraint) {
    std::size_t total = 0;
    for (const auto& f : factors) total += f.dimension();
    ConstraintSet acc = ConstraintSet::total(total);
    std::size_t off = 0;
    for (const auto& f : factors) {
      const auto& k = std::get<ConstraintSet>(f.node());
      acc = constraint_and(acc, pad_constraint(k, off, total - off - k.dimension()));
      off += k.dimension();
    }
    return acc;
  }
  return ProductSet{std::move(factors)};
}

SemilinearSet union_of(std::size_t dim, std::vector<SemilinearSet> members) {
  bool all_explicit = true, all_constraint = true;
  for (const auto& m : members) {
    all_explicit = all_explicit && std::holds_alternative<ExplicitSemilinear>(m.node());
    all_constraint = all_constraint && std::holds_alternative<ConstraintSet>(m.node());
  }
  if (all_explicit) {
    ExplicitSemilinear acc(dim);
    for (const auto& m : members) acc = union_sets(acc, std::get<ExplicitSemilinear>(m.node()));
    return acc;
  }
  if (all_constraint) {
    ConstraintSet acc = ConstraintSet::none(dim);
    for (const auto& m : members) acc = constraint_or(acc, std::get<ConstraintSet>(m.node()));
    return acc;
  }
  return UnionSet{dim, std::move(members)};
}

}  // namespace parikh
