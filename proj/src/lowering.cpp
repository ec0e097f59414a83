#include "parikh/lowering.hpp"

namespace parikh {

AffineExpr& AffineExpr::add(const AffineExpr& other, std::int64_t scale) {
  if (coeffs.size() < other.coeffs.size()) coeffs.resize(other.coeffs.size(), 0);
  for (std::size_t i = 0; i < other.coeffs.size(); ++i) coeffs[i] += scale * other.coeffs[i];
  constant += scale * other.constant;
  return *this;
}

namespace {

LinearAtom compare(const AffineExpr& e, Rel rel, std::int64_t rhs) {
  return LinearAtom{e.coeffs, rel, rhs - e.constant};
}

AffineExpr combine(const Vec& coeffs, const std::vector<AffineExpr>& args) {
  AffineExpr out;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0) out.add(args[k], coeffs[k]);
  return out;
}

std::vector<IntSystem> lower_into(const SemilinearSet& s, const std::vector<AffineExpr>& args,
                                  const std::vector<IntSystem>& bases);

std::vector<IntSystem> lower_explicit(const ExplicitSemilinear& s,
                                      const std::vector<AffineExpr>& args,
                                      const std::vector<IntSystem>& bases) {
  std::vector<IntSystem> out;
  for (const auto& base : bases) {
    for (const auto& part : s.parts()) {
      IntSystem sys = base;
      std::size_t first = sys.add_vars(part.periods().size());
      for (std::size_t k = 0; k < s.dimension(); ++k) {
        AffineExpr e = args[k];
        for (std::size_t i = 0; i < part.periods().size(); ++i)
          if (part.periods()[i][k] != 0) e.add(AffineExpr::variable(first + i, -part.periods()[i][k]));
        sys.rows.push_back(compare(e, Rel::Eq, part.offset()[k]));
      }
      out.push_back(std::move(sys));
    }
  }
  return out;
}

std::vector<IntSystem> lower_constraint(const ConstraintSet& k,
                                        const std::vector<AffineExpr>& args,
                                        const std::vector<IntSystem>& bases) {
  std::vector<IntSystem> out;
  for (const auto& base : bases) {
    for (const auto& conj : k.dnf()) {
      std::vector<IntSystem> partial{base};
      for (const auto& atom : conj) {
        if (const auto* lin = std::get_if<LinearAtom>(&atom)) {
          AffineExpr e = combine(lin->coeffs, args);
          if (lin->rel == Rel::Ne) {
            std::vector<IntSystem> next;
            for (auto& sys : partial) {
              for (Rel side : {Rel::Lt, Rel::Gt}) {
                IntSystem copy = sys;
                copy.rows.push_back(compare(e, side, lin->rhs));
                next.push_back(std::move(copy));
              }
            }
            partial = std::move(next);
          } else {
            for (auto& sys : partial) sys.rows.push_back(compare(e, lin->rel, lin->rhs));
          }
        } else {
          const auto& cong = std::get<CongruenceAtom>(atom);
          AffineExpr e = combine(cong.coeffs, args);
          std::int64_t r = (cong.residue - e.constant) % cong.modulus;
          if (r < 0) r += cong.modulus;
          for (auto& sys : partial) sys.congruences.push_back(CongruenceAtom{e.coeffs, cong.modulus, r});
        }
      }
      for (auto& sys : partial) out.push_back(std::move(sys));
    }
  }
  return out;
}

std::vector<IntSystem> lower_closure(const EpsilonClosureSet& k,
                                     const std::vector<AffineExpr>& args,
                                     const std::vector<IntSystem>& bases) {
  std::size_t d = k.base_dimension();
  std::size_t m = k.cycle_images.size();
  std::vector<IntSystem> out;

  std::vector<IntSystem> nonempty = bases;
  if (k.counts_letters) {
    const AffineExpr& count = args[d + m];
    if (k.empty_word) {
      for (const auto& base : bases) {
        IntSystem sys = base;
        for (const auto& a : args) sys.rows.push_back(compare(a, Rel::Eq, 0));
        out.push_back(std::move(sys));
      }
    }
    for (auto& sys : nonempty) sys.rows.push_back(compare(count, Rel::Ge, 1));
  }

  std::vector<std::size_t> moving;  // cycles with a nonzero image
  for (std::size_t j = 0; j < m; ++j)
    if (!is_zero(k.cycle_images[j])) moving.push_back(j);

  std::vector<AffineExpr> base_args(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(d));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << moving.size()); ++mask) {
    std::vector<IntSystem> branch;
    std::vector<AffineExpr> shifted = base_args;
    for (const auto& base : nonempty) {
      IntSystem sys = base;
      shifted = base_args;
      for (std::size_t b = 0; b < moving.size(); ++b) {
        std::size_t j = moving[b];
        const AffineExpr& flag = args[d + j];
        if (mask & (std::uint64_t{1} << b)) {
          sys.rows.push_back(compare(flag, Rel::Ge, 1));
          std::size_t y = sys.add_var();
          sys.rows.push_back(LinearAtom{AffineExpr::variable(y).coeffs, Rel::Ge, 1});
          for (std::size_t c = 0; c < d; ++c)
            if (k.cycle_images[j][c] != 0)
              shifted[c].add(AffineExpr::variable(y, k.cycle_images[j][c]));
        } else {
          sys.rows.push_back(compare(flag, Rel::Eq, 0));
        }
      }
      branch.push_back(std::move(sys));
    }
    // The y variables get identical indices in every branch system, so the
    // shifted arguments are shared.
    for (auto& sys : lower_into(*k.base, shifted, branch)) out.push_back(std::move(sys));
  }
  return out;
}

std::vector<IntSystem> lower_into(const SemilinearSet& s, const std::vector<AffineExpr>& args,
                                  const std::vector<IntSystem>& bases) {
  if (args.size() != s.dimension())
    fail(ErrorKind::InvalidInput, "argument count does not match set dimension");
  const auto& node = s.node();
  if (const auto* e = std::get_if<ExplicitSemilinear>(&node)) return lower_explicit(*e, args, bases);
  if (const auto* c = std::get_if<ConstraintSet>(&node)) return lower_constraint(*c, args, bases);
  if (const auto* k = std::get_if<EpsilonClosureSet>(&node)) {
    // Branch systems share a variable layout only when every base has the
    // same number of variables; lower base by base to keep that true.
    std::vector<IntSystem> out;
    for (const auto& b : bases)
      for (auto& sys : lower_closure(*k, args, {b})) out.push_back(std::move(sys));
    return out;
  }
  if (const auto* p = std::get_if<ProductSet>(&node)) {
    std::vector<IntSystem> current = bases;
    std::size_t offset = 0;
    for (const auto& f : p->factors) {
      std::vector<AffineExpr> slice(args.begin() + static_cast<std::ptrdiff_t>(offset),
                                    args.begin() + static_cast<std::ptrdiff_t>(offset + f.dimension()));
      current = lower_into(f, slice, current);
      offset += f.dimension();
      if (current.empty()) break;
    }
    return current;
  }
  const auto& u = std::get<UnionSet>(node);
  std::vector<IntSystem> out;
  for (const auto& member : u.members)
    for (auto& sys : lower_into(member, args, bases)) out.push_back(std::move(sys));
  return out;
}

}  // namespace

std::vector<IntSystem> lower_membership(const SemilinearSet& s,
                                        const std::vector<AffineExpr>& args,
                                        const IntSystem& base) {
  return lower_into(s, args, {base});
}

}  // namespace parikh
