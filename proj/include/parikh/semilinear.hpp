#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "parikh/common.hpp"

namespace parikh {

enum class Rel { Lt, Le, Eq, Ge, Gt, Ne };

Rel negate(Rel r);
const char* rel_token(Rel r);
std::optional<Rel> parse_rel(const std::string& token);

/// coeffs . x  rel  rhs
struct LinearAtom {
  Vec coeffs;
  Rel rel = Rel::Eq;
  std::int64_t rhs = 0;

  bool holds(const Vec& x) const;
  friend bool operator==(const LinearAtom&, const LinearAtom&) = default;
};

/// coeffs . x  ==  residue  (mod modulus)
struct CongruenceAtom {
  Vec coeffs;
  std::int64_t modulus = 2;
  std::int64_t residue = 0;

  bool holds(const Vec& x) const;
  friend bool operator==(const CongruenceAtom&, const CongruenceAtom&) = default;
};

using Atom = std::variant<LinearAtom, CongruenceAtom>;
using Conjunction = std::vector<Atom>;

bool holds(const Atom& atom, const Vec& x);

/// offset + N-combinations of periods. Zero periods are dropped, duplicates
/// removed and the rest kept in a canonical order.
class LinearSet {
 public:
  LinearSet(Vec offset, std::vector<Vec> periods);

  std::size_t dimension() const { return offset_.size(); }
  const Vec& offset() const { return offset_; }
  const std::vector<Vec>& periods() const { return periods_; }
  bool contains(const Vec& v) const;

  friend bool operator==(const LinearSet&, const LinearSet&) = default;

 private:
  Vec offset_;
  std::vector<Vec> periods_;
};

class ExplicitSemilinear {
 public:
  explicit ExplicitSemilinear(std::size_t dim, std::vector<LinearSet> parts = {});

  /// N^dim
  static ExplicitSemilinear full(std::size_t dim);
  static ExplicitSemilinear singleton(const Vec& v);

  std::size_t dimension() const { return dim_; }
  const std::vector<LinearSet>& parts() const { return parts_; }

 private:
  std::size_t dim_;
  std::vector<LinearSet> parts_;
};

/// Quantifier-free formula in disjunctive normal form. An empty dnf is the
/// empty set; an empty conjunction is satisfied by every vector.
class ConstraintSet {
 public:
  ConstraintSet(std::size_t dim, std::vector<Conjunction> dnf);

  static ConstraintSet total(std::size_t dim);
  static ConstraintSet none(std::size_t dim);
  /// Single conjunction.
  static ConstraintSet of(std::size_t dim, Conjunction atoms);

  std::size_t dimension() const { return dim_; }
  const std::vector<Conjunction>& dnf() const { return dnf_; }

 private:
  std::size_t dim_;
  std::vector<Conjunction> dnf_;
};

class SemilinearSet;

/// Acceptance set produced by epsilon elimination: the first dimensions are
/// the base image, followed by one flag dimension per stored cycle. A vector
/// belongs to the set iff some y with (flag_j > 0 <=> y_j > 0) puts
/// base + sum y_j * cycle_j into the base set.
///
/// With `counts_letters` a trailing letter-count dimension is appended: a zero
/// count admits only the all-zero vector and only when `empty_word` is set.
struct EpsilonClosureSet {
  std::shared_ptr<const SemilinearSet> base;
  std::vector<Vec> cycle_images;
  bool counts_letters = false;
  bool empty_word = false;

  std::size_t base_dimension() const;
  std::size_t dimension() const;
};

/// Cartesian product; factor dimensions are concatenated.
struct ProductSet {
  std::vector<SemilinearSet> factors;
};

struct UnionSet {
  std::size_t dim = 0;
  std::vector<SemilinearSet> members;
};

class SemilinearSet {
 public:
  using Node =
      std::variant<ExplicitSemilinear, ConstraintSet, EpsilonClosureSet, ProductSet, UnionSet>;

  SemilinearSet(ExplicitSemilinear s) : node_(std::move(s)) {}
  SemilinearSet(ConstraintSet s) : node_(std::move(s)) {}
  SemilinearSet(EpsilonClosureSet s);
  SemilinearSet(ProductSet s);
  SemilinearSet(UnionSet s);

  std::size_t dimension() const;
  const Node& node() const { return node_; }

  /// Throws Error(Budget) if a solver call cannot decide the question.
  bool contains(const Vec& v) const;

 private:
  Node node_;
};

bool member_explicit(const ExplicitSemilinear& s, const Vec& v);
bool member_constraint(const ConstraintSet& k, const Vec& v);
bool member_closure(const EpsilonClosureSet& k, const Vec& x);

ExplicitSemilinear union_sets(const ExplicitSemilinear& s, const ExplicitSemilinear& t);
ExplicitSemilinear concat_sets(const ExplicitSemilinear& s, const ExplicitSemilinear& t);

enum class BoolOp { And, Or, Not };
ConstraintSet bool_constraint(BoolOp op, const ConstraintSet& k1,
                              const std::optional<ConstraintSet>& k2 = std::nullopt);
ConstraintSet constraint_and(const ConstraintSet& a, const ConstraintSet& b);
ConstraintSet constraint_or(const ConstraintSet& a, const ConstraintSet& b);
ConstraintSet constraint_not(const ConstraintSet& a);

/// Constraint set of dimension `before + k.dimension() + after` that applies
/// `k` to the middle block.
ConstraintSet pad_constraint(const ConstraintSet& k, std::size_t before, std::size_t after);

/// Product of sets, collapsing to a single explicit or constraint set when
/// all factors share that form.
SemilinearSet product_of(std::vector<SemilinearSet> factors);
SemilinearSet union_of(std::size_t dim, std::vector<SemilinearSet> members);

}  // namespace parikh
