#include <doctest.h>

#include <random>

#include "parikh/semilinear.hpp"
#include "support/oracles.hpp"

using namespace parikh;

namespace {

ExplicitSemilinear ex1_set() {
  return ExplicitSemilinear(2, {LinearSet({0, 0}, {{1, 1}}), LinearSet({0, 0}, {{1, 2}})});
}

ConstraintSet less_than() { return ConstraintSet::of(2, {LinearAtom{{1, -1}, Rel::Lt, 0}}); }

/// Every vector of the given dimension with entries in [0, hi].
std::vector<Vec> box(std::size_t dim, std::int64_t hi) {
  std::vector<Vec> out;
  Vec v(dim, 0);
  for (;;) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < dim && v[i] == hi) v[i++] = 0;
    if (i == dim) return out;
    ++v[i];
  }
}

ExplicitSemilinear random_explicit(std::mt19937& rng, std::size_t dim) {
  std::uniform_int_distribution<int> entry(0, 4);
  std::uniform_int_distribution<int> count(0, 2);
  std::vector<LinearSet> parts;
  for (int p = count(rng) + 1; p > 0; --p) {
    Vec offset(dim);
    for (auto& x : offset) x = entry(rng);
    std::vector<Vec> periods;
    for (int k = count(rng); k > 0; --k) {
      Vec per(dim);
      for (auto& x : per) x = entry(rng);
      periods.push_back(per);
    }
    parts.emplace_back(offset, periods);
  }
  return ExplicitSemilinear(dim, parts);
}

ConstraintSet random_constraint(std::mt19937& rng, std::size_t dim) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> rel(0, 5);
  std::uniform_int_distribution<int> small(0, 2);
  std::vector<Conjunction> dnf;
  for (int d = small(rng) + 1; d > 0; --d) {
    Conjunction c;
    for (int k = small(rng) + 1; k > 0; --k) {
      Vec coeffs(dim);
      for (auto& x : coeffs) x = coef(rng);
      if (small(rng) == 0) c.push_back(CongruenceAtom{coeffs, 3, small(rng)});
      else c.push_back(LinearAtom{coeffs, static_cast<Rel>(rel(rng)), coef(rng)});
    }
    dnf.push_back(c);
  }
  return ConstraintSet(dim, dnf);
}

}  // namespace

TEST_CASE("explicit membership") {
  auto s = ex1_set();
  CHECK(member_explicit(s, {3, 6}));
  CHECK(member_explicit(s, {0, 0}));
  CHECK_FALSE(member_explicit(s, {2, 3}));
  CHECK_FALSE(oracle::linear_combination_member(s, {2, 3}, 3));
}

TEST_CASE("zero periods are dropped") {
  LinearSet l({1}, {{0}, {2}, {2}});
  CHECK(l.periods() == std::vector<Vec>{{2}});
}

TEST_CASE("constraint membership") {
  CHECK(member_constraint(less_than(), {1, 2}));
  CHECK_FALSE(member_constraint(less_than(), {2, 2}));
  auto mod4 = ConstraintSet::of(3, {CongruenceAtom{{1, 0, 0}, 4, 0}});
  CHECK(member_constraint(mod4, {0, 7, 9}));
  CHECK(member_constraint(mod4, {8, 1, 1}));
  CHECK_FALSE(member_constraint(mod4, {2, 0, 0}));
}

TEST_CASE("union of explicit sets") {
  ExplicitSemilinear nn(2, {LinearSet({0, 0}, {{1, 1}})});
  ExplicitSemilinear n2n(2, {LinearSet({0, 0}, {{1, 2}})});
  CHECK(member_explicit(union_sets(nn, n2n), {1, 2}));
  ExplicitSemilinear shifted(2, {LinearSet({0, 1}, {{1, 1}})});
  auto u = union_sets(nn, shifted);
  CHECK(member_explicit(u, {2, 3}));
  CHECK(member_explicit(u, {3, 3}));
  ExplicitSemilinear none(2);
  for (const auto& v : box(2, 6)) CHECK(member_explicit(union_sets(nn, none), v) == member_explicit(nn, v));
}

TEST_CASE("concatenation of explicit sets") {
  ExplicitSemilinear nn(2, {LinearSet({0, 0}, {{1, 1}})});
  CHECK(member_explicit(concat_sets(nn, ExplicitSemilinear::full(1)), {5, 5, 9}));
  CHECK_FALSE(member_explicit(concat_sets(nn, ExplicitSemilinear::full(1)), {5, 4, 9}));
  ExplicitSemilinear none(2);
  for (const auto& v : box(3, 4)) CHECK_FALSE(member_explicit(concat_sets(none, ExplicitSemilinear::full(1)), v));
}

TEST_CASE("boolean operations on constraint sets") {
  auto eq = ConstraintSet::of(2, {LinearAtom{{1, -1}, Rel::Eq, 0}});
  CHECK(member_constraint(constraint_not(eq), {1, 2}));
  CHECK(member_constraint(constraint_not(eq), {2, 1}));
  CHECK_FALSE(member_constraint(constraint_not(eq), {2, 2}));
  auto conj = bool_constraint(BoolOp::And, less_than(), ConstraintSet::of(2, {CongruenceAtom{{1, 0}, 4, 1}}));
  CHECK(member_constraint(conj, {1, 5}));
  CHECK_FALSE(member_constraint(conj, {2, 5}));
  auto total = bool_constraint(BoolOp::Or, less_than(), bool_constraint(BoolOp::Not, less_than()));
  for (const auto& v : box(2, 7)) CHECK(member_constraint(total, v));
}

TEST_CASE("padding applies a constraint to the middle block") {
  auto k = pad_constraint(less_than(), 1, 2);
  CHECK(k.dimension() == 5);
  CHECK(member_constraint(k, {9, 1, 2, 9, 9}));
  CHECK_FALSE(member_constraint(k, {0, 2, 1, 0, 0}));
}

TEST_CASE("property: union is disjunction of memberships") {
  std::mt19937 rng(7);
  for (int round = 0; round < 30; ++round) {
    std::size_t dim = 1 + round % 3;
    auto s = random_explicit(rng, dim);
    auto t = random_explicit(rng, dim);
    auto u = union_sets(s, t);
    for (const auto& v : box(dim, dim == 3 ? 5 : 8))
      REQUIRE(member_explicit(u, v) == (member_explicit(s, v) || member_explicit(t, v)));
  }
}

TEST_CASE("property: concatenation is conjunction of memberships") {
  std::mt19937 rng(11);
  for (int round = 0; round < 20; ++round) {
    auto s = random_explicit(rng, 1 + round % 2);
    auto t = random_explicit(rng, 1);
    auto c = concat_sets(s, t);
    for (const auto& v : box(s.dimension() + 1, 6)) {
      Vec left(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(s.dimension()));
      Vec right(v.begin() + static_cast<std::ptrdiff_t>(s.dimension()), v.end());
      REQUIRE(member_explicit(c, v) == (member_explicit(s, left) && member_explicit(t, right)));
    }
  }
}

TEST_CASE("property: complement flips membership") {
  std::mt19937 rng(3);
  for (int round = 0; round < 40; ++round) {
    auto k = random_constraint(rng, 2);
    auto n = constraint_not(k);
    for (const auto& v : box(2, 7)) REQUIRE(member_constraint(n, v) != member_constraint(k, v));
  }
}

TEST_CASE("property: explicit membership matches bounded combination search") {
  std::mt19937 rng(5);
  for (int round = 0; round < 30; ++round) {
    auto s = random_explicit(rng, 2);
    // periods have entries <= 4, so vectors <= 8 need coefficients <= 8
    for (const auto& v : box(2, 8))
      REQUIRE(member_explicit(s, v) == oracle::linear_combination_member(s, v, 8));
  }
}

TEST_CASE("product and union forms") {
  auto p = product_of({SemilinearSet(ExplicitSemilinear::singleton({1})), SemilinearSet(less_than())});
  CHECK(p.dimension() == 3);
  CHECK(p.contains({1, 0, 1}));
  CHECK_FALSE(p.contains({2, 0, 1}));
  CHECK_FALSE(p.contains({1, 1, 1}));
  auto u = union_of(2, {SemilinearSet(ex1_set()), SemilinearSet(less_than())});
  CHECK(u.contains({1, 5}));
  CHECK(u.contains({2, 2}));
  CHECK_FALSE(u.contains({3, 2}));
}

TEST_CASE("closure set couples flags and cycles") {
  EpsilonClosureSet k{std::make_shared<SemilinearSet>(ConstraintSet::of(1, {LinearAtom{{1}, Rel::Eq, 3}})),
                      {{1}}};
  CHECK(member_closure(k, {1, 1}));
  CHECK_FALSE(member_closure(k, {5, 0}));
  CHECK(member_closure(k, {3, 0}));
  CHECK_FALSE(member_closure(k, {4, 1}));
  EpsilonClosureSet plain{std::make_shared<SemilinearSet>(ExplicitSemilinear::singleton({2})), {}};
  CHECK(member_closure(plain, {2}));
  CHECK_FALSE(member_closure(plain, {1}));
}
