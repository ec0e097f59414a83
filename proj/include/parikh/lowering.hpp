#pragma once

#include <vector>

#include "parikh/ilp.hpp"
#include "parikh/semilinear.hpp"

namespace parikh {

/// Affine expression over solver variables; coefficients beyond the vector
/// length are zero.
struct AffineExpr {
  Vec coeffs;
  std::int64_t constant = 0;

  static AffineExpr constant_of(std::int64_t c) { return AffineExpr{{}, c}; }
  static AffineExpr variable(std::size_t i, std::int64_t coeff = 1) {
    AffineExpr e;
    e.coeffs.assign(i + 1, 0);
    e.coeffs[i] = coeff;
    return e;
  }
  AffineExpr& add(const AffineExpr& other, std::int64_t scale = 1);
};

/// Expresses "args belongs to s" as a disjunction of systems, each extending
/// `base` with auxiliary variables and atoms. Disequalities are split.
std::vector<IntSystem> lower_membership(const SemilinearSet& s,
                                        const std::vector<AffineExpr>& args,
                                        const IntSystem& base);

}  // namespace parikh
