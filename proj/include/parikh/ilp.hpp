#pragma once

#include <string>
#include <vector>

#include "parikh/common.hpp"
#include "parikh/semilinear.hpp"

namespace parikh {

/// Conjunction of linear atoms and congruences over nonnegative integer
/// variables 0..num_vars-1. Coefficient vectors shorter than num_vars are
/// implicitly zero-padded.
struct IntSystem {
  std::size_t num_vars = 0;
  std::vector<LinearAtom> rows;
  std::vector<CongruenceAtom> congruences;
  /// Require the sum of all variables to be at least one.
  bool positive_sum = false;

  std::size_t add_var() { return num_vars++; }
  std::size_t add_vars(std::size_t n) {
    auto first = num_vars;
    num_vars += n;
    return first;
  }
  bool satisfied_by(const std::vector<std::int64_t>& x) const;
};

enum class SolveStatus { Feasible, Infeasible, Unknown };

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  std::vector<std::int64_t> values;
};

/// Complete for nonnegative integer solutions. Branch and bound over an LP
/// relaxation after eliminating equalities over the integers; every variable
/// is confined to the small-solution bound of `solution_bound`. Each simplex
/// pivot and each search node consumes one budget step.
SolveResult ilp_solve(const IntSystem& sys, StepBudget& budget);
SolveResult ilp_solve(const IntSystem& sys, std::uint64_t budget_steps = 1'000'000);

/// B = (n+1) * ((m+1) * (1 + a))^(2m+1) where, after congruences become
/// equalities with one quotient variable each and inequalities gain slacks,
/// n counts variables, m counts rows and a is the largest absolute
/// coefficient or right-hand side. If the system has a solution it has one
/// with every variable at most B. Returned in decimal.
std::string solution_bound(const IntSystem& sys);

}  // namespace parikh
