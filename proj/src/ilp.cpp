#include "parikh/ilp.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <optional>

namespace parikh {

namespace {

using Z = mpz_class;
using Q = mpq_class;

std::int64_t coeff_at(const Vec& c, std::size_t i) { return i < c.size() ? c[i] : 0; }

/// a.x <= b or a.x == b over integer variables.
struct IntRow {
  std::vector<Z> a;
  Z b;
};

struct Normalized {
  std::size_t num_vars = 0;  // including quotient variables
  std::vector<IntRow> equalities;
  std::vector<IntRow> inequalities;  // a.x <= b
};

IntRow to_row(const Vec& coeffs, std::size_t n, std::int64_t sign) {
  IntRow row;
  row.a.resize(n);
  for (std::size_t i = 0; i < n; ++i) row.a[i] = Z(static_cast<long>(sign * coeff_at(coeffs, i)));
  return row;
}

/// Assumes no Ne relations remain.
Normalized normalize(const IntSystem& sys) {
  Normalized out;
  std::size_t n = sys.num_vars + sys.congruences.size();
  out.num_vars = n;
  for (const auto& atom : sys.rows) {
    switch (atom.rel) {
      case Rel::Eq: {
        auto r = to_row(atom.coeffs, n, 1);
        r.b = Z(static_cast<long>(atom.rhs));
        out.equalities.push_back(std::move(r));
        break;
      }
      case Rel::Le:
      case Rel::Lt: {
        auto r = to_row(atom.coeffs, n, 1);
        r.b = Z(static_cast<long>(atom.rhs)) - (atom.rel == Rel::Lt ? 1 : 0);
        out.inequalities.push_back(std::move(r));
        break;
      }
      case Rel::Ge:
      case Rel::Gt: {
        auto r = to_row(atom.coeffs, n, -1);
        r.b = -Z(static_cast<long>(atom.rhs)) - (atom.rel == Rel::Gt ? 1 : 0);
        out.inequalities.push_back(std::move(r));
        break;
      }
      case Rel::Ne:
        fail(ErrorKind::InvariantViolation, "unsplit disequality reached the solver");
    }
  }
  // a.x == r (mod m) becomes a'.x - m*q == r with a' = a mod m in [0, m):
  // the left side is then nonnegative, so q >= 0 loses nothing.
  for (std::size_t k = 0; k < sys.congruences.size(); ++k) {
    const auto& c = sys.congruences[k];
    IntRow r;
    r.a.resize(n);
    for (std::size_t i = 0; i < sys.num_vars; ++i) {
      std::int64_t v = coeff_at(c.coeffs, i) % c.modulus;
      if (v < 0) v += c.modulus;
      r.a[i] = Z(static_cast<long>(v));
    }
    r.a[sys.num_vars + k] = Z(static_cast<long>(-c.modulus));
    r.b = Z(static_cast<long>(c.residue));
    out.equalities.push_back(std::move(r));
  }
  if (sys.positive_sum) {
    IntRow r;
    r.a.assign(n, Z(0));
    for (std::size_t i = 0; i < sys.num_vars; ++i) r.a[i] = -1;
    r.b = -1;
    out.inequalities.push_back(std::move(r));
  }
  return out;
}

Z bound_of(const Normalized& sys) {
  Z amax = 0;
  auto scan = [&](const IntRow& r) {
    for (const auto& x : r.a) amax = std::max(amax, Z(abs(x)));
    amax = std::max(amax, Z(abs(r.b)));
  };
  for (const auto& r : sys.equalities) scan(r);
  for (const auto& r : sys.inequalities) scan(r);
  std::size_t m = sys.equalities.size() + sys.inequalities.size();
  std::size_t n = sys.num_vars + sys.inequalities.size();
  Z base = Z(static_cast<unsigned long>(m + 1)) * (amax + 1);
  Z power;
  mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), 2 * m + 1);
  return Z(static_cast<unsigned long>(n + 1)) * power;
}

/// x = x0 + N z for all integer solutions of the equalities, or nullopt.
struct Lattice {
  std::vector<Z> x0;
  std::vector<std::vector<Z>> basis;  // columns of N, each of size n
};

std::optional<Lattice> solve_equalities(const std::vector<IntRow>& eqs, std::size_t n) {
  std::size_t m = eqs.size();
  std::vector<std::vector<Z>> a(m, std::vector<Z>(n));
  for (std::size_t i = 0; i < m; ++i) a[i] = eqs[i].a;
  std::vector<std::vector<Z>> u(n, std::vector<Z>(n, Z(0)));  // u[row][col]
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

  auto column_combine = [&](std::size_t c1, std::size_t c2, const Z& s, const Z& t, const Z& p,
                            const Z& q) {
    // new c1 = s*c1 + t*c2 ; new c2 = p*c1 + q*c2
    for (std::size_t i = 0; i < m; ++i) {
      Z x = a[i][c1], y = a[i][c2];
      a[i][c1] = s * x + t * y;
      a[i][c2] = p * x + q * y;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Z x = u[i][c1], y = u[i][c2];
      u[i][c1] = s * x + t * y;
      u[i][c2] = p * x + q * y;
    }
  };

  std::size_t col = 0;
  std::vector<std::size_t> pivot_row;  // for pivot column j
  std::vector<std::size_t> dependent;
  for (std::size_t i = 0; i < m; ++i) {
    if (col == n) {
      dependent.push_back(i);
      continue;
    }
    for (std::size_t c = col + 1; c < n; ++c) {
      if (a[i][c] == 0) continue;
      if (a[i][col] == 0) {
        column_combine(col, c, 0, 1, 1, 0);  // swap
        continue;
      }
      Z g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[i][col].get_mpz_t(),
                 a[i][c].get_mpz_t());
      Z p = -a[i][c] / g;
      Z q = a[i][col] / g;
      column_combine(col, c, s, t, p, q);
    }
    if (a[i][col] == 0) {
      dependent.push_back(i);
      continue;
    }
    if (a[i][col] < 0) column_combine(col, col, -1, 0, -1, 0);
    pivot_row.push_back(i);
    ++col;
  }

  std::vector<Z> y(col);
  for (std::size_t j = 0; j < col; ++j) {
    std::size_t i = pivot_row[j];
    Z acc = eqs[i].b;
    for (std::size_t k = 0; k < j; ++k) acc -= a[i][k] * y[k];
    if (acc % a[i][j] != 0) return std::nullopt;
    y[j] = acc / a[i][j];
  }
  for (std::size_t i : dependent) {
    Z acc = 0;
    for (std::size_t k = 0; k < col; ++k) acc += a[i][k] * y[k];
    if (acc != eqs[i].b) return std::nullopt;
  }
  Lattice lat;
  lat.x0.assign(n, Z(0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < col; ++k) lat.x0[r] += u[r][k] * y[k];
  for (std::size_t k = col; k < n; ++k) {
    std::vector<Z> v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = u[r][k];
    lat.basis.push_back(std::move(v));
  }
  return lat;
}

enum class LpStatus { Optimal, Infeasible, Budget };

/// Dense two-phase simplex with Bland's rule for
///   minimize c.z  subject to  G z <= h,  z free.
class Simplex {
 public:
  Simplex(const std::vector<IntRow>& rows, const std::vector<Z>& cost, StepBudget& budget)
      : r_(cost.size()), m_(rows.size()), budget_(budget) {
    std::size_t n_art = 0;
    for (const auto& row : rows)
      if (row.b < 0) ++n_art;
    art_begin_ = 2 * r_ + m_;
    n_ = art_begin_ + n_art;
    t_.assign(m_, std::vector<Q>(n_ + 1, Q(0)));
    basis_.resize(m_);
    std::size_t art = art_begin_;
    for (std::size_t i = 0; i < m_; ++i) {
      int sign = rows[i].b < 0 ? -1 : 1;
      for (std::size_t j = 0; j < r_; ++j) {
        t_[i][2 * j] = sign * rows[i].a[j];
        t_[i][2 * j + 1] = -sign * rows[i].a[j];
      }
      t_[i][2 * r_ + i] = sign;
      t_[i][n_] = sign * rows[i].b;
      if (sign < 0) {
        t_[i][art] = 1;
        basis_[i] = art++;
      } else {
        basis_[i] = 2 * r_ + i;
      }
    }
    cost_.assign(n_, Q(0));
    for (std::size_t j = 0; j < r_; ++j) {
      cost_[2 * j] = cost[j];
      cost_[2 * j + 1] = -cost[j];
    }
  }

  LpStatus solve(std::vector<Q>& z) {
    if (n_ > art_begin_) {
      std::vector<Q> phase1(n_, Q(0));
      for (std::size_t j = art_begin_; j < n_; ++j) phase1[j] = 1;
      auto st = run(phase1, n_);
      if (st != LpStatus::Optimal) return st;
      if (obj_[n_] != 0) return LpStatus::Infeasible;
      // Drive remaining artificials out of the basis where possible.
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] < art_begin_) continue;
        for (std::size_t j = 0; j < art_begin_; ++j) {
          if (t_[i][j] != 0) {
            pivot(i, j);
            break;
          }
        }
      }
    }
    auto st = run(cost_, art_begin_);
    if (st != LpStatus::Optimal) return st;
    std::vector<Q> value(n_, Q(0));
    for (std::size_t i = 0; i < m_; ++i) value[basis_[i]] = t_[i][n_];
    z.assign(r_, Q(0));
    for (std::size_t j = 0; j < r_; ++j) z[j] = value[2 * j] - value[2 * j + 1];
    return LpStatus::Optimal;
  }

 private:
  /// obj_[j] holds reduced costs, obj_[n_] holds the current objective value.
  void price(const std::vector<Q>& c) {
    obj_.assign(n_ + 1, Q(0));
    for (std::size_t j = 0; j < n_; ++j) obj_[j] = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Q& cb = c[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= n_; ++j) obj_[j] -= cb * t_[i][j];
    }
    obj_[n_] = -obj_[n_];
  }

  LpStatus run(const std::vector<Q>& c, std::size_t allowed) {
    price(c);
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (obj_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return LpStatus::Optimal;
      std::size_t leave = m_;
      Q best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Q ratio = t_[i][n_] / t_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      // Bounded by construction (the caller always includes the sum bound),
      // so an unbounded ray means the relaxation is degenerate; treat the
      // current point as optimal for the purpose of branching.
      if (leave == m_) return LpStatus::Optimal;
      if (!budget_.consume()) return LpStatus::Budget;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    Q p = t_[row][col];
    for (auto& x : t_[row]) x /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || t_[i][col] == 0) continue;
      Q f = t_[i][col];
      for (std::size_t j = 0; j <= n_; ++j) t_[i][j] -= f * t_[row][j];
    }
    if (!obj_.empty() && obj_[col] != 0) {
      Q f = obj_[col];
      for (std::size_t j = 0; j < n_; ++j) obj_[j] -= f * t_[row][j];
      obj_[n_] += f * t_[row][n_];
    }
    basis_[row] = col;
  }

  std::size_t r_, m_, n_ = 0, art_begin_ = 0;
  StepBudget& budget_;
  std::vector<std::vector<Q>> t_;
  std::vector<Q> obj_;
  std::vector<Q> cost_;
  std::vector<std::size_t> basis_;
};

/// Divide by the content of the row and round the right-hand side down.
/// Returns false if the row is a contradiction 0 <= negative.
bool tighten(IntRow& row) {
  Z g = 0;
  for (const auto& x : row.a) g = gcd(g, x);
  if (g == 0) return row.b >= 0;
  if (g != 1) {
    for (auto& x : row.a) x /= g;
    mpz_fdiv_q(row.b.get_mpz_t(), row.b.get_mpz_t(), g.get_mpz_t());
  }
  return true;
}

Z floor_q(const Q& q) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

SolveResult solve_convex(const IntSystem& sys, StepBudget& budget) {
  SolveResult result;
  Normalized ns = normalize(sys);
  std::size_t n = ns.num_vars;
  Z bound = bound_of(ns);

  auto lattice = solve_equalities(ns.equalities, n);
  if (!lattice) {
    result.status = SolveStatus::Infeasible;
    return result;
  }
  std::size_t r = lattice->basis.size();

  // Constraints in z-space.
  std::vector<IntRow> rows;
  auto add_x_row = [&](const std::vector<Z>& a, const Z& b) {
    IntRow zr;
    zr.a.assign(r, Z(0));
    Z rhs = b;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      rhs -= a[i] * lattice->x0[i];
      for (std::size_t k = 0; k < r; ++k) zr.a[k] += a[i] * lattice->basis[k][i];
    }
    zr.b = rhs;
    rows.push_back(std::move(zr));
  };
  for (const auto& in : ns.inequalities) add_x_row(in.a, in.b);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Z> a(n, Z(0));
    a[i] = -1;
    add_x_row(a, Z(0));
  }
  {
    std::vector<Z> a(n, Z(1));
    add_x_row(a, bound * static_cast<unsigned long>(n));
  }
  for (auto& row : rows) {
    if (!tighten(row)) {
      result.status = SolveStatus::Infeasible;
      return result;
    }
  }
  // Rows without z-dependence are already verified by tighten().
  std::erase_if(rows, [](const IntRow& row) {
    return std::all_of(row.a.begin(), row.a.end(), [](const Z& x) { return x == 0; });
  });

  std::vector<Z> cost(r, Z(0));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < n; ++i) cost[k] += lattice->basis[k][i];

  auto finish = [&](const std::vector<Z>& z) {
    result.status = SolveStatus::Feasible;
    result.values.assign(sys.num_vars, 0);
    for (std::size_t i = 0; i < sys.num_vars; ++i) {
      Z x = lattice->x0[i];
      for (std::size_t k = 0; k < r; ++k) x += lattice->basis[k][i] * z[k];
      if (!x.fits_slong_p()) fail(ErrorKind::Budget, "solution value exceeds 64 bits");
      result.values[i] = x.get_si();
    }
    return result;
  };

  if (r == 0) return finish({});

  std::vector<std::vector<IntRow>> stack;
  stack.emplace_back();
  while (!stack.empty()) {
    if (!budget.consume()) {
      result.status = SolveStatus::Unknown;
      return result;
    }
    std::vector<IntRow> extra = std::move(stack.back());
    stack.pop_back();
    std::vector<IntRow> all = rows;
    all.insert(all.end(), extra.begin(), extra.end());
    Simplex lp(all, cost, budget);
    std::vector<Q> z;
    auto st = lp.solve(z);
    if (st == LpStatus::Budget) {
      result.status = SolveStatus::Unknown;
      return result;
    }
    if (st == LpStatus::Infeasible) continue;
    std::size_t frac = r;
    for (std::size_t k = 0; k < r; ++k) {
      if (z[k].get_den() != 1) {
        frac = k;
        break;
      }
    }
    if (frac == r) {
      std::vector<Z> zi(r);
      for (std::size_t k = 0; k < r; ++k) zi[k] = z[k].get_num();
      return finish(zi);
    }
    Z lo = floor_q(z[frac]);
    IntRow up;  // -z_k <= -(lo+1)
    up.a.assign(r, Z(0));
    up.a[frac] = -1;
    up.b = -(lo + 1);
    IntRow down;  // z_k <= lo
    down.a.assign(r, Z(0));
    down.a[frac] = 1;
    down.b = lo;
    auto with_up = extra;
    with_up.push_back(std::move(up));
    extra.push_back(std::move(down));
    stack.push_back(std::move(with_up));
    stack.push_back(std::move(extra));
  }
  result.status = SolveStatus::Infeasible;
  return result;
}

SolveResult solve_split(IntSystem& sys, std::size_t from, StepBudget& budget) {
  for (std::size_t i = from; i < sys.rows.size(); ++i) {
    if (sys.rows[i].rel != Rel::Ne) continue;
    LinearAtom saved = sys.rows[i];
    bool unknown = false;
    for (Rel side : {Rel::Lt, Rel::Gt}) {
      sys.rows[i].rel = side;
      auto res = solve_split(sys, i + 1, budget);
      if (res.status == SolveStatus::Feasible) {
        sys.rows[i] = saved;
        return res;
      }
      if (res.status == SolveStatus::Unknown) unknown = true;
    }
    sys.rows[i] = saved;
    SolveResult out;
    out.status = unknown ? SolveStatus::Unknown : SolveStatus::Infeasible;
    return out;
  }
  return solve_convex(sys, budget);
}

}  // namespace

bool IntSystem::satisfied_by(const std::vector<std::int64_t>& x) const {
  Vec v(x.begin(), x.end());
  v.resize(num_vars, 0);
  for (auto c : v)
    if (c < 0) return false;
  auto padded = [&](Vec c) {
    c.resize(num_vars, 0);
    return c;
  };
  for (const auto& r : rows) {
    LinearAtom a = r;
    a.coeffs = padded(a.coeffs);
    if (!a.holds(v)) return false;
  }
  for (const auto& c : congruences) {
    CongruenceAtom a = c;
    a.coeffs = padded(a.coeffs);
    if (!a.holds(v)) return false;
  }
  if (positive_sum) {
    std::int64_t s = 0;
    for (auto c : v) s += c;
    if (s < 1) return false;
  }
  return true;
}

SolveResult ilp_solve(const IntSystem& sys, StepBudget& budget) {
  for (const auto& r : sys.rows)
    if (r.coeffs.size() > sys.num_vars) fail(ErrorKind::InvalidInput, "atom references unknown variable");
  for (const auto& c : sys.congruences) {
    if (c.coeffs.size() > sys.num_vars) fail(ErrorKind::InvalidInput, "atom references unknown variable");
    if (c.modulus < 1) fail(ErrorKind::InvalidInput, "modulus must be positive");
  }
  IntSystem work = sys;
  return solve_split(work, 0, budget);
}

SolveResult ilp_solve(const IntSystem& sys, std::uint64_t budget_steps) {
  StepBudget budget(budget_steps);
  return ilp_solve(sys, budget);
}

std::string solution_bound(const IntSystem& sys) {
  IntSystem work = sys;
  for (auto& r : work.rows)
    if (r.rel == Rel::Ne) r.rel = Rel::Lt;
  return bound_of(normalize(work)).get_str();
}

}  // namespace parikh
