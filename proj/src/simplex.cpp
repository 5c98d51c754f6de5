#include "doxa/simplex.hpp"

#include <stdexcept>

namespace doxa {

namespace {

// Equality-form tableau. Column layout: original vars, then one slack per
// inequality row, then artificials for rows without a natural basic column.
struct Tableau {
  int num_original;
  int num_structural;  // original + slacks
  int total_cols;
  std::vector<std::vector<Rational>> row;  // m rows, total_cols + 1 (rhs last)
  std::vector<Rational> cost;              // reduced-cost row, total_cols entries
  Rational value = 0;
  std::vector<int> basis;                  // per row: basic column
  std::vector<int> identity_col;           // per row: column holding B^-1 e_i
  std::vector<bool> artificial;            // per column

  int rows() const { return static_cast<int>(row.size()); }
  Rational& rhs(int r) { return row[r][total_cols]; }
  const Rational& rhs(int r) const { return row[r][total_cols]; }
};

void pivot(Tableau& t, int pr, int pc) {
  Rational inv = 1 / t.row[pr][pc];
  for (auto& v : t.row[pr]) v *= inv;
  for (int r = 0; r < t.rows(); ++r) {
    if (r == pr || sign(t.row[r][pc]) == 0) continue;
    Rational f = t.row[r][pc];
    for (int c = 0; c <= t.total_cols; ++c) t.row[r][c] -= f * t.row[pr][c];
  }
  if (sign(t.cost[pc]) != 0) {
    Rational f = t.cost[pc];
    for (int c = 0; c < t.total_cols; ++c) t.cost[c] -= f * t.row[pr][c];
    t.value += f * t.rhs(pr);
  }
  t.basis[pr] = pc;
}

// Bland: entering = lowest-index improving column; leaving = smallest ratio,
// ties by lowest basic column. Returns false on unboundedness.
bool run_simplex(Tableau& t, const std::vector<bool>& banned) {
  for (;;) {
    int enter = -1;
    for (int c = 0; c < t.total_cols; ++c) {
      if (!banned[c] && sign(t.cost[c]) > 0) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    Rational best_ratio = 0;
    for (int r = 0; r < t.rows(); ++r) {
      if (sign(t.row[r][enter]) <= 0) continue;
      Rational ratio = t.rhs(r) / t.row[r][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && t.basis[r] < t.basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return false;
    pivot(t, leave, enter);
  }
}

void price_out_basis(Tableau& t) {
  for (int r = 0; r < t.rows(); ++r) {
    int b = t.basis[r];
    if (sign(t.cost[b]) == 0) continue;
    Rational f = t.cost[b];
    for (int c = 0; c < t.total_cols; ++c) t.cost[c] -= f * t.row[r][c];
    t.value += f * t.rhs(r);
  }
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const int m = static_cast<int>(lp.constraints.size());
  if (static_cast<int>(lp.objective.size()) != lp.num_vars) {
    throw std::logic_error("objective length mismatch");
  }

  // Normalize rows to rhs >= 0, remembering flips so certificates can be
  // reported against the caller's rows.
  std::vector<LinearConstraint> rows = lp.constraints;
  std::vector<bool> flipped(m, false);
  for (int r = 0; r < m; ++r) {
    auto& c = rows[r];
    if (static_cast<int>(c.coeffs.size()) != lp.num_vars) {
      throw std::logic_error("constraint length mismatch");
    }
    if (sign(c.rhs) < 0) {
      flipped[r] = true;
      for (auto& v : c.coeffs) v = -v;
      c.rhs = -c.rhs;
      if (c.rel == Relation::Le) {
        c.rel = Relation::Ge;
      } else if (c.rel == Relation::Ge) {
        c.rel = Relation::Le;
      }
    }
  }
  int num_slacks = 0;
  int num_artificials = 0;
  for (const auto& c : rows) {
    if (c.rel != Relation::Eq) ++num_slacks;
    if (c.rel != Relation::Le) ++num_artificials;
  }

  Tableau t;
  t.num_original = lp.num_vars;
  t.num_structural = lp.num_vars + num_slacks;
  t.total_cols = t.num_structural + num_artificials;
  t.row.assign(m, std::vector<Rational>(t.total_cols + 1));
  t.cost.assign(t.total_cols, 0);
  t.basis.assign(m, -1);
  t.identity_col.assign(m, -1);
  t.artificial.assign(t.total_cols, false);

  int slack_at = lp.num_vars;
  int art_at = t.num_structural;
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < lp.num_vars; ++j) t.row[r][j] = rows[r].coeffs[j];
    t.rhs(r) = rows[r].rhs;
    if (rows[r].rel == Relation::Le) {
      t.row[r][slack_at] = 1;
      t.basis[r] = slack_at;
      t.identity_col[r] = slack_at;
      ++slack_at;
    } else {
      if (rows[r].rel == Relation::Ge) {
        t.row[r][slack_at] = -1;
        ++slack_at;
      }
      t.row[r][art_at] = 1;
      t.basis[r] = art_at;
      t.identity_col[r] = art_at;
      t.artificial[art_at] = true;
      ++art_at;
    }
  }

  std::vector<bool> none(t.total_cols, false);

  if (num_artificials > 0) {
    for (int c = 0; c < t.total_cols; ++c) t.cost[c] = t.artificial[c] ? Rational(-1) : Rational(0);
    t.value = 0;
    price_out_basis(t);
    if (!run_simplex(t, none)) throw std::logic_error("phase-1 unbounded");
    if (sign(t.value) < 0) {
      // y = (phase-1 basic costs) . B^-1, read through the identity columns.
      LpResult res;
      res.status = LpStatus::Infeasible;
      res.farkas.assign(m, 0);
      for (int i = 0; i < m; ++i) {
        Rational y = 0;
        for (int r = 0; r < t.rows(); ++r) {
          if (t.artificial[t.basis[r]]) y -= t.row[r][t.identity_col[i]];
        }
        res.farkas[i] = flipped[i] ? Rational(-y) : y;
      }
      return res;
    }
    // Drive any basic artificials out (all-zero rows are redundant and may
    // keep theirs at level zero).
    for (int r = 0; r < t.rows(); ++r) {
      if (!t.artificial[t.basis[r]]) continue;
      for (int c = 0; c < t.num_structural; ++c) {
        if (sign(t.row[r][c]) != 0) {
          pivot(t, r, c);
          break;
        }
      }
    }
  }

  for (int c = 0; c < t.total_cols; ++c) {
    t.cost[c] = c < lp.num_vars ? lp.objective[c] : Rational(0);
  }
  t.value = 0;
  price_out_basis(t);
  if (!run_simplex(t, t.artificial)) {
    LpResult res;
    res.status = LpStatus::Unbounded;
    return res;
  }

  LpResult res;
  res.status = LpStatus::Optimal;
  res.objective_value = t.value;
  res.solution.assign(lp.num_vars, 0);
  for (int r = 0; r < t.rows(); ++r) {
    if (t.basis[r] < lp.num_vars) res.solution[t.basis[r]] = t.rhs(r);
  }
  return res;
}

bool verify_farkas(const LinearProgram& lp, const std::vector<Rational>& y) {
  if (y.size() != lp.constraints.size()) return false;
  // y.b < 0, y.A >= 0 on every original column, and slack-column signs:
  // y_r >= 0 on Le rows, y_r <= 0 on Ge rows. Any x >= 0 satisfying the
  // system would give 0 <= (y.A).x = y.b < 0.
  Rational yb = 0;
  for (size_t r = 0; r < lp.constraints.size(); ++r) yb += y[r] * lp.constraints[r].rhs;
  if (sign(yb) >= 0) return false;
  for (int j = 0; j < lp.num_vars; ++j) {
    Rational ya = 0;
    for (size_t r = 0; r < lp.constraints.size(); ++r) {
      ya += y[r] * lp.constraints[r].coeffs[j];
    }
    if (sign(ya) < 0) return false;
  }
  for (size_t r = 0; r < lp.constraints.size(); ++r) {
    if (lp.constraints[r].rel == Relation::Le && sign(y[r]) < 0) return false;
    if (lp.constraints[r].rel == Relation::Ge && sign(y[r]) > 0) return false;
  }
  return true;
}

}  // namespace doxa
