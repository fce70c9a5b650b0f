#pragma once

// Dense two-phase simplex over the rationals with Bland's rule. Sized for cone
// membership questions with a handful of generators; no attempt at sparsity.

#include <cstddef>
#include <optional>
#include <vector>

#include "quasihyp/errors.hpp"
#include "quasihyp/rational.hpp"

namespace quasihyp {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value;  // optimum of the objective when status == optimal
  Vector x;        // an optimal vertex when status == optimal
};

namespace detail {

class Tableau {
 public:
  Tableau(std::vector<Vector> rows, std::vector<std::size_t> basis, std::size_t cols)
      : rows_(std::move(rows)), basis_(std::move(basis)), cols_(cols) {}

  /// Maximises obj·x over columns with allowed[j]. Returns false when unbounded.
  bool maximize(const Vector& obj, const std::vector<bool>& allowed) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < cols_ && !enter; ++j) {
        if (!allowed[j]) continue;
        Rational reduced = obj[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) reduced -= obj[basis_[i]] * rows_[i][j];
        if (sgn(reduced) > 0) enter = j;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (sgn(rows_[i][*enter]) <= 0) continue;
        Rational ratio = rows_[i][cols_] / rows_[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / rows_[r][c];
    for (auto& x : rows_[r]) x *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || sgn(rows_[i][c]) == 0) continue;
      Rational f = rows_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j) rows_[i][j] -= f * rows_[r][j];
    }
    basis_[r] = c;
  }

  Vector solution() const {
    Vector x(cols_, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) x[basis_[i]] = rows_[i][cols_];
    return x;
  }

  std::vector<Vector>& rows() { return rows_; }
  std::vector<std::size_t>& basis() { return basis_; }

 private:
  std::vector<Vector> rows_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

}  // namespace detail

/// maximize obj·x subject to A x = b, x >= 0.
inline LpResult solve_lp(const std::vector<Vector>& A, const Vector& b, const Vector& obj) {
  const std::size_t m = A.size();
  const std::size_t n = obj.size();
  if (b.size() != m) throw DimensionMismatch("constraint matrix and right-hand side disagree");
  for (const auto& row : A)
    if (row.size() != n) throw DimensionMismatch("constraint row length differs from variable count");

  // Phase one on [A | I] with artificial variables n..n+m-1.
  std::vector<Vector> rows;
  std::vector<std::size_t> basis;
  for (std::size_t i = 0; i < m; ++i) {
    Vector row(n + m + 1, Rational(0));
    const bool flip = sgn(b[i]) < 0;
    for (std::size_t j = 0; j < n; ++j) row[j] = flip ? Rational(-A[i][j]) : A[i][j];
    row[n + i] = 1;
    row[n + m] = flip ? Rational(-b[i]) : b[i];
    rows.push_back(std::move(row));
    basis.push_back(n + i);
  }
  detail::Tableau tab(std::move(rows), std::move(basis), n + m);
  Vector phase1(n + m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  tab.maximize(phase1, std::vector<bool>(n + m, true));
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis()[i] >= n && sgn(tab.rows()[i][n + m]) != 0) return {LpStatus::infeasible, 0, {}};

  // Drive zero-valued artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < tab.rows().size();) {
    if (tab.basis()[i] < n) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n && !col; ++j)
      if (sgn(tab.rows()[i][j]) != 0) col = j;
    if (col) {
      tab.pivot(i, *col);
      ++i;
    } else {
      tab.rows().erase(tab.rows().begin() + static_cast<std::ptrdiff_t>(i));
      tab.basis().erase(tab.basis().begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  Vector phase2(n + m, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = obj[j];
  std::vector<bool> allowed(n + m, false);
  for (std::size_t j = 0; j < n; ++j) allowed[j] = true;
  if (!tab.maximize(phase2, allowed)) return {LpStatus::unbounded, 0, {}};
  Vector x = tab.solution();
  x.resize(n);
  Rational value = 0;
  for (std::size_t j = 0; j < n; ++j) value += obj[j] * x[j];
  return {LpStatus::optimal, value, x};
}

}  // namespace quasihyp
