#pragma once

// Exact linear algebra over the rationals: canonical row spaces and the
// adapted-basis construction for decreasing chains of finite vector sets.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quasihyp/errors.hpp"
#include "quasihyp/rational.hpp"

namespace quasihyp {

/// A finite list of rational row vectors of common length `cols`.
///
/// Instances produced by canonicalize() (and by every subspace operation) are in
/// reduced row-echelon form with no zero rows, so two canonical matrices span the
/// same subspace exactly when they compare equal.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t cols) : cols_(cols) {}

  RationalMatrix(std::size_t cols, std::vector<Vector> rows) : cols_(cols), rows_(std::move(rows)) {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i].size() != cols_)
        throw MalformedInput("row " + std::to_string(i) + " has length " +
                             std::to_string(rows_[i].size()) + ", expected " +
                             std::to_string(cols_));
  }

  /// Infers the width from the first row; an empty list is rejected since its width is unknown.
  static RationalMatrix from_rows(std::vector<Vector> rows) {
    if (rows.empty()) throw MalformedInput("cannot infer ambient dimension of an empty row list");
    auto cols = rows.front().size();
    return RationalMatrix(cols, std::move(rows));
  }

  std::size_t cols() const noexcept { return cols_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  const std::vector<Vector>& rows() const noexcept { return rows_; }
  const Vector& row(std::size_t i) const { return rows_.at(i); }

  bool operator==(const RationalMatrix&) const = default;

 private:
  std::size_t cols_ = 0;
  std::vector<Vector> rows_;
};

namespace detail {

/// In-place Gauss-Jordan elimination; returns pivot columns.
inline std::vector<std::size_t> reduce_rows(std::vector<Vector>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    Vector& piv = rows[rank];
    if (piv[c] != 1) {
      Rational inv = 1 / piv[c];
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(piv[j]) != 0) piv[j] *= inv;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || sgn(rows[i][c]) == 0) continue;
      Rational factor = rows[i][c];
      Vector& target = rows[i];
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(piv[j]) != 0) target[j] -= factor * piv[j];
    }
    pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

inline void require_same_width(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.cols())
    throw DimensionMismatch("ambient dimensions differ: " + std::to_string(a.cols()) + " vs " +
                            std::to_string(b.cols()));
}

}  // namespace detail

/// Reduced row-echelon form of the row space of `m`.
inline RationalMatrix canonicalize(const RationalMatrix& m) {
  std::vector<Vector> rows;
  rows.reserve(m.row_count());
  for (const auto& r : m.rows())
    if (std::any_of(r.begin(), r.end(), [](const Rational& x) { return sgn(x) != 0; }))
      rows.push_back(r);
  detail::reduce_rows(rows, m.cols());
  return RationalMatrix(m.cols(), std::move(rows));
}

inline std::size_t rank(const RationalMatrix& m) { return canonicalize(m).row_count(); }

/// Null space {x : m x = 0}, canonical.
inline RationalMatrix kernel(const RationalMatrix& m) {
  const std::size_t n = m.cols();
  std::vector<Vector> rows = m.rows();
  auto pivots = detail::reduce_rows(rows, n);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(n, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
    basis.push_back(std::move(v));
  }
  return canonicalize(RationalMatrix(n, std::move(basis)));
}

/// Canonical span of all rows of all parts.
inline RationalMatrix subspace_sum(std::span<const RationalMatrix> parts) {
  if (parts.empty()) throw MalformedInput("subspace_sum needs at least one part");
  const std::size_t n = parts.front().cols();
  std::vector<Vector> rows;
  for (const auto& p : parts) {
    detail::require_same_width(parts.front(), p);
    rows.insert(rows.end(), p.rows().begin(), p.rows().end());
  }
  return canonicalize(RationalMatrix(n, std::move(rows)));
}

inline RationalMatrix subspace_sum(const RationalMatrix& a, const RationalMatrix& b) {
  const RationalMatrix parts[] = {a, b};
  return subspace_sum(std::span<const RationalMatrix>(parts));
}

/// a ∩ b as the common zero set of the annihilators of a and b.
inline RationalMatrix subspace_intersection(const RationalMatrix& a, const RationalMatrix& b) {
  detail::require_same_width(a, b);
  RationalMatrix ka = kernel(a), kb = kernel(b);
  std::vector<Vector> stacked = ka.rows();
  stacked.insert(stacked.end(), kb.rows().begin(), kb.rows().end());
  return kernel(RationalMatrix(a.cols(), std::move(stacked)));
}

/// Whether v lies in the row space spanned by the canonical matrix `space`.
inline bool contains(const RationalMatrix& space, const Vector& v) {
  if (v.size() != space.cols()) throw DimensionMismatch("vector length differs from ambient dimension");
  // Reduce v against the pivots of the canonical rows.
  Vector w = v;
  for (const auto& r : space.rows()) {
    std::size_t p = 0;
    while (sgn(r[p]) == 0) ++p;
    if (sgn(w[p]) == 0) continue;
    Rational f = w[p] / r[p];
    for (std::size_t j = p; j < w.size(); ++j)
      if (sgn(r[j]) != 0) w[j] -= f * r[j];
  }
  return std::all_of(w.begin(), w.end(), [](const Rational& x) { return sgn(x) == 0; });
}

/// Subspace inclusion sub ⊆ super (both need not be canonical).
inline bool is_subspace(const RationalMatrix& sub, const RationalMatrix& super) {
  detail::require_same_width(sub, super);
  RationalMatrix canon = canonicalize(super);
  return std::all_of(sub.rows().begin(), sub.rows().end(),
                     [&](const Vector& v) { return contains(canon, v); });
}

/// Stages F_1 ⊇ F_2 ⊇ ... ⊇ F_m = ∅ of finite vector sets in a fixed ambient space.
struct SubspaceChain {
  std::size_t ambient_dim = 0;
  std::vector<std::vector<Vector>> stages;
};

inline void validate(const SubspaceChain& chain) {
  if (chain.ambient_dim == 0) throw InvalidChain("ambient dimension must be positive");
  if (chain.stages.empty() || !chain.stages.back().empty())
    throw InvalidChain("the final stage of the chain must be empty");
  for (std::size_t k = 0; k < chain.stages.size(); ++k)
    for (const auto& v : chain.stages[k])
      if (v.size() != chain.ambient_dim)
        throw InvalidChain("stage " + std::to_string(k + 1) + " holds a vector of wrong length");
  for (std::size_t k = 1; k < chain.stages.size(); ++k)
    for (const auto& v : chain.stages[k])
      if (std::find(chain.stages[k - 1].begin(), chain.stages[k - 1].end(), v) ==
          chain.stages[k - 1].end())
        throw InvalidChain("stage " + std::to_string(k + 1) + " is not contained in stage " +
                           std::to_string(k));
}

/// Basis B of the ambient space with B ∩ F_k a basis of span(F_k) for every stage.
///
/// Built from the last stage backward: the free family collected so far is completed
/// inside F_k to a basis of span(F_k), and finally completed with standard basis vectors.
/// Vectors appear in the order they were selected (deepest stage first).
inline std::vector<Vector> adapted_basis(const SubspaceChain& chain) {
  validate(chain);
  const std::size_t n = chain.ambient_dim;
  std::vector<Vector> basis;
  std::vector<Vector> echelon;  // reduced copy of `basis` for independence tests

  auto try_add = [&](const Vector& v) {
    if (basis.size() == n) return;
    RationalMatrix current(n, echelon);
    if (contains(current, v)) return;
    basis.push_back(v);
    echelon.push_back(v);
    detail::reduce_rows(echelon, n);
  };

  for (std::size_t k = chain.stages.size(); k-- > 0;)
    for (const auto& v : chain.stages[k]) try_add(v);
  for (std::size_t j = 0; j < n && basis.size() < n; ++j) {
    Vector e(n, Rational(0));
    e[j] = 1;
    try_add(e);
  }
  return basis;
}

}  // namespace quasihyp
