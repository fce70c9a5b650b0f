#pragma once

// Brute-force checks on the box Δ = {0,…,m}^r: the section-level regular-sequence
// inclusion, the filtration lower bound built from C_b, and the acyclic-case closed form
// with its inclusion–exclusion relation.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quasihyp/bounds.hpp"
#include "quasihyp/errors.hpp"
#include "quasihyp/exactalg.hpp"
#include "quasihyp/filtration.hpp"
#include "quasihyp/geometry.hpp"
#include "quasihyp/hypothesis.hpp"
#include "quasihyp/rational.hpp"

namespace quasihyp {

inline constexpr std::size_t kMaxBoxSize = 1'000'000;

struct BoxIndex {
  long m = 1;
  std::vector<long> b;

  /// {i : b_i < m}
  IndexSet J() const {
    IndexSet out;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i] < m) out.push_back(i);
    return out;
  }
};

inline std::string to_string(const std::vector<long>& b) {
  std::string s = "(";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
  return s + ")";
}

/// All of Δ = {0,…,m}^r in increasing lexicographic order.
inline std::vector<std::vector<long>> box_elements(long m, std::size_t r) {
  if (m < 0) throw DomainError("box size must be >= 0");
  double size = 1;
  for (std::size_t i = 0; i < r; ++i) size *= static_cast<double>(m + 1);
  if (size > static_cast<double>(kMaxBoxSize))
    throw SizeError("box {0.." + std::to_string(m) + "}^" + std::to_string(r) + " exceeds " +
                    std::to_string(kMaxBoxSize) + " elements");
  std::vector<std::vector<long>> out;
  std::vector<long> b(r, 0);
  while (true) {
    out.push_back(b);
    std::size_t pos = r;
    while (pos > 0 && b[pos - 1] == m) b[--pos] = 0;
    if (pos == 0) break;
    ++b[pos - 1];
  }
  return out;
}

inline void check_box(const MonomialModel& model, const BoxIndex& box) {
  if (box.m < 0) throw DomainError("box size must be >= 0");
  if (box.b.size() != model.divisor_count()) throw DimensionMismatch("box index length differs from divisor count");
  for (long x : box.b)
    if (x < 0 || x > box.m) throw DomainError("box index component outside [0, m]");
}

/// Γ(C_b) = Σ_{j∈J_b} Γ(L − D_j − Σ b_i D_i), as a subspace of Γ(L).
inline SectionSubspace c_space(const MonomialModel& model, const Multidegree& L, const BoxIndex& box) {
  check_box(model, box);
  std::vector<RationalMatrix> parts{RationalMatrix(monomials(model, L).size())};
  for (auto j : box.J()) {
    auto c = box.b;
    ++c[j];
    parts.push_back(section_space(model, L, c).basis);
  }
  return {L, subspace_sum(parts)};
}

/// Γ(L_b) ∩ Σ_{c > b} Γ(L_c) ⊆ Γ(C_b), c ranging over Δ in lexicographic order.
inline bool verify_lemma51_sections(const MonomialModel& model, const Multidegree& L, const BoxIndex& box) {
  check_box(model, box);
  const std::size_t q = monomials(model, L).size();
  std::vector<RationalMatrix> later{RationalMatrix(q)};
  for (const auto& c : box_elements(box.m, model.divisor_count()))
    if (c > box.b) later.push_back(section_space(model, L, c).basis);
  RationalMatrix lhs = subspace_intersection(section_space(model, L, box.b).basis, subspace_sum(later));
  return is_subspace(lhs, c_space(model, L, box).basis);
}

struct Lemma51Sweep {
  std::size_t boxes = 0;
  std::vector<std::vector<long>> failures;
  bool ok() const { return failures.empty(); }
};

/// The inclusion at every b ∈ Δ, sweeping Δ downward so the sum over c > b grows incrementally.
inline Lemma51Sweep verify_lemma51_all(const MonomialModel& model, const Multidegree& L, long m) {
  const auto elements = box_elements(m, model.divisor_count());
  const std::size_t q = monomials(model, L).size();
  Lemma51Sweep out;
  RationalMatrix later(q);
  for (auto it = elements.rbegin(); it != elements.rend(); ++it) {
    BoxIndex box{m, *it};
    RationalMatrix own = section_space(model, L, box.b).basis;
    RationalMatrix lhs = subspace_intersection(own, later);
    if (!is_subspace(lhs, c_space(model, L, box).basis)) out.failures.push_back(box.b);
    ++out.boxes;
    later = subspace_sum(later, own);
  }
  std::reverse(out.failures.begin(), out.failures.end());
  return out;
}

struct Lemma52Values {
  Integer bound;   // Σ_i a_i Σ_b [h0(L_b) − h0(C_b)] b_i
  Integer direct;  // Σ_k dim V'_k, V'_k summing Γ(L_b) over b ∈ Δ with Σ a_i b_i >= k
  bool holds() const { return direct >= bound; }
};

inline Lemma52Values bound_lemma52(const MonomialModel& model, const Multidegree& L, const std::vector<long>& a,
                                   long m) {
  const std::size_t r = model.divisor_count();
  if (a.size() != r) throw DimensionMismatch("one weight per divisor is required");
  Lemma52Values out;
  for (const auto& b : box_elements(m, r)) {
    BoxIndex box{m, b};
    Integer diff = h0(model, residual_degree(model, L, b)) -
                   static_cast<unsigned long>(c_space(model, L, box).dim());
    for (std::size_t i = 0; i < r; ++i) out.bound += a[i] * b[i] * diff;
  }
  IndexSet all(r);
  for (std::size_t i = 0; i < r; ++i) all[i] = i;
  out.direct = total_dim_V(model, L, FiltrationKey{all, a}, m);
  return out;
}

struct Prop53Result {
  Integer value;  // Σ_i a_i Σ_{k=1}^m h0(L − k D_i)
  std::size_t boxes_checked = 0;
  std::vector<std::vector<long>> identity_failures;
  Decision proper = Decision::undecided;
  bool identity_holds() const { return identity_failures.empty(); }
};

/// Every L_b, b ∈ Δ, acyclic; otherwise the offending b.
inline std::optional<std::vector<long>> first_non_acyclic(const MonomialModel& model, const Multidegree& L, long m) {
  for (const auto& b : box_elements(m, model.divisor_count()))
    if (!positivity_flags(model, residual_degree(model, L, b)).acyclic) return b;
  return std::nullopt;
}

/// Σ_{I⊆J} (−1)^{|I|} h0(L_b − Σ_{j∈I} D_j)
inline Integer alternating_sum(const MonomialModel& model, const Multidegree& L, const std::vector<long>& b,
                               const IndexSet& J) {
  Integer total = 0;
  for (unsigned long mask = 0; mask < (1UL << J.size()); ++mask) {
    auto c = b;
    int sign = 1;
    for (std::size_t t = 0; t < J.size(); ++t)
      if (mask & (1UL << t)) {
        ++c[J[t]];
        sign = -sign;
      }
    Integer h = h0(model, residual_degree(model, L, c));
    total += sign > 0 ? h : Integer(-h);
  }
  return total;
}

/// Closed form for Σ_k dim V_k when every L_b is acyclic; refuses with PreconditionFailure
/// naming the first non-acyclic b. Also checks h0(L_b) − h0(C_b) against the alternating sum.
inline Prop53Result bound_prop53(const MonomialModel& model, const Multidegree& L, const std::vector<long>& a,
                                 long m) {
  const std::size_t r = model.divisor_count();
  if (a.size() != r) throw DimensionMismatch("one weight per divisor is required");
  if (auto bad = first_non_acyclic(model, L, m))
    throw PreconditionFailure("L_b is not acyclic at b = " + to_string(*bad));
  Prop53Result out;
  IndexSet all(r);
  for (std::size_t i = 0; i < r; ++i) all[i] = i;
  out.proper = r >= 2 ? intersects_properly(model, all) : Decision::yes;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<long> b(r, 0);
    for (long k = 1; k <= m; ++k) {
      b[i] = k;
      out.value += a[i] * h0(model, residual_degree(model, L, b));
    }
  }
  for (const auto& b : box_elements(m, r)) {
    BoxIndex box{m, b};
    Integer lhs = h0(model, residual_degree(model, L, b)) -
                  static_cast<unsigned long>(c_space(model, L, box).dim());
    if (lhs != alternating_sum(model, L, b, box.J())) out.identity_failures.push_back(b);
    ++out.boxes_checked;
  }
  return out;
}

/// ν(L;D) >= (1/h0(L)) min_i Σ_{k=1}^m h0(L − kD_i) with the largest m whose box stays acyclic.
inline BoundValue koszul_nu_bound(const MonomialModel& model, const Multidegree& L) {
  const std::size_t r = model.divisor_count();
  const Integer q = h0(model, L);
  if (q < 1) throw DomainError("h0(L) must be >= 1");
  long useful = 0;
  for (std::size_t i = 0; i < r; ++i) useful = std::max(useful, detail::max_multiplicity(model, L, i));
  long best_m = 0;
  for (long m = 1; m <= useful; ++m) {
    try {
      if (first_non_acyclic(model, L, m)) break;
    } catch (const SizeError&) {
      break;
    }
    best_m = m;
  }
  BoundValue out;
  out.source = kSourceKoszul;
  IndexSet all(r);
  for (std::size_t i = 0; i < r; ++i) all[i] = i;
  Decision proper = r >= 2 ? intersects_properly(model, all) : Decision::yes;
  out.hypotheses.push_back({"proper intersection of all divisors", status_of(proper), to_string(proper)});
  out.hypotheses.push_back({"every L_b acyclic on the box", status_of(best_m >= 1),
                            "box size m = " + std::to_string(best_m)});
  std::optional<Integer> least;
  for (std::size_t i = 0; i < r; ++i) {
    Integer s = 0;
    std::vector<long> b(r, 0);
    for (long k = 1; k <= best_m; ++k) {
      b[i] = k;
      s += h0(model, residual_degree(model, L, b));
    }
    if (!least || s < *least) least = s;
  }
  out.value = Rational(*least, q);
  out.value.canonicalize();
  return out;
}

}  // namespace quasihyp
