#pragma once

// Test-only reference computations, written independently of the library algorithms:
// fraction-free elimination, brute-force monomial counts, finite differences.

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using Z = mpz_class;
using Q = mpq_class;

/// Rank by Bareiss elimination on integer rows obtained by clearing denominators.
inline std::size_t rank(const std::vector<std::vector<Q>>& rows_in) {
  if (rows_in.empty()) return 0;
  const std::size_t n = rows_in.front().size();
  std::vector<std::vector<Z>> a;
  for (const auto& row : rows_in) {
    Z l = 1;
    for (const auto& x : row) l = lcm(l, Z(x.get_den()));
    std::vector<Z> r;
    for (const auto& x : row) r.push_back(Z(x.get_num() * (l / x.get_den())));
    a.push_back(r);
  }
  const std::size_t m = a.size();
  std::size_t rk = 0;
  Z prev = 1;
  for (std::size_t c = 0; c < n && rk < m; ++c) {
    std::size_t p = rk;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[rk]);
    for (std::size_t i = rk + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        Z v = a[rk][c] * a[i][j] - a[i][c] * a[rk][j];
        a[i][j] = v / prev;  // exact by Sylvester's identity
      }
      a[i][c] = 0;
    }
    prev = a[rk][c];
    ++rk;
  }
  return rk;
}

/// Number of exponent tuples of length n+1 with entries >= 0 summing to k, by enumeration.
inline long count_monomials(int n, long k) {
  if (k < 0) return 0;
  std::function<long(int, long)> rec = [&](int vars, long left) -> long {
    if (vars == 1) return 1;
    long total = 0;
    for (long x = 0; x <= left; ++x) total += rec(vars - 1, left - x);
    return total;
  };
  return rec(n + 1, k);
}

/// h0 of O(e) on a product of projective spaces, by enumeration per factor.
inline long h0(const std::vector<int>& dims, const std::vector<long>& e) {
  long total = 1;
  for (std::size_t j = 0; j < dims.size(); ++j) total *= count_monomials(dims[j], e[j]);
  return total;
}

/// All exponent vectors of degree k in n+1 variables.
inline std::vector<std::vector<int>> exponents(int n, long k) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(static_cast<std::size_t>(n + 1), 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long left) {
    if (pos == e.size() - 1) {
      e[pos] = static_cast<int>(left);
      out.push_back(e);
      return;
    }
    for (long x = 0; x <= left; ++x) {
      e[pos] = static_cast<int>(x);
      rec(pos + 1, left - x);
    }
  };
  rec(0, k);
  return out;
}

/// ⟨L^d⟩ as the d-th finite difference of n ↦ h0(nL), a degree-d polynomial in n.
inline Z top_self_intersection(const std::vector<int>& dims, const std::vector<long>& e) {
  int d = 0;
  for (int x : dims) d += x;
  // Δ^d p(0) = Σ_j (−1)^{d−j} C(d,j) p(j + shift), shift large enough to stay in the polynomial range.
  const long shift = 1;
  Z total = 0;
  for (int j = 0; j <= d; ++j) {
    std::vector<long> ne;
    for (long x : e) ne.push_back(x * (j + shift));
    Z c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(j));
    Z term = c * Z(h0(dims, ne));
    total += ((d - j) % 2 == 0) ? term : Z(-term);
  }
  return total;
}

/// λ_d through the binomial expansion of (1 − 1/d)^{d+1}.
inline Q lambda(long d) {
  Q power = 0;
  for (long j = 0; j <= d + 1; ++j) {
    Z c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(d + 1), static_cast<unsigned long>(j));
    Z dj;
    mpz_pow_ui(dj.get_mpz_t(), Z(d).get_mpz_t(), static_cast<unsigned long>(j));
    Q term(c, dj);
    term.canonicalize();
    power += (j % 2 == 0) ? term : Q(-term);
  }
  Q factor(d, d + 1);
  factor.canonicalize();
  return (1 - power) * factor;
}

/// Σ_k dim V_{I,a,k} for coordinate hyperplanes x_i = 0 of P^n with L = O(k0): the filtration
/// is monomial, so the total is Σ over monomials of Σ_{t} a_t·min(e_{I_t}, cap).
inline long coordinate_total_dim(int n, long degree, const std::vector<std::size_t>& I, const std::vector<long>& a,
                                 long cap = -1) {
  long total = 0;
  for (const auto& e : exponents(n, degree))
    for (std::size_t t = 0; t < I.size(); ++t) {
      long x = e[I[t]];
      if (cap >= 0 && x > cap) x = cap;
      total += a[t] * x;
    }
  return total;
}

/// dim V_{I,a,k} for coordinate hyperplanes: monomials with Σ a_t e_{I_t} >= k.
inline long coordinate_dim(int n, long degree, const std::vector<std::size_t>& I, const std::vector<long>& a, long k) {
  long count = 0;
  for (const auto& e : exponents(n, degree)) {
    long w = 0;
    for (std::size_t t = 0; t < I.size(); ++t) w += a[t] * e[I[t]];
    if (w >= k) ++count;
  }
  return count;
}

}  // namespace oracle
