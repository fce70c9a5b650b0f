#pragma once

// Weighted filtrations V_{I,a,k} = Σ_{b : Σ a_i b_i >= k} Γ(L − Σ b_i D_i) of Γ(L) and the
// truncated exploration of their normalised total dimension.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "quasihyp/errors.hpp"
#include "quasihyp/exactalg.hpp"
#include "quasihyp/geometry.hpp"
#include "quasihyp/rational.hpp"

namespace quasihyp {

struct FiltrationKey {
  IndexSet I;
  std::vector<long> a;

  bool operator==(const FiltrationKey&) const = default;
};

inline bool is_primitive(const std::vector<long>& a) {
  long g = 0;
  for (long x : a) g = std::gcd(g, x);
  return g == 1;
}

inline void validate(const FiltrationKey& key, const MonomialModel& model, bool require_primitive = false) {
  if (key.I.empty()) throw DomainError("filtration key needs a nonempty divisor set");
  if (key.I.size() != key.a.size()) throw DimensionMismatch("one weight per divisor in the key is required");
  if (!std::is_sorted(key.I.begin(), key.I.end()) ||
      std::adjacent_find(key.I.begin(), key.I.end()) != key.I.end())
    throw DomainError("filtration key indices must be strictly increasing");
  if (key.I.back() >= model.divisor_count()) throw DimensionMismatch("divisor index out of range");
  for (long w : key.a)
    if (w < 1) throw DomainError("filtration weights must be positive");
  if (require_primitive && !is_primitive(key.a)) throw DomainError("filtration weights must be primitive");
}

namespace detail {

/// Largest b with L − b·deg D_i >= 0 componentwise (−1 if L itself is not effective).
inline long max_multiplicity(const MonomialModel& model, const Multidegree& L, std::size_t i) {
  if (!nonnegative(L)) return -1;
  long best = -1;
  const auto& deg = model.divisor_degree(i);
  for (std::size_t j = 0; j < deg.size(); ++j) {
    if (deg[j] <= 0) continue;
    long q = L[j] / deg[j];
    if (best < 0 || q < best) best = q;
  }
  return best;
}

/// Calls visit(b_full) for every b ∈ ℕ^I (embedded in ℕ^r) with nonnegative residual degree,
/// b_i <= cap when a cap is given.
template <typename Visit>
void for_each_effective(const MonomialModel& model, const Multidegree& L, const IndexSet& I,
                        std::optional<long> cap, Visit&& visit) {
  std::vector<long> bound;
  for (auto i : I) {
    long b = max_multiplicity(model, L, i);
    if (b < 0) return;
    bound.push_back(cap ? std::min(b, *cap) : b);
  }
  std::vector<long> full(model.divisor_count(), 0);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == I.size()) {
      if (nonnegative(residual_degree(model, L, full))) visit(full);
      return;
    }
    for (long x = 0; x <= bound[pos]; ++x) {
      full[I[pos]] = x;
      self(self, pos + 1);
    }
    full[I[pos]] = 0;
  };
  rec(rec, 0);
}

inline long weight(const FiltrationKey& key, const std::vector<long>& full) {
  long s = 0;
  for (std::size_t t = 0; t < key.I.size(); ++t) s += key.a[t] * full[key.I[t]];
  return s;
}

}  // namespace detail

/// Largest k for which V_{I,a,k} can be nonzero.
inline long filtration_length(const MonomialModel& model, const Multidegree& L, const FiltrationKey& key,
                              std::optional<long> cap = std::nullopt) {
  long top = 0;
  detail::for_each_effective(model, L, key.I, cap,
                             [&](const std::vector<long>& b) { top = std::max(top, detail::weight(key, b)); });
  return top;
}

/// V_{I,a,k} as a canonical subspace of Γ(L). With `cap`, only b with b_i <= cap contribute.
inline RationalMatrix filtration_space(const MonomialModel& model, const Multidegree& L, const FiltrationKey& key,
                                       long k, std::optional<long> cap = std::nullopt) {
  validate(key, model);
  if (k < 1) throw DomainError("filtration index k must be >= 1");
  const std::size_t q = monomials(model, L).size();
  std::vector<RationalMatrix> parts{RationalMatrix(q)};
  detail::for_each_effective(model, L, key.I, cap, [&](const std::vector<long>& b) {
    const long w = detail::weight(key, b);
    if (w < k) return;
    // Only minimal b matter: lowering any positive entry must drop below k.
    for (std::size_t t = 0; t < key.I.size(); ++t)
      if (b[key.I[t]] > 0 && w - key.a[t] >= k) return;
    parts.push_back(section_space(model, L, b).basis);
  });
  return subspace_sum(parts);
}

inline std::size_t dim_V(const MonomialModel& model, const Multidegree& L, const FiltrationKey& key, long k,
                         std::optional<long> cap = std::nullopt) {
  return filtration_space(model, L, key, k, cap).row_count();
}

/// Σ_{k>=1} dim V_{I,a,k}.
inline Integer total_dim_V(const MonomialModel& model, const Multidegree& L, const FiltrationKey& key,
                           std::optional<long> cap = std::nullopt) {
  validate(key, model);
  Integer total = 0;
  const long top = filtration_length(model, L, key, cap);
  for (long k = 1; k <= top; ++k) total += static_cast<unsigned long>(dim_V(model, L, key, k, cap));
  return total;
}

/// Σ_k dim V_{I,a,k} / (h0(L) Σ a_i).
inline Rational nu_ratio(const MonomialModel& model, const Multidegree& L, const FiltrationKey& key) {
  const Integer q = h0(model, L);
  if (q < 1) throw DomainError("h0(L) must be >= 1");
  long wsum = std::accumulate(key.a.begin(), key.a.end(), 0L);
  Rational r(total_dim_V(model, L, key), q * wsum);
  r.canonicalize();
  return r;
}

/// An upper estimate of ν: the minimum over the enumerated cells, never a lower bound.
struct NuEstimate {
  Rational value;
  FiltrationKey witness;
  long weight_cap = 0;
  std::size_t cells = 0;
  std::vector<std::string> notes;
};

/// Subsets I with ∩_{i∈I} D_i decided nonempty, ordered by size then lexicographically.
/// Undecided subsets are left out (the minimum over fewer cells stays an upper estimate).
inline std::vector<IndexSet> meeting_subsets(const MonomialModel& model, std::vector<std::string>* notes = nullptr) {
  const std::size_t r = model.divisor_count();
  if (r > 20) throw SizeError("too many divisors to enumerate subsets");
  std::vector<IndexSet> out;
  for (unsigned long mask = 1; mask < (1UL << r); ++mask) {
    IndexSet I;
    for (std::size_t i = 0; i < r; ++i)
      if (mask & (1UL << i)) I.push_back(i);
    Decision d = intersection_empty(model, I);
    if (d == Decision::no) {
      out.push_back(std::move(I));
    } else if (d == Decision::undecided && notes) {
      std::string s = "subset {";
      for (std::size_t t = 0; t < I.size(); ++t) s += (t ? "," : "") + std::to_string(I[t] + 1);
      notes->push_back(s + "} skipped: emptiness undecided");
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const IndexSet& x, const IndexSet& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

/// Minimum of the ν ratio over meeting subsets I and primitive weights with entries in [1, A].
/// Ties keep the smallest (|I|, I, a).
inline NuEstimate nu_truncated(const MonomialModel& model, const Multidegree& L, long A = 4) {
  if (A < 1) throw DomainError("weight cap must be >= 1");
  if (h0(model, L) < 1) throw DomainError("h0(L) must be >= 1");
  NuEstimate est;
  est.weight_cap = A;
  auto subsets = meeting_subsets(model, &est.notes);
  if (subsets.empty()) {
    est.notes.push_back("no divisor subset with a common point; estimate taken over singletons only");
    for (std::size_t i = 0; i < model.divisor_count(); ++i) subsets.push_back({i});
  }
  std::optional<Rational> best;
  for (const auto& I : subsets) {
    std::vector<long> a(I.size(), 1);
    while (true) {
      if (is_primitive(a)) {
        FiltrationKey key{I, a};
        Rational r = nu_ratio(model, L, key);
        ++est.cells;
        if (!best || r < *best) {
          best = r;
          est.witness = key;
        }
      }
      std::size_t pos = a.size();
      while (pos > 0 && a[pos - 1] == A) a[--pos] = 1;
      if (pos == 0) break;
      ++a[pos - 1];
    }
  }
  est.value = *best;
  return est;
}

struct WeightedIdentity {
  Integer weighted_orders;  // Σ_k Σ_{i∈I} a_i μ_i(s_k) over an adapted basis
  Integer total_dim;        // Σ_μ dim V_{I,a,μ}
  Decision pairwise_proper = Decision::undecided;
  std::vector<Vector> basis;

  bool holds() const { return weighted_orders >= total_dim; }
  bool equal() const { return weighted_orders == total_dim; }
};

/// Builds the chain F_k of unions of section spaces, takes an adapted basis and compares its
/// total weighted vanishing order with Σ_μ dim V_μ.
inline WeightedIdentity weighted_identity_check(const MonomialModel& model, const Multidegree& L,
                                                const FiltrationKey& key) {
  validate(key, model);
  const std::size_t q = monomials(model, L).size();
  if (q == 0) throw DomainError("h0(L) must be >= 1");
  WeightedIdentity out;
  out.pairwise_proper = pairwise_proper(model, key.I);

  struct Piece {
    long weight;
    std::vector<Vector> rows;
  };
  std::vector<Piece> pieces;
  detail::for_each_effective(model, L, key.I, std::nullopt, [&](const std::vector<long>& b) {
    pieces.push_back({detail::weight(key, b), section_space(model, L, b).basis.rows()});
  });
  long top = 0;
  for (const auto& p : pieces) top = std::max(top, p.weight);

  SubspaceChain chain;
  chain.ambient_dim = q;
  for (long k = 1; k <= top + 1; ++k) {
    std::vector<Vector> stage;
    for (const auto& p : pieces) {
      if (p.weight < k) continue;
      for (const auto& v : p.rows)
        if (std::find(stage.begin(), stage.end(), v) == stage.end()) stage.push_back(v);
    }
    chain.stages.push_back(std::move(stage));
  }
  out.basis = adapted_basis(chain);

  for (const auto& s : out.basis)
    for (std::size_t t = 0; t < key.I.size(); ++t)
      out.weighted_orders += key.a[t] * vanishing_order(model, L, s, key.I[t]);
  for (long k = 1; k <= top; ++k) out.total_dim += static_cast<unsigned long>(dim_V(model, L, key, k));
  return out;
}

}  // namespace quasihyp
