#pragma once

// Closed-form quantities and lower bounds: α(L;E), g(β), λ_d, the three-term Morse-type
// main term, the asymptotic α slope bound, the pairwise α bound on ν, the θ-nef bound and
// its λ_d specialisation. Every value is an exact rational.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quasihyp/errors.hpp"
#include "quasihyp/filtration.hpp"
#include "quasihyp/geometry.hpp"
#include "quasihyp/hypothesis.hpp"
#include "quasihyp/lattice.hpp"
#include "quasihyp/rational.hpp"

namespace quasihyp {

inline constexpr const char* kSourcePairwiseAlpha = "pairwise-alpha";
inline constexpr const char* kSourceMorseTerm = "morse-main-term";
inline constexpr const char* kSourceAlphaSlope = "alpha-slope";
inline constexpr const char* kSourceThetaNef = "theta-nef";
inline constexpr const char* kSourceLambda = "lambda-theta";
inline constexpr const char* kSourceKoszul = "koszul-acyclic";

/// α(L;E) = (1/h0(L)) Σ_{k>=1} h0(L − kE) for the divisor E = D_index.
inline Rational alpha(const MonomialModel& model, const Multidegree& L, std::size_t index) {
  const Integer q = h0(model, L);
  if (q < 1) throw DomainError("alpha needs h0(L) >= 1");
  if (index >= model.divisor_count()) throw DimensionMismatch("divisor index out of range");
  Integer sum = 0;
  std::vector<long> b(model.divisor_count(), 0);
  for (long k = 1;; ++k) {
    b[index] = k;
    Integer h = h0(model, residual_degree(model, L, b));
    if (h == 0) break;
    sum += h;
  }
  Rational r(sum, q);
  r.canonicalize();
  return r;
}

inline Rational g_beta(const Rational& beta) {
  if (sgn(beta) < 0) throw DomainError("g is defined for beta >= 0");
  if (beta <= 1) return pow(beta, 3) / 3;
  return beta - Rational(2, 3);
}

/// λ_d = [1 − (1 − 1/d)^{d+1}] · d/(d+1).
inline Rational lambda(long d) {
  if (d < 1) throw DomainError("lambda_d needs d >= 1");
  Rational base = ratio(d - 1, d);
  base.canonicalize();
  Rational r = (1 - pow(base, static_cast<unsigned>(d + 1))) * ratio(d, d + 1);
  r.canonicalize();
  return r;
}

/// ⟨L^d⟩/d!·n^d − ⟨L^{d−1}E⟩/(d−1)!·n^{d−1}k + (d−1)/d!·⟨L^{d−2}E²⟩·n^{d−2}·min(k²,n²).
/// The unspecified O(n^{d−1}) correction is not subtracted; the value is tagged asymptotic.
inline BoundValue morse_lower_bound(const NSLattice& lat, const NSClass& L, const NSClass& E, long n, long k) {
  if (n < 1 || k < 0) throw DomainError("morse bound needs n >= 1 and k >= 0");
  const int d = lat.dimension();
  const auto& form = lat.form;
  Rational n_r(n), k_r(k);
  Rational value = intersect_powers(form, L, d, E, 0) / Rational(factorial(d)) * pow(n_r, static_cast<unsigned>(d));
  value -= intersect_powers(form, L, d - 1, E, 1) / Rational(factorial(d - 1)) *
           pow(n_r, static_cast<unsigned>(d - 1)) * k_r;
  if (d >= 2) {
    Rational m2 = std::min(k_r * k_r, n_r * n_r);
    value += Rational(d - 1) / Rational(factorial(d)) * intersect_powers(form, L, d - 2, E, 2) *
             pow(n_r, static_cast<unsigned>(d - 2)) * m2;
  }
  BoundValue out;
  out.value = value;
  out.source = kSourceMorseTerm;
  out.asymptotic = true;
  out.hypotheses.push_back({"E free and big", status_of(free_big_status(lat, E)), "lattice positivity"});
  out.hypotheses.push_back({"L - E nef", status_of(is_nef(lat.cone, L - E)), "cone membership"});
  return out;
}

/// Lower bound on liminf (1/n) α(nL;E): β/2 + M/⟨L^d⟩·g(β) with β = ⟨L^d⟩/(d⟨L^{d−1}E⟩),
/// M = (d−1)⟨L^{d−2}E²⟩.
inline Rational alpha_slope_value(const IntersectionForm& form, const NSClass& L, const NSClass& E) {
  const int d = form.dimension();
  const Rational top = intersect_powers(form, L, d, E, 0);
  const Rational mixed = intersect_powers(form, L, d - 1, E, 1);
  if (sgn(mixed) == 0) throw Degenerate("<L^{d-1} E> = 0");
  if (sgn(top) == 0) throw Degenerate("<L^d> = 0");
  const Rational beta = top / (d * mixed);
  Rational M = 0;
  if (d >= 2) M = (d - 1) * intersect_powers(form, L, d - 2, E, 2);
  return beta / 2 + M / top * g_beta(beta);
}

inline BoundValue bound_cor43(const NSLattice& lat, const NSClass& L, const NSClass& E) {
  BoundValue out;
  out.value = alpha_slope_value(lat.form, L, E);
  out.source = kSourceAlphaSlope;
  out.asymptotic = true;
  out.hypotheses.push_back({"E free and big", status_of(free_big_status(lat, E)), "lattice positivity"});
  out.hypotheses.push_back({"L - E nef", status_of(is_nef(lat.cone, L - E)), "cone membership"});
  return out;
}

/// ν(L;D) >= (2/δ) min_i α(L;D_i) under pairwise properness and empty (δ+1)-fold intersections.
inline BoundValue bound_prop41(const MonomialModel& model, const Multidegree& L, long delta) {
  const std::size_t r = model.divisor_count();
  BoundValue out;
  out.source = kSourcePairwiseAlpha;
  out.hypotheses.push_back({"2 <= delta <= r", status_of(delta >= 2 && static_cast<std::size_t>(delta) <= r),
                            "delta = " + std::to_string(delta) + ", r = " + std::to_string(r)});
  if (delta < 2) throw DomainError("delta must be >= 2");
  IndexSet all(r);
  for (std::size_t i = 0; i < r; ++i) all[i] = i;
  const Decision pairwise = r >= 2 ? pairwise_proper(model, all) : Decision::yes;
  out.hypotheses.push_back({"pairwise proper intersection", status_of(pairwise), to_string(pairwise)});

  Decision empties = Decision::yes;
  const std::size_t need = static_cast<std::size_t>(delta) + 1;
  if (need <= r && r <= 20) {
    std::vector<bool> pick(r, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(need), true);
    do {
      IndexSet I;
      for (std::size_t i = 0; i < r; ++i)
        if (pick[i]) I.push_back(i);
      Decision e = intersection_empty(model, I);
      empties = both(empties, e);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  out.hypotheses.push_back({"every (delta+1)-fold intersection empty", status_of(empties), to_string(empties)});

  std::optional<Rational> best;
  for (std::size_t i = 0; i < r; ++i) {
    Rational a = alpha(model, L, i);
    if (!best || a < *best) best = a;
  }
  out.value = ratio(2, delta) * *best;
  out.value.canonicalize();
  return out;
}

/// θ/((d+1)⟨L^d⟩) · min_i Σ_{j=0}^{d} ⟨L^{d−j}(L − θD_i)^j⟩.
inline Rational theta_nef_value(const IntersectionForm& form, const NSClass& L, const std::vector<NSClass>& divisors,
                                const Rational& theta) {
  const int d = form.dimension();
  const Rational top = intersect_powers(form, L, d, L, 0);
  if (sgn(top) == 0) throw Degenerate("<L^d> = 0");
  std::optional<Rational> best;
  for (const auto& D : divisors) {
    NSClass rest = L - theta * D;
    Rational s = 0;
    for (int j = 0; j <= d; ++j) s += intersect_powers(form, L, d - j, rest, j);
    if (!best || s < *best) best = s;
  }
  return theta / ((d + 1) * top) * *best;
}

inline BoundValue bound_thm54(const NSLattice& lat, const NSClass& L, const std::vector<NSClass>& divisors,
                              const Rational& theta, const std::vector<IndexSet>& meeting) {
  if (divisors.empty()) throw DomainError("at least one divisor is required");
  BoundValue out;
  out.source = kSourceThetaNef;
  out.asymptotic = true;
  out.value = theta_nef_value(lat.form, L, divisors, theta);
  out.hypotheses.push_back({"L ample", status_of(ample_status(lat, L)), "lattice positivity"});
  bool nef_all = std::all_of(divisors.begin(), divisors.end(), [&](const NSClass& D) { return is_nef(lat.cone, D); });
  out.hypotheses.push_back({"every D_i nef", status_of(nef_all), "cone membership"});
  out.hypotheses.push_back({"theta > 1", status_of(theta > 1), "theta = " + to_string(theta)});
  bool subsets_nef = true;
  for (const auto& I : meeting) {
    NSClass s = L;
    for (auto i : I) s -= theta * divisors.at(i);
    subsets_nef = subsets_nef && is_nef(lat.cone, s);
  }
  out.hypotheses.push_back({"L - theta*sum_{i in I} D_i nef for every meeting subset I", status_of(subsets_nef),
                            std::to_string(meeting.size()) + " subsets checked"});
  return out;
}

/// λ_d·θ; the hypotheses on L and the D_i are the caller's (see certify).
inline BoundValue bound_cor55(long d, const Rational& theta) {
  BoundValue out;
  out.source = kSourceLambda;
  out.asymptotic = true;
  out.value = lambda(d) * theta;
  out.value.canonicalize();
  out.hypotheses.push_back({"theta > 1", status_of(theta > 1), "theta = " + to_string(theta)});
  return out;
}

}  // namespace quasihyp
