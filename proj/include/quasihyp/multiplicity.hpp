#pragma once

// Choice of multiplicities m_i: a fixed point of the simplex self-map
// f(t)_i = φ(t)/⟨L_t^{d−1}D_i⟩, L_t = Σ t_j D_j, rounded to a rational point with small
// common denominator and re-verified exactly.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "quasihyp/bounds.hpp"
#include "quasihyp/errors.hpp"
#include "quasihyp/lattice.hpp"
#include "quasihyp/rational.hpp"

namespace quasihyp {

/// Nonnegative rationals summing to exactly 1.
struct SimplexPoint {
  Vector t;

  static SimplexPoint barycenter(std::size_t r) {
    Rational w(1, static_cast<long>(r));
    w.canonicalize();
    return SimplexPoint{Vector(r, w)};
  }
  bool valid() const {
    if (t.empty()) return false;
    Rational s = 0;
    for (const auto& x : t) {
      if (sgn(x) < 0) return false;
      s += x;
    }
    return s == 1;
  }
  bool operator==(const SimplexPoint&) const = default;
};

namespace detail {

inline void require_simplex(const SimplexPoint& p, std::size_t r) {
  if (p.t.size() != r) throw DimensionMismatch("simplex point has the wrong number of coordinates");
  if (!p.valid()) throw DomainError("point is not on the simplex");
}

inline NSClass combination(const std::vector<NSClass>& divisors, const Vector& t) {
  NSClass L = NSClass::zero(divisors.front().rank());
  for (std::size_t j = 0; j < divisors.size(); ++j) L += t[j] * divisors[j];
  return L;
}

/// ⟨L_t^{d−1} D_i⟩ for every i; throws Degenerate if one is <= 0.
inline Vector degrees_along(const IntersectionForm& form, const std::vector<NSClass>& divisors, const Vector& t) {
  const NSClass L = combination(divisors, t);
  Vector out;
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    Rational v = intersect_powers(form, L, form.dimension() - 1, divisors[i], 1);
    if (sgn(v) <= 0)
      throw Degenerate("<L_t^{d-1} D_" + std::to_string(i + 1) + "> <= 0 at this point of the simplex");
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/// (Σ_i 1/⟨L_t^{d−1}D_i⟩)^{−1}
inline Rational phi(const IntersectionForm& form, const std::vector<NSClass>& divisors, const SimplexPoint& t) {
  if (divisors.empty()) throw DomainError("at least one divisor is required");
  detail::require_simplex(t, divisors.size());
  Rational inv = 0;
  for (const auto& v : detail::degrees_along(form, divisors, t.t)) inv += 1 / v;
  return 1 / inv;
}

inline SimplexPoint f_map(const IntersectionForm& form, const std::vector<NSClass>& divisors, const SimplexPoint& t) {
  if (divisors.empty()) throw DomainError("at least one divisor is required");
  detail::require_simplex(t, divisors.size());
  const Vector v = detail::degrees_along(form, divisors, t.t);
  Rational inv = 0;
  for (const auto& x : v) inv += 1 / x;
  const Rational p = 1 / inv;
  SimplexPoint out;
  for (const auto& x : v) out.t.push_back(p / x);
  return out;
}

/// Left-hand side of the multiplicity inequality for divisor i at y:
/// ⟨L_y^d⟩/(2d⟨L_y^{d−1}D_i⟩y_i) + (d−1)(⟨L_y^{d−2}D_i²⟩y_i²/⟨L_y^d⟩)·g(⟨L_y^d⟩/(d⟨L_y^{d−1}D_i⟩y_i)).
inline Rational multiplicity_slope(const IntersectionForm& form, const std::vector<NSClass>& divisors,
                                   const SimplexPoint& y, std::size_t i) {
  const int d = form.dimension();
  const NSClass L = detail::combination(divisors, y.t);
  const Rational top = intersect_powers(form, L, d, L, 0);
  const Rational mixed = intersect_powers(form, L, d - 1, divisors[i], 1) * y.t[i];
  if (sgn(top) <= 0 || sgn(mixed) <= 0) throw Degenerate("degenerate intersection numbers at y");
  Rational value = top / (2 * d * mixed);
  if (d >= 2) {
    const Rational sq = intersect_powers(form, L, d - 2, divisors[i], 2) * y.t[i] * y.t[i];
    value += (d - 1) * (sq / top) * g_beta(top / (d * mixed));
  }
  return value;
}

/// Strict inequality multiplicity_slope(i) > r/(2d) for every i.
inline bool verify_thm44_inequality(const IntersectionForm& form, const std::vector<NSClass>& divisors,
                                    const SimplexPoint& y) {
  detail::require_simplex(y, divisors.size());
  for (const auto& x : y.t)
    if (sgn(x) <= 0) throw DomainError("y must be strictly positive");
  const Rational threshold = ratio(static_cast<long>(divisors.size()), 2L * form.dimension());
  for (std::size_t i = 0; i < divisors.size(); ++i)
    if (!(multiplicity_slope(form, divisors, y, i) > threshold)) return false;
  return true;
}

struct FixedPointOptions {
  Rational damping{1, 2};
  long max_iters = 200;
  Rational tolerance{1, 1000000};
  long grid_max_denominator = 24;
};

struct FixedPointResult {
  SimplexPoint point;   // last iterate (an exact fixed point when residual == 0)
  Rational residual;    // max_i |f(point)_i − point_i|
  SimplexPoint rounded; // y = (m_1/m, …, m_r/m)
  std::vector<long> multiplicities;
  long denominator = 0;
  bool verified = false;
  long iterations = 0;
  std::string method;   // "fixed-point", "rounded", "grid" or "none"
};

namespace detail {

inline Rational max_deviation(const SimplexPoint& a, const SimplexPoint& b) {
  Rational m = 0;
  for (std::size_t i = 0; i < a.t.size(); ++i) m = std::max(m, abs(Rational(a.t[i] - b.t[i])));
  return m;
}

/// Rational point with integer numerators n_i over Σ n_i, all n_i >= 1 after gcd reduction.
inline std::optional<SimplexPoint> from_numerators(std::vector<Integer> n) {
  Integer g = 0;
  for (const auto& x : n) {
    if (x < 1) return std::nullopt;
    g = gcd(g, x);
  }
  Integer total = 0;
  for (auto& x : n) {
    x /= g;
    total += x;
  }
  SimplexPoint y;
  for (const auto& x : n) {
    Rational q(x, total);
    q.canonicalize();
    y.t.push_back(q);
  }
  return y;
}

/// Continued-fraction rounding of every coordinate, then rescaling to a common denominator.
inline std::optional<SimplexPoint> round_point(const SimplexPoint& t, const Integer& cap) {
  Vector approx;
  Integer l = 1;
  for (const auto& x : t.t) {
    Rational a = best_approximation(x, cap);
    if (sgn(a) <= 0) return std::nullopt;
    l = lcm(l, Integer(a.get_den()));
    approx.push_back(a);
  }
  std::vector<Integer> num;
  for (const auto& a : approx) num.push_back(Integer(a.get_num() * (l / a.get_den())));
  return from_numerators(std::move(num));
}

inline bool try_accept(FixedPointResult& res, const IntersectionForm& form, const std::vector<NSClass>& divisors,
                       const SimplexPoint& y, const char* method) {
  try {
    if (!verify_thm44_inequality(form, divisors, y)) return false;
  } catch (const Degenerate&) {
    return false;
  }
  res.rounded = y;
  Integer m = 1;
  for (const auto& x : y.t) m = lcm(m, Integer(x.get_den()));
  res.denominator = m.get_si();
  res.multiplicities.clear();
  for (const auto& x : y.t) res.multiplicities.push_back(Integer(x.get_num() * (m / x.get_den())).get_si());
  res.verified = true;
  res.method = method;
  return true;
}

}  // namespace detail

/// Damped iteration t ← (1−γ)t + γf(t) from the barycenter, with an exact-fixed-point jump test
/// at every step; then rounding and exact verification, falling back to a simplex grid search.
inline FixedPointResult find_fixed_point(const IntersectionForm& form, const std::vector<NSClass>& divisors,
                                         const FixedPointOptions& opt = {}) {
  if (divisors.empty()) throw DomainError("at least one divisor is required");
  if (sgn(opt.damping) <= 0 || opt.damping > 1) throw DomainError("damping must lie in (0, 1]");
  if (opt.max_iters < 0) throw DomainError("max_iters must be >= 0");
  const std::size_t r = divisors.size();
  const Integer snapshot_cap("1000000000000");

  FixedPointResult res;
  res.method = "none";
  SimplexPoint t = SimplexPoint::barycenter(r);
  SimplexPoint ft = f_map(form, divisors, t);
  res.residual = detail::max_deviation(t, ft);
  while (sgn(res.residual) != 0 && res.iterations < opt.max_iters) {
    ++res.iterations;
    // f(t) may already be an exact fixed point (e.g. f constant).
    try {
      SimplexPoint fft = f_map(form, divisors, ft);
      if (fft == ft) {
        t = ft;
        res.residual = 0;
        break;
      }
    } catch (const Degenerate&) {
    }
    if (res.residual <= opt.tolerance) break;
    Vector next;
    Rational sum = 0;
    for (std::size_t i = 0; i < r; ++i) {
      Rational x = (1 - opt.damping) * t.t[i] + opt.damping * ft.t[i];
      x = best_approximation(x, snapshot_cap);
      sum += x;
      next.push_back(x);
    }
    for (auto& x : next) x /= sum;
    t = SimplexPoint{next};
    ft = f_map(form, divisors, t);
    res.residual = detail::max_deviation(t, ft);
  }
  res.point = t;

  if (sgn(res.residual) == 0 && std::all_of(t.t.begin(), t.t.end(), [](const Rational& x) { return sgn(x) > 0; })) {
    if (detail::try_accept(res, form, divisors, t, "fixed-point")) {
      if (res.denominator <= 1000000) return res;
      res.verified = false;
    }
  }
  if (res.residual <= opt.tolerance) {
    for (Integer cap = 10; cap <= 1000000; cap *= 2) {
      if (auto y = detail::round_point(t, cap))
        if (detail::try_accept(res, form, divisors, *y, "rounded")) return res;
    }
  }
  // Grid fallback: y = n/N with n_i >= 1, N increasing, compositions in lexicographic order.
  for (long N = static_cast<long>(r); N <= opt.grid_max_denominator; ++N) {
    std::vector<long> n(r, 1);
    n.back() = N - static_cast<long>(r) + 1;
    auto rec = [&](auto&& self, std::size_t pos, long left) -> bool {
      if (pos + 1 == r) {
        n[pos] = left;
        std::vector<Integer> num(n.begin(), n.end());
        Integer g = 0;
        for (const auto& x : num) g = gcd(g, x);
        if (g != 1) return false;  // already tried with a smaller N
        auto y = detail::from_numerators(num);
        return y && detail::try_accept(res, form, divisors, *y, "grid");
      }
      for (long x = 1; x <= left - static_cast<long>(r - pos - 1); ++x) {
        n[pos] = x;
        if (self(self, pos + 1, left - x)) return true;
      }
      return false;
    };
    if (rec(rec, 0, N)) return res;
  }
  res.verified = false;
  res.method = "none";
  return res;
}

}  // namespace quasihyp
