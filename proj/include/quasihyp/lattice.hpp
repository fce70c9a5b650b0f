#pragma once

// Néron–Severi level arithmetic: rational divisor classes, a symmetric d-linear
// intersection form, nef-cone membership and the largest admissible θ.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quasihyp/errors.hpp"
#include "quasihyp/geometry.hpp"
#include "quasihyp/linear_program.hpp"
#include "quasihyp/rational.hpp"

namespace quasihyp {

/// A rational divisor class in coordinates over the lattice basis.
struct NSClass {
  Vector coords;

  NSClass() = default;
  explicit NSClass(Vector c) : coords(std::move(c)) {}
  static NSClass zero(std::size_t rank) { return NSClass(Vector(rank, Rational(0))); }

  std::size_t rank() const noexcept { return coords.size(); }
  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rational& x) { return sgn(x) == 0; });
  }

  NSClass& operator+=(const NSClass& o) {
    require_same_rank(o);
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
  }
  NSClass& operator-=(const NSClass& o) {
    require_same_rank(o);
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
    return *this;
  }
  NSClass& operator*=(const Rational& s) {
    for (auto& x : coords) x *= s;
    return *this;
  }
  friend NSClass operator+(NSClass a, const NSClass& b) { return a += b; }
  friend NSClass operator-(NSClass a, const NSClass& b) { return a -= b; }
  friend NSClass operator*(const Rational& s, NSClass a) { return a *= s; }
  bool operator==(const NSClass&) const = default;

 private:
  void require_same_rank(const NSClass& o) const {
    if (o.rank() != rank()) throw DimensionMismatch("divisor classes live in lattices of different rank");
  }
};

/// Totally symmetric d-linear form, stored on sorted multisets of basis indices.
class IntersectionForm {
 public:
  IntersectionForm(std::size_t rank, int dimension) : rank_(rank), dim_(dimension) {
    if (dimension < 1) throw DomainError("intersection form dimension must be >= 1");
    if (rank < 1) throw DomainError("lattice rank must be >= 1");
  }

  std::size_t rank() const noexcept { return rank_; }
  int dimension() const noexcept { return dim_; }

  void set(std::vector<std::size_t> multiset, const Rational& value) {
    if (multiset.size() != static_cast<std::size_t>(dim_))
      throw DimensionMismatch("intersection key must have exactly d entries");
    for (auto i : multiset)
      if (i >= rank_) throw DimensionMismatch("intersection key refers to an unknown basis element");
    std::sort(multiset.begin(), multiset.end());
    if (sgn(value) == 0)
      values_.erase(multiset);
    else
      values_[multiset] = value;
  }

  Rational value(std::vector<std::size_t> multiset) const {
    std::sort(multiset.begin(), multiset.end());
    auto it = values_.find(multiset);
    return it == values_.end() ? Rational(0) : it->second;
  }

  const std::map<std::vector<std::size_t>, Rational>& values() const noexcept { return values_; }

 private:
  std::size_t rank_;
  int dim_;
  std::map<std::vector<std::size_t>, Rational> values_;
};

/// ⟨C_1 ⋯ C_d⟩ by multilinear expansion.
inline Rational intersection_number(const IntersectionForm& form, std::span<const NSClass> classes) {
  if (classes.size() != static_cast<std::size_t>(form.dimension()))
    throw DimensionMismatch("intersection number needs exactly d = " + std::to_string(form.dimension()) +
                            " classes, got " + std::to_string(classes.size()));
  for (const auto& c : classes)
    if (c.rank() != form.rank()) throw DimensionMismatch("class rank differs from lattice rank");
  Rational total = 0;
  std::vector<std::size_t> key(classes.size());
  auto rec = [&](auto&& self, std::size_t pos, const Rational& coeff) -> void {
    if (pos == classes.size()) {
      total += coeff * form.value(key);
      return;
    }
    for (std::size_t b = 0; b < form.rank(); ++b) {
      const Rational& c = classes[pos].coords[b];
      if (sgn(c) == 0) continue;
      key[pos] = b;
      self(self, pos + 1, coeff * c);
    }
  };
  rec(rec, 0, Rational(1));
  return total;
}

/// ⟨A^p B^q C^s⟩ with p + q + s = d.
inline Rational intersect_powers(const IntersectionForm& form, const NSClass& a, int p, const NSClass& b, int q,
                                 const NSClass& c = {}, int s = 0) {
  if (p < 0 || q < 0 || s < 0 || p + q + s != form.dimension())
    throw DimensionMismatch("exponents must be nonnegative and sum to d");
  std::vector<NSClass> args;
  args.insert(args.end(), static_cast<std::size_t>(p), a);
  args.insert(args.end(), static_cast<std::size_t>(q), b);
  args.insert(args.end(), static_cast<std::size_t>(s), c);
  return intersection_number(form, args);
}

/// Finitely generated cone standing in for the nef cone.
class NefCone {
 public:
  explicit NefCone(std::vector<NSClass> generators) : gens_(std::move(generators)) {
    if (gens_.empty()) throw MalformedInput("nef cone needs at least one generator");
    for (const auto& g : gens_) {
      if (g.is_zero()) throw MalformedInput("nef cone generators must be nonzero");
      if (g.rank() != gens_.front().rank()) throw DimensionMismatch("nef cone generators differ in rank");
    }
  }
  const std::vector<NSClass>& generators() const noexcept { return gens_; }
  std::size_t rank() const noexcept { return gens_.front().rank(); }

 private:
  std::vector<NSClass> gens_;
};

/// Whether c is a nonnegative rational combination of the cone generators.
inline bool is_nef(const NefCone& cone, const NSClass& c) {
  if (c.rank() != cone.rank()) throw DimensionMismatch("class rank differs from cone rank");
  const auto& g = cone.generators();
  std::vector<Vector> A(cone.rank(), Vector(g.size()));
  for (std::size_t i = 0; i < cone.rank(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) A[i][j] = g[j].coords[i];
  return solve_lp(A, c.coords, Vector(g.size(), Rational(0))).status == LpStatus::optimal;
}

/// A lattice with its form and cone. `product_dims` is set for lattices generated from a
/// product of projective spaces, where positivity of a class is decided from its coordinates;
/// otherwise positivity comes from declarations.
struct NSLattice {
  std::vector<std::string> basis_labels;
  IntersectionForm form;
  NefCone cone;
  std::optional<std::vector<int>> product_dims;
  std::vector<NSClass> declared_ample;

  int dimension() const noexcept { return form.dimension(); }
  std::size_t rank() const noexcept { return form.rank(); }
};

/// Basis H_1..H_s with ⟨H_1^{a_1}⋯H_s^{a_s}⟩ = 1 iff a = (d_1,…,d_s); cone spanned by the H_j.
inline NSLattice product_lattice(const std::vector<int>& dims) {
  if (dims.empty()) throw MalformedInput("product lattice needs at least one factor");
  int d = 0;
  std::vector<std::size_t> key;
  std::vector<std::string> labels;
  std::vector<NSClass> gens;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (dims[j] < 1) throw MalformedInput("projective factor dimensions must be >= 1");
    d += dims[j];
    key.insert(key.end(), static_cast<std::size_t>(dims[j]), j);
    labels.push_back(dims.size() == 1 ? "H" : "H" + std::to_string(j + 1));
    NSClass g = NSClass::zero(dims.size());
    g.coords[j] = 1;
    gens.push_back(std::move(g));
  }
  IntersectionForm form(dims.size(), d);
  form.set(key, 1);
  return NSLattice{std::move(labels), std::move(form), NefCone(std::move(gens)), dims, {}};
}

inline NSLattice product_lattice(const MonomialModel& model) { return product_lattice(model.factor_dims()); }

inline NSClass class_of(const Multidegree& e) {
  NSClass c;
  for (long x : e) c.coords.emplace_back(x);
  return c;
}

inline NSClass divisor_class(const MonomialModel& model, std::size_t i) { return class_of(model.divisor_degree(i)); }

/// Status of a positivity claim about a class: computed, declared, or refuted/unknown.
enum class ClaimStatus { verified, assumed, failed };

inline bool positive_multiple_of(const NSClass& c, const NSClass& ref) {
  if (c.rank() != ref.rank() || ref.is_zero()) return false;
  std::optional<Rational> ratio;
  for (std::size_t i = 0; i < c.rank(); ++i) {
    if (sgn(ref.coords[i]) == 0) {
      if (sgn(c.coords[i]) != 0) return false;
      continue;
    }
    Rational r = c.coords[i] / ref.coords[i];
    if (ratio && *ratio != r) return false;
    ratio = r;
  }
  return ratio && sgn(*ratio) > 0;
}

/// Ampleness: on product lattices all coordinates positive; otherwise a declared class
/// (or a positive multiple of one, or a sum of declared classes listed as such) is assumed.
inline ClaimStatus ample_status(const NSLattice& lat, const NSClass& c) {
  if (lat.product_dims)
    return std::all_of(c.coords.begin(), c.coords.end(), [](const Rational& x) { return sgn(x) > 0; })
               ? ClaimStatus::verified
               : ClaimStatus::failed;
  for (const auto& a : lat.declared_ample)
    if (positive_multiple_of(c, a)) return ClaimStatus::assumed;
  return ClaimStatus::failed;
}

/// Freeness plus bigness. Products: all coordinates positive. Elsewhere ample declarations
/// cover it (a multiple of an ample class is free and big).
inline ClaimStatus free_big_status(const NSLattice& lat, const NSClass& c) { return ample_status(lat, c); }

enum class ThetaMode { per_subset, d_times_single };

struct ThetaResult {
  Rational theta;
  bool exceeds_one = false;  // the value is usable only when θ > 1
  std::string note;
};

/// Largest θ with L − θS nef (S ranges over the required combinations), solved as an exact LP
/// per constraint and minimised. Throws Degenerate when no constraint bounds θ, or when L
/// itself is not nef.
inline ThetaResult max_theta(const NSLattice& lat, const NSClass& L, const std::vector<NSClass>& divisors,
                             ThetaMode mode, const std::vector<IndexSet>& meeting_subsets = {}) {
  if (divisors.empty()) throw DomainError("max_theta needs at least one divisor");
  std::vector<NSClass> directions;
  if (mode == ThetaMode::d_times_single) {
    for (const auto& D : divisors) directions.push_back(Rational(lat.dimension()) * D);
  } else {
    if (meeting_subsets.empty()) throw DomainError("per-subset mode needs the list of meeting subsets");
    for (const auto& I : meeting_subsets) {
      NSClass s = NSClass::zero(lat.rank());
      for (auto i : I) {
        if (i >= divisors.size()) throw DimensionMismatch("subset refers to an unknown divisor");
        s += divisors[i];
      }
      directions.push_back(std::move(s));
    }
  }
  if (!is_nef(lat.cone, L)) throw Degenerate("L is not in the nef cone, no θ >= 0 is admissible");

  const auto& g = lat.cone.generators();
  std::optional<Rational> best;
  for (const auto& S : directions) {
    // maximize θ : Σ λ_j g_j + θ S = L, λ, θ >= 0
    std::vector<Vector> A(lat.rank(), Vector(g.size() + 1));
    for (std::size_t i = 0; i < lat.rank(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) A[i][j] = g[j].coords[i];
      A[i][g.size()] = S.coords[i];
    }
    Vector obj(g.size() + 1, Rational(0));
    obj[g.size()] = 1;
    auto res = solve_lp(A, L.coords, obj);
    if (res.status == LpStatus::unbounded) continue;
    if (res.status != LpStatus::optimal) throw Degenerate("θ constraint infeasible");
    if (!best || res.value < *best) best = res.value;
  }
  if (!best) throw Degenerate("θ is unbounded: every constraint direction is zero or anti-nef");
  ThetaResult out{*best, *best > 1, {}};
  if (!out.exceeds_one) out.note = "hypothesis θ > 1 fails";
  return out;
}

}  // namespace quasihyp
