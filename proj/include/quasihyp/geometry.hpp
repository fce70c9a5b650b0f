#pragma once

// Monomial models: products of projective spaces P^{d_1} x ... x P^{d_s} over Q with
// hypersurface divisors given by explicit multihomogeneous forms. Global sections of
// O(e) are coordinatised by the monomials of multidegree e, sorted in decreasing
// lexicographic order of their exponent vectors (factors in declaration order).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quasihyp/errors.hpp"
#include "quasihyp/exactalg.hpp"
#include "quasihyp/rational.hpp"

namespace quasihyp {

using Multidegree = std::vector<long>;
/// Exponents of all homogeneous coordinates, factor blocks concatenated.
using ExponentVector = std::vector<int>;
using IndexSet = std::vector<std::size_t>;

struct HomogeneousForm {
  Multidegree degree;
  std::map<ExponentVector, Rational> terms;

  bool operator==(const HomogeneousForm&) const = default;
};

struct Hypersurface {
  std::string label;
  HomogeneousForm form;
};

/// Three-valued answer of the geometric deciders; `assumed` is a yes taken from a
/// model assertion rather than computed.
enum class Decision { yes, no, assumed, undecided };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::yes: return "yes";
    case Decision::no: return "no";
    case Decision::assumed: return "assumed";
    case Decision::undecided: return "undecided";
  }
  return "?";
}

/// Conjunction: no dominates, then undecided, then assumed.
inline Decision both(Decision a, Decision b) {
  if (a == Decision::no || b == Decision::no) return Decision::no;
  if (a == Decision::undecided || b == Decision::undecided) return Decision::undecided;
  if (a == Decision::assumed || b == Decision::assumed) return Decision::assumed;
  return Decision::yes;
}

class MonomialModel {
 public:
  MonomialModel(std::vector<int> factor_dims, std::vector<Hypersurface> divisors,
                std::vector<IndexSet> assert_proper = {}, std::vector<IndexSet> assert_empty = {})
      : dims_(std::move(factor_dims)),
        divisors_(std::move(divisors)),
        assert_proper_(std::move(assert_proper)),
        assert_empty_(std::move(assert_empty)) {
    if (dims_.empty()) throw MalformedInput("model needs at least one projective factor");
    for (int d : dims_)
      if (d < 1) throw MalformedInput("projective factor dimensions must be >= 1");
    offsets_.push_back(0);
    for (int d : dims_) offsets_.push_back(offsets_.back() + static_cast<std::size_t>(d) + 1);
    if (divisors_.empty()) throw MalformedInput("model needs at least one divisor");
    std::set<std::string> labels;
    for (const auto& h : divisors_) {
      if (!labels.insert(h.label).second) throw MalformedInput("duplicate divisor label '" + h.label + "'");
      validate_form(h.form, h.label);
      if (std::none_of(h.form.degree.begin(), h.form.degree.end(), [](long e) { return e > 0; }))
        throw MalformedInput("divisor '" + h.label + "' has no positive degree component");
    }
    for (auto* list : {&assert_proper_, &assert_empty_})
      for (auto& s : *list) {
        std::sort(s.begin(), s.end());
        if (s.empty() || s.back() >= divisors_.size())
          throw MalformedInput("assertion refers to an unknown divisor");
      }
  }

  const std::vector<int>& factor_dims() const noexcept { return dims_; }
  std::size_t factor_count() const noexcept { return dims_.size(); }
  int dimension() const noexcept { return std::accumulate(dims_.begin(), dims_.end(), 0); }
  std::size_t variable_count() const noexcept { return offsets_.back(); }
  /// First flattened variable index of factor j.
  std::size_t offset(std::size_t j) const { return offsets_.at(j); }
  const std::vector<Hypersurface>& divisors() const noexcept { return divisors_; }
  std::size_t divisor_count() const noexcept { return divisors_.size(); }
  const Multidegree& divisor_degree(std::size_t i) const { return divisors_.at(i).form.degree; }
  const std::vector<IndexSet>& asserted_proper() const noexcept { return assert_proper_; }
  const std::vector<IndexSet>& asserted_empty() const noexcept { return assert_empty_; }

  void validate_form(const HomogeneousForm& f, const std::string& what) const {
    if (f.degree.size() != dims_.size())
      throw MalformedInput("form '" + what + "' has " + std::to_string(f.degree.size()) +
                           " degree components, expected " + std::to_string(dims_.size()));
    if (f.terms.empty()) throw MalformedInput("form '" + what + "' is zero");
    for (const auto& [exp, coeff] : f.terms) {
      if (sgn(coeff) == 0) throw MalformedInput("form '" + what + "' stores a zero coefficient");
      if (exp.size() != variable_count())
        throw MalformedInput("form '" + what + "' has an exponent vector of wrong length");
      for (std::size_t j = 0; j < dims_.size(); ++j) {
        long s = 0;
        for (std::size_t v = offsets_[j]; v < offsets_[j + 1]; ++v) {
          if (exp[v] < 0) throw MalformedInput("form '" + what + "' has a negative exponent");
          s += exp[v];
        }
        if (s != f.degree[j])
          throw MalformedInput("form '" + what + "' has a term not of its multidegree");
      }
    }
  }

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> offsets_;
  std::vector<Hypersurface> divisors_;
  std::vector<IndexSet> assert_proper_;
  std::vector<IndexSet> assert_empty_;
};

/// Canonical subspace of Γ(O(degree)) in monomial coordinates.
struct SectionSubspace {
  Multidegree degree;
  RationalMatrix basis;

  std::size_t dim() const noexcept { return basis.row_count(); }
  bool operator==(const SectionSubspace&) const = default;
};

inline bool nonnegative(const Multidegree& e) {
  return std::all_of(e.begin(), e.end(), [](long x) { return x >= 0; });
}

inline Integer h0(const MonomialModel& model, const Multidegree& e) {
  if (e.size() != model.factor_count()) throw DimensionMismatch("multidegree length differs from factor count");
  if (!nonnegative(e)) return 0;
  Integer result = 1;
  for (std::size_t j = 0; j < e.size(); ++j)
    result *= binomial(e[j] + model.factor_dims()[j], model.factor_dims()[j]);
  return result;
}

/// Monomials of multidegree e (all components >= 0), decreasing lexicographic order.
inline std::vector<ExponentVector> monomials(const MonomialModel& model, const Multidegree& e) {
  if (e.size() != model.factor_count()) throw DimensionMismatch("multidegree length differs from factor count");
  if (!nonnegative(e)) return {};
  // Per-factor lists in decreasing lex order; their cartesian product in odometer order
  // (first factor slowest) is again decreasing lex on the concatenation.
  std::vector<std::vector<std::vector<int>>> per_factor;
  for (std::size_t j = 0; j < e.size(); ++j) {
    std::vector<std::vector<int>> list;
    std::vector<int> cur(static_cast<std::size_t>(model.factor_dims()[j]) + 1, 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long left) {
      if (pos + 1 == cur.size()) {
        cur[pos] = static_cast<int>(left);
        list.push_back(cur);
        return;
      }
      for (long x = left; x >= 0; --x) {
        cur[pos] = static_cast<int>(x);
        rec(pos + 1, left - x);
      }
    };
    rec(0, e[j]);
    per_factor.push_back(std::move(list));
  }
  std::vector<ExponentVector> out;
  ExponentVector cur;
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == per_factor.size()) {
      out.push_back(cur);
      return;
    }
    for (const auto& part : per_factor[j]) {
      cur.insert(cur.end(), part.begin(), part.end());
      rec(j + 1);
      cur.resize(cur.size() - part.size());
    }
  };
  rec(0);
  return out;
}

/// Position of a monomial in the list returned by monomials().
inline std::size_t monomial_index(const std::vector<ExponentVector>& basis, const ExponentVector& u) {
  auto it = std::lower_bound(basis.begin(), basis.end(), u, std::greater<>());
  if (it == basis.end() || *it != u) throw DimensionMismatch("monomial not in the basis of this multidegree");
  return static_cast<std::size_t>(it - basis.begin());
}

inline HomogeneousForm multiply(const HomogeneousForm& f, const HomogeneousForm& g) {
  HomogeneousForm out;
  out.degree.resize(f.degree.size());
  for (std::size_t j = 0; j < f.degree.size(); ++j) out.degree[j] = f.degree[j] + g.degree[j];
  for (const auto& [ea, ca] : f.terms)
    for (const auto& [eb, cb] : g.terms) {
      ExponentVector e(ea.size());
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
      out.terms[e] += ca * cb;
    }
  std::erase_if(out.terms, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

/// The constant form 1 of multidegree 0.
inline HomogeneousForm unit_form(const MonomialModel& model) {
  HomogeneousForm one;
  one.degree.assign(model.factor_count(), 0);
  one.terms[ExponentVector(model.variable_count(), 0)] = 1;
  return one;
}

/// Π f_i^{b_i} over the model's defining forms.
inline HomogeneousForm divisor_power_product(const MonomialModel& model, const std::vector<long>& b) {
  if (b.size() != model.divisor_count()) throw DimensionMismatch("multiplicity vector length differs from divisor count");
  HomogeneousForm p = unit_form(model);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] < 0) throw DomainError("multiplicities must be nonnegative");
    for (long k = 0; k < b[i]; ++k) p = multiply(p, model.divisors()[i].form);
  }
  return p;
}

inline Multidegree residual_degree(const MonomialModel& model, const Multidegree& L, const std::vector<long>& b) {
  if (b.size() != model.divisor_count()) throw DimensionMismatch("multiplicity vector length differs from divisor count");
  Multidegree r = L;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= b[i] * model.divisor_degree(i)[j];
  return r;
}

/// Image of Γ(O(L - Σ b_i deg D_i)) under multiplication by Π f_i^{b_i}, as a subspace of Γ(O(L)).
inline SectionSubspace section_space(const MonomialModel& model, const Multidegree& L, const std::vector<long>& b) {
  if (L.size() != model.factor_count()) throw DimensionMismatch("multidegree length differs from factor count");
  const auto ambient = monomials(model, L);
  Multidegree rest = residual_degree(model, L, b);
  if (!nonnegative(rest)) return {L, RationalMatrix(ambient.size())};
  const HomogeneousForm p = divisor_power_product(model, b);
  std::vector<Vector> rows;
  for (const auto& u : monomials(model, rest)) {
    Vector row(ambient.size(), Rational(0));
    for (const auto& [e, c] : p.terms) {
      ExponentVector t(e.size());
      for (std::size_t v = 0; v < t.size(); ++v) t[v] = e[v] + u[v];
      row[monomial_index(ambient, t)] = c;
    }
    rows.push_back(std::move(row));
  }
  return {L, canonicalize(RationalMatrix(ambient.size(), std::move(rows)))};
}

/// Coordinates of a form of multidegree L in the monomial basis of Γ(O(L)).
inline Vector coordinates(const MonomialModel& model, const HomogeneousForm& f) {
  model.validate_form(f, "section");
  const auto basis = monomials(model, f.degree);
  Vector v(basis.size(), Rational(0));
  for (const auto& [e, c] : f.terms) v[monomial_index(basis, e)] = c;
  return v;
}

/// Largest μ with s ∈ f_i^μ · Γ(O(L - μ deg D_i)).
inline long vanishing_order(const MonomialModel& model, const Multidegree& L, const Vector& s, std::size_t i) {
  if (i >= model.divisor_count()) throw DimensionMismatch("divisor index out of range");
  if (std::all_of(s.begin(), s.end(), [](const Rational& x) { return sgn(x) == 0; }))
    throw UndefinedOrder("vanishing order of the zero section is undefined");
  std::vector<long> b(model.divisor_count(), 0);
  long mu = 0;
  while (true) {
    b[i] = mu + 1;
    SectionSubspace next = section_space(model, L, b);
    if (next.dim() == 0 || !contains(next.basis, s)) return mu;
    ++mu;
  }
}

namespace detail {

/// Index of the single factor a linear form lives on, if the form is linear.
inline std::optional<std::size_t> linear_factor(const HomogeneousForm& f) {
  std::optional<std::size_t> where;
  for (std::size_t j = 0; j < f.degree.size(); ++j) {
    if (f.degree[j] == 0) continue;
    if (f.degree[j] != 1 || where) return std::nullopt;
    where = j;
  }
  return where;
}

inline bool all_linear(const MonomialModel& model, const IndexSet& I) {
  return std::all_of(I.begin(), I.end(),
                     [&](std::size_t i) { return linear_factor(model.divisors()[i].form).has_value(); });
}

/// Per factor, the rank of the coefficient vectors of the linear forms in J living on it.
inline std::vector<std::size_t> factor_ranks(const MonomialModel& model, const IndexSet& J) {
  std::vector<std::vector<Vector>> rows(model.factor_count());
  for (auto i : J) {
    const auto& f = model.divisors()[i].form;
    std::size_t j = *linear_factor(f);
    Vector v(static_cast<std::size_t>(model.factor_dims()[j]) + 1, Rational(0));
    for (const auto& [e, c] : f.terms)
      for (std::size_t k = 0; k < v.size(); ++k)
        if (e[model.offset(j) + k] == 1) v[k] = c;
    rows[j].push_back(std::move(v));
  }
  std::vector<std::size_t> ranks;
  for (std::size_t j = 0; j < rows.size(); ++j)
    ranks.push_back(rows[j].empty() ? 0 : rank(RationalMatrix(static_cast<std::size_t>(model.factor_dims()[j]) + 1, rows[j])));
  return ranks;
}

inline bool empty_locus(const MonomialModel& model, const std::vector<std::size_t>& ranks) {
  for (std::size_t j = 0; j < ranks.size(); ++j)
    if (ranks[j] == static_cast<std::size_t>(model.factor_dims()[j]) + 1) return true;
  return false;
}

inline IndexSet normalized(IndexSet I, const MonomialModel& model) {
  if (I.empty()) throw DomainError("divisor index set must be nonempty");
  std::sort(I.begin(), I.end());
  I.erase(std::unique(I.begin(), I.end()), I.end());
  if (I.back() >= model.divisor_count()) throw DimensionMismatch("divisor index out of range");
  return I;
}

}  // namespace detail

/// Whether the defining forms of {D_i : i ∈ I} form a regular sequence at every common zero.
///
/// Decided for linear forms: every subset J ⊆ I must cut out either the empty set or a
/// locus of codimension exactly |J|. Singletons are always proper. Otherwise the answer
/// comes from `assert_proper` declarations (a declared set covers its subsets).
inline Decision intersects_properly(const MonomialModel& model, IndexSet I) {
  I = detail::normalized(std::move(I), model);
  if (I.size() == 1) return Decision::yes;
  if (detail::all_linear(model, I)) {
    const std::size_t n = I.size();
    for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
      IndexSet J;
      for (std::size_t k = 0; k < n; ++k)
        if (mask & (1UL << k)) J.push_back(I[k]);
      auto ranks = detail::factor_ranks(model, J);
      if (detail::empty_locus(model, ranks)) continue;
      if (std::accumulate(ranks.begin(), ranks.end(), std::size_t{0}) != J.size()) return Decision::no;
    }
    return Decision::yes;
  }
  for (const auto& declared : model.asserted_proper())
    if (std::includes(declared.begin(), declared.end(), I.begin(), I.end())) return Decision::assumed;
  return Decision::undecided;
}

/// Whether every pair inside I intersects properly.
inline Decision pairwise_proper(const MonomialModel& model, IndexSet I) {
  I = detail::normalized(std::move(I), model);
  Decision out = Decision::yes;
  for (std::size_t a = 0; a < I.size(); ++a)
    for (std::size_t b = a + 1; b < I.size(); ++b) out = both(out, intersects_properly(model, {I[a], I[b]}));
  return out;
}

/// Whether ∩_{i∈I} D_i is empty. Decided for single divisors, for linear forms (some factor's forms reach full
/// rank) and, on a single P^d, for fewer than d+1 hypersurfaces (they always meet).
/// Otherwise taken from `assert_empty` declarations (a declared set covers its supersets).
inline Decision intersection_empty(const MonomialModel& model, IndexSet I) {
  I = detail::normalized(std::move(I), model);
  if (I.size() == 1) return Decision::no;  // a form of positive degree has zeros
  if (detail::all_linear(model, I))
    return detail::empty_locus(model, detail::factor_ranks(model, I)) ? Decision::yes : Decision::no;
  if (model.factor_count() == 1 && I.size() <= static_cast<std::size_t>(model.dimension())) return Decision::no;
  for (const auto& declared : model.asserted_empty())
    if (std::includes(I.begin(), I.end(), declared.begin(), declared.end())) return Decision::assumed;
  return Decision::undecided;
}

struct PositivityFlags {
  bool free = false;
  bool big = false;
  bool nef = false;
  bool almost_ample = false;
  bool acyclic = false;

  bool operator==(const PositivityFlags&) const = default;
};

/// Positivity of O(e) on the product of projective spaces (Künneth for acyclicity).
inline PositivityFlags positivity_flags(const MonomialModel& model, const Multidegree& e) {
  if (e.size() != model.factor_count()) throw DimensionMismatch("multidegree length differs from factor count");
  PositivityFlags f;
  f.free = f.nef = nonnegative(e);
  f.big = std::all_of(e.begin(), e.end(), [](long x) { return x > 0; });
  f.almost_ample = f.big;
  bool vanishing_factor = false;
  for (std::size_t j = 0; j < e.size(); ++j)
    if (e[j] <= -1 && e[j] >= -model.factor_dims()[j]) vanishing_factor = true;
  f.acyclic = f.free || vanishing_factor;
  return f;
}

/// multiple · Σ_i deg D_i.
inline Multidegree total_divisor_degree(const MonomialModel& model, long multiple = 1) {
  Multidegree out(model.factor_count(), 0);
  for (std::size_t i = 0; i < model.divisor_count(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += multiple * model.divisor_degree(i)[j];
  return out;
}

}  // namespace quasihyp
