#pragma once

// Certificates: hypothesis records plus an inequality chain whose exact steps can be
// re-evaluated from the recorded values, and a verdict derived from both.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasihyp/bounds.hpp"
#include "quasihyp/errors.hpp"
#include "quasihyp/filtration.hpp"
#include "quasihyp/geometry.hpp"
#include "quasihyp/hypothesis.hpp"
#include "quasihyp/koszul.hpp"
#include "quasihyp/lattice.hpp"
#include "quasihyp/multiplicity.hpp"

namespace quasihyp {

enum class Flavor { arithmetic, analytic };
enum class Verdict { certified, certified_with_assumptions, not_certified };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::certified_with_assumptions: return "certified-with-assumptions";
    case Verdict::not_certified: return "not-certified";
  }
  return "?";
}

inline const char* to_string(Flavor f) { return f == Flavor::arithmetic ? "arithmetic" : "analytic"; }

/// One link `lhs relation rhs`. Steps carrying both values are exact and re-checkable;
/// asymptotic steps quote a limit statement and carry at most the bound's value.
struct ChainStep {
  std::string lhs;
  std::string relation;  // one of ">", ">=", "=", "<=", "<"
  std::string rhs;
  std::optional<Rational> lhs_value;
  std::optional<Rational> rhs_value;
  std::string source;
  bool asymptotic = false;

  bool exact() const { return lhs_value.has_value() && rhs_value.has_value(); }
};

inline bool evaluate_relation(const Rational& a, const std::string& rel, const Rational& b) {
  if (rel == ">") return a > b;
  if (rel == ">=") return a >= b;
  if (rel == "=") return a == b;
  if (rel == "<=") return a <= b;
  if (rel == "<") return a < b;
  throw MalformedInput("unknown relation '" + rel + "'");
}

struct Certificate {
  std::string theorem;
  Flavor flavor = Flavor::arithmetic;
  std::vector<Hypothesis> hypotheses;
  std::vector<ChainStep> chain;
  Verdict verdict = Verdict::not_certified;
  std::string conclusion;
  std::vector<std::string> notes;
};

/// Verdict implied by the records: a failed hypothesis or a false exact step refutes,
/// an assumed hypothesis downgrades.
inline Verdict derive_verdict(const Certificate& c) {
  bool assumed = false;
  for (const auto& h : c.hypotheses) {
    if (h.status == Status::failed) return Verdict::not_certified;
    if (h.status == Status::assumed) assumed = true;
  }
  for (const auto& s : c.chain)
    if (s.exact() && !evaluate_relation(*s.lhs_value, s.relation, *s.rhs_value)) return Verdict::not_certified;
  return assumed ? Verdict::certified_with_assumptions : Verdict::certified;
}

/// Re-evaluates every exact step and the verdict from the recorded data.
inline bool self_check(const Certificate& c) {
  for (const auto& s : c.chain)
    if (s.exact() && !evaluate_relation(*s.lhs_value, s.relation, *s.rhs_value) &&
        c.verdict != Verdict::not_certified)
      return false;
  return derive_verdict(c) == c.verdict;
}

/// Divisor data common to geometric models and bare lattices.
struct Configuration {
  std::optional<MonomialModel> model;
  NSLattice lattice;
  std::vector<std::string> labels;
  std::vector<NSClass> divisors;
  std::vector<IndexSet> declared_proper;
  std::vector<IndexSet> declared_empty;

  std::size_t r() const noexcept { return divisors.size(); }
  int d() const noexcept { return lattice.dimension(); }
};

inline Configuration configuration_of(const MonomialModel& model) {
  Configuration c{model, product_lattice(model), {}, {}, model.asserted_proper(), model.asserted_empty()};
  for (std::size_t i = 0; i < model.divisor_count(); ++i) {
    c.labels.push_back(model.divisors()[i].label);
    c.divisors.push_back(divisor_class(model, i));
  }
  return c;
}

inline Decision proper_decision(const Configuration& c, const IndexSet& I) {
  if (c.model) return intersects_properly(*c.model, I);
  if (I.size() == 1) return Decision::yes;
  IndexSet s = I;
  std::sort(s.begin(), s.end());
  for (const auto& decl : c.declared_proper)
    if (std::includes(decl.begin(), decl.end(), s.begin(), s.end())) return Decision::assumed;
  return Decision::undecided;
}

inline Decision pairwise_decision(const Configuration& c) {
  Decision out = Decision::yes;
  for (std::size_t a = 0; a < c.r(); ++a)
    for (std::size_t b = a + 1; b < c.r(); ++b) out = both(out, proper_decision(c, {a, b}));
  return out;
}

inline Decision all_proper_decision(const Configuration& c) {
  IndexSet all(c.r());
  for (std::size_t i = 0; i < c.r(); ++i) all[i] = i;
  return proper_decision(c, all);
}

inline Decision empty_decision(const Configuration& c, const IndexSet& I) {
  if (c.model) return intersection_empty(*c.model, I);
  IndexSet s = I;
  std::sort(s.begin(), s.end());
  for (const auto& decl : c.declared_empty)
    if (std::includes(s.begin(), s.end(), decl.begin(), decl.end())) return Decision::assumed;
  return Decision::undecided;
}

/// Every k-element subset has empty intersection.
inline Decision k_fold_empty(const Configuration& c, std::size_t k) {
  const std::size_t r = c.r();
  if (k > r) return Decision::yes;
  if (r > 20) throw SizeError("too many divisors to enumerate subsets");
  Decision out = Decision::yes;
  std::vector<bool> pick(r, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    IndexSet I;
    for (std::size_t i = 0; i < r; ++i)
      if (pick[i]) I.push_back(i);
    out = both(out, empty_decision(c, I));
  } while (std::prev_permutation(pick.begin(), pick.end()) && out != Decision::no);
  return out;
}

inline ClaimStatus divisor_ample(const Configuration& c, std::size_t i) { return ample_status(c.lattice, c.divisors[i]); }

/// Ampleness of a positive combination of the divisors: the weakest status among the
/// summands with positive weight (a positive sum of ample classes is ample).
inline ClaimStatus combination_ample(const Configuration& c, const std::vector<Rational>& weights) {
  NSClass L = NSClass::zero(c.lattice.rank());
  for (std::size_t i = 0; i < c.r(); ++i) L += weights[i] * c.divisors[i];
  ClaimStatus direct = ample_status(c.lattice, L);
  if (direct != ClaimStatus::failed) return direct;
  ClaimStatus out = ClaimStatus::verified;
  bool any = false;
  for (std::size_t i = 0; i < c.r(); ++i) {
    if (sgn(weights[i]) <= 0) continue;
    any = true;
    ClaimStatus s = divisor_ample(c, i);
    if (s == ClaimStatus::failed) return ClaimStatus::failed;
    if (s == ClaimStatus::assumed) out = ClaimStatus::assumed;
  }
  return any ? out : ClaimStatus::failed;
}

inline NSClass divisor_sum(const Configuration& c) {
  NSClass L = NSClass::zero(c.lattice.rank());
  for (const auto& D : c.divisors) L += D;
  return L;
}

inline std::string quasi_hyperbolic_conclusion(Flavor f) {
  return f == Flavor::arithmetic ? "Y = X - (D_1 u ... u D_r) is arithmetically quasi-hyperbolic"
                                 : "Y = X - (D_1 u ... u D_r) is Brody quasi-hyperbolic";
}

inline void finalize(Certificate& cert) { cert.verdict = derive_verdict(cert); }

inline void append_hypotheses(Certificate& cert, const BoundValue& b, const std::string& prefix) {
  for (auto h : b.hypotheses) {
    h.name = prefix + h.name;
    cert.hypotheses.push_back(std::move(h));
  }
}

/// The ν-criterion: L = mΣD_i free and big, pairwise proper, and ν(L) > m through a certified
/// lower bound (pairwise-α or Koszul route, whichever is larger among those whose hypotheses
/// hold). The truncated ν exploration is never consulted.
inline Certificate certify_criterion(const MonomialModel& model, long m, Flavor flavor = Flavor::arithmetic) {
  if (m < 1) throw DomainError("m must be >= 1");
  Certificate cert;
  cert.theorem = flavor == Flavor::arithmetic ? "3.3" : "3.5";
  cert.flavor = flavor;
  const std::size_t r = model.divisor_count();
  const Multidegree L = total_divisor_degree(model, m);
  IndexSet all(r);
  for (std::size_t i = 0; i < r; ++i) all[i] = i;
  const Decision pairwise = r >= 2 ? pairwise_proper(model, all) : Decision::yes;
  cert.hypotheses.push_back({"pairwise proper intersection", status_of(pairwise), to_string(pairwise)});
  const auto flags = positivity_flags(model, L);
  cert.hypotheses.push_back({"L = m*sum(D_i) free", status_of(flags.free), "multidegree nonnegative"});
  cert.hypotheses.push_back({"L = m*sum(D_i) big", status_of(flags.big), "multidegree positive"});

  std::vector<BoundValue> routes;
  if (r >= 2) {
    for (long delta = 2; delta <= static_cast<long>(r); ++delta) {
      BoundValue b = bound_prop41(model, L, delta);
      if (!b.failed() || delta == static_cast<long>(r)) {
        b.source += " (delta=" + std::to_string(delta) + ")";
        routes.push_back(std::move(b));
        break;
      }
    }
  }
  routes.push_back(koszul_nu_bound(model, L));
  auto usable = [](const BoundValue& b) { return !b.failed(); };
  const BoundValue* chosen = nullptr;
  for (const auto& b : routes)
    if (usable(b) && (!chosen || b.value > chosen->value)) chosen = &b;
  if (!chosen)
    for (const auto& b : routes)
      if (!chosen || b.value > chosen->value) chosen = &b;

  append_hypotheses(cert, *chosen, "[" + chosen->source + "] ");
  cert.chain.push_back({"nu(L; D_1..D_r)", ">=", to_string(chosen->value), std::nullopt, chosen->value,
                        chosen->source, false});
  cert.chain.push_back({to_string(chosen->value), ">", "m = " + std::to_string(m), chosen->value, Rational(m),
                        chosen->source, false});
  cert.conclusion = quasi_hyperbolic_conclusion(flavor);
  finalize(cert);
  if (cert.verdict == Verdict::not_certified) cert.conclusion.clear();
  return cert;
}

struct PipelineData {
  Certificate certificate;
  FixedPointResult fixed_point;
};

/// Multiplicities from the fixed point, α slopes of each m_iD_i above r/(2d), and the
/// pairwise-α transfer to ν above r/(dδ).
inline PipelineData certify_thm21_pipeline(const Configuration& c, long delta, const FixedPointOptions& opt = {}) {
  PipelineData out;
  Certificate& cert = out.certificate;
  cert.theorem = "2.1";
  const std::size_t r = c.r();
  const int d = c.d();
  cert.hypotheses.push_back({"d >= 2", status_of(d >= 2), "d = " + std::to_string(d)});
  cert.hypotheses.push_back({"2 <= delta <= r", status_of(delta >= 2 && delta <= static_cast<long>(r)),
                             "delta = " + std::to_string(delta) + ", r = " + std::to_string(r)});
  for (std::size_t i = 0; i < r; ++i)
    cert.hypotheses.push_back({c.labels[i] + " almost ample", status_of(divisor_ample(c, i)), "lattice positivity"});
  const Decision pairwise = pairwise_decision(c);
  cert.hypotheses.push_back({"pairwise proper intersection", status_of(pairwise), to_string(pairwise)});
  const Decision empties = delta >= 1 ? k_fold_empty(c, static_cast<std::size_t>(delta) + 1) : Decision::no;
  cert.hypotheses.push_back({"every (delta+1)-fold intersection empty", status_of(empties), to_string(empties)});

  try {
    out.fixed_point = find_fixed_point(c.lattice.form, c.divisors, opt);
  } catch (const Degenerate& e) {
    cert.hypotheses.push_back({"multiplicity search", Status::failed, e.what()});
    finalize(cert);
    return out;
  }
  const auto& fp = out.fixed_point;
  std::string mult;
  for (std::size_t i = 0; i < fp.multiplicities.size(); ++i)
    mult += (i ? "," : "") + std::to_string(fp.multiplicities[i]);
  cert.hypotheses.push_back({"multiplicities verified", status_of(fp.verified),
                             fp.verified ? "m = (" + mult + "), method " + fp.method : "no verified rounding"});
  if (!fp.verified || d < 2) {
    finalize(cert);
    return out;
  }

  NSClass L = NSClass::zero(c.lattice.rank());
  for (std::size_t i = 0; i < r; ++i) L += Rational(fp.multiplicities[i]) * c.divisors[i];
  const Rational half_threshold = ratio(static_cast<long>(r), 2L * d);
  std::optional<Rational> least;
  for (std::size_t i = 0; i < r; ++i) {
    NSClass E = Rational(fp.multiplicities[i]) * c.divisors[i];
    BoundValue slope = bound_cor43(c.lattice, L, E);
    append_hypotheses(cert, slope, "[" + c.labels[i] + "] ");
    const std::string name = "liminf alpha(nL; " + std::to_string(fp.multiplicities[i]) + "*" + c.labels[i] + ")/n";
    cert.chain.push_back({name, ">=", to_string(slope.value), std::nullopt, slope.value, kSourceAlphaSlope, true});
    cert.chain.push_back({to_string(slope.value), ">", "r/(2d) = " + to_string(half_threshold), slope.value,
                          half_threshold, kSourceAlphaSlope, false});
    if (!least || slope.value < *least) least = slope.value;
  }
  const Rational transferred = ratio(2, delta) * *least;
  const Rational target = ratio(static_cast<long>(r), static_cast<long>(d) * delta);
  cert.chain.push_back({"liminf nu(nL; m_1 D_1..m_r D_r)/n", ">=", "(2/delta)*min slope = " + to_string(transferred),
                        std::nullopt, transferred, kSourcePairwiseAlpha, true});
  cert.chain.push_back({to_string(transferred), ">", "r/(d*delta) = " + to_string(target), transferred, target,
                        kSourcePairwiseAlpha, false});
  cert.conclusion = "liminf (1/n) nu(nL; m_1 D_1, ..., m_r D_r) > r/(d*delta) with L = sum m_i D_i";
  finalize(cert);
  if (cert.verdict == Verdict::not_certified) cert.conclusion.clear();
  return out;
}

inline ChainStep criterion_step() {
  return {"nu(nL; ...)", ">", "n for all n large", std::nullopt, std::nullopt, "criterion", true};
}

/// The pipeline instantiated with r = dδ, closed by the ν-criterion for large n.
inline Certificate certify_thm11(const Configuration& c, long delta, Flavor flavor = Flavor::arithmetic,
                                 const FixedPointOptions& opt = {}) {
  Certificate cert = certify_thm21_pipeline(c, delta, opt).certificate;
  cert.theorem = "1.1";
  cert.flavor = flavor;
  const long dd = static_cast<long>(c.d()) * delta;
  cert.hypotheses.push_back({"r = d*delta", status_of(static_cast<long>(c.r()) == dd),
                             "r = " + std::to_string(c.r()) + ", d*delta = " + std::to_string(dd)});
  cert.chain.push_back({"r/(d*delta)", "=", "1", ratio(static_cast<long>(c.r()), dd), Rational(1), "arity", false});
  cert.chain.push_back(criterion_step());
  cert.conclusion = quasi_hyperbolic_conclusion(flavor);
  finalize(cert);
  if (cert.verdict == Verdict::not_certified) cert.conclusion.clear();
  return cert;
}

/// ν slope >= λ_dθ when L = ΣD_i is ample, the D_i are nonzero nef and proper, and L − dθD_i is nef.
/// θ defaults to the largest admissible value.
inline Certificate certify_thm22(const Configuration& c, std::optional<Rational> theta = std::nullopt,
                                 Flavor flavor = Flavor::arithmetic) {
  Certificate cert;
  cert.theorem = "2.2";
  cert.flavor = flavor;
  const int d = c.d();
  const NSClass L = divisor_sum(c);
  bool nef_nonzero = true;
  for (const auto& D : c.divisors) nef_nonzero = nef_nonzero && !D.is_zero() && is_nef(c.lattice.cone, D);
  cert.hypotheses.push_back({"every D_i nonzero and nef", status_of(nef_nonzero), "cone membership"});
  const Decision proper = all_proper_decision(c);
  cert.hypotheses.push_back({"proper intersection", status_of(proper), to_string(proper)});
  cert.hypotheses.push_back(
      {"L = sum(D_i) ample", status_of(combination_ample(c, Vector(c.r(), Rational(1)))), "lattice positivity"});
  if (!theta) {
    try {
      theta = max_theta(c.lattice, L, c.divisors, ThetaMode::d_times_single).theta;
      cert.notes.push_back("theta chosen as the largest value with L - d*theta*D_i nef");
    } catch (const Degenerate& e) {
      cert.hypotheses.push_back({"theta admissible", Status::failed, e.what()});
      finalize(cert);
      return cert;
    }
  }
  bool nef_all = true;
  for (const auto& D : c.divisors) nef_all = nef_all && is_nef(c.lattice.cone, L - Rational(d) * *theta * D);
  cert.hypotheses.push_back({"L - d*theta*D_i nef for every i", status_of(nef_all), "theta = " + to_string(*theta)});
  BoundValue lam = bound_cor55(d, *theta);
  append_hypotheses(cert, lam, "");
  const Rational nef_value = theta_nef_value(c.lattice.form, L, c.divisors, *theta);
  cert.chain.push_back({"theta-nef bound", ">=", "lambda_d*theta = " + to_string(lam.value), nef_value, lam.value,
                        kSourceThetaNef, false});
  cert.chain.push_back({"liminf nu(nL; D_1..D_r)/n", ">=", to_string(lam.value), std::nullopt, lam.value,
                        kSourceLambda, true});
  cert.conclusion = "liminf (1/n) nu(nL; D_1, ..., D_r) >= " + to_string(lam.value);
  if (lam.value > 1) {
    cert.chain.push_back({to_string(lam.value), ">", "1", lam.value, Rational(1), kSourceLambda, false});
    cert.chain.push_back(criterion_step());
    cert.conclusion += "; " + quasi_hyperbolic_conclusion(flavor);
  }
  finalize(cert);
  if (cert.verdict == Verdict::not_certified) cert.conclusion.clear();
  return cert;
}

/// r >= 2d ample proper divisors with L − 2dD_i nef: the θ = 2 case, 2λ_d > 1.
inline Certificate certify_thm12(const Configuration& c, Flavor flavor = Flavor::arithmetic) {
  Certificate cert;
  cert.theorem = "1.2";
  cert.flavor = flavor;
  const int d = c.d();
  const std::size_t r = c.r();
  cert.hypotheses.push_back({"d >= 2", status_of(d >= 2), "d = " + std::to_string(d)});
  cert.hypotheses.push_back({"r >= 2d", status_of(static_cast<long>(r) >= 2L * d),
                             "r = " + std::to_string(r) + ", 2d = " + std::to_string(2 * d)});
  for (std::size_t i = 0; i < r; ++i)
    cert.hypotheses.push_back({c.labels[i] + " ample", status_of(divisor_ample(c, i)), "lattice positivity"});
  const Decision proper = all_proper_decision(c);
  cert.hypotheses.push_back({"proper intersection", status_of(proper), to_string(proper)});
  const NSClass L = divisor_sum(c);
  bool nef_all = true;
  for (const auto& D : c.divisors) nef_all = nef_all && is_nef(c.lattice.cone, L - Rational(2 * d) * D);
  cert.hypotheses.push_back({"L - 2d*D_i nef for every i", status_of(nef_all), "cone membership"});

  const Rational theta = 2;
  BoundValue lam = bound_cor55(d, theta);
  cert.chain.push_back({"liminf nu(nL; D_1..D_r)/n", ">=", "2*lambda_d = " + to_string(lam.value), std::nullopt,
                        lam.value, kSourceLambda, true});
  cert.chain.push_back({to_string(lam.value), ">", "1", lam.value, Rational(1), kSourceLambda, false});
  cert.chain.push_back(criterion_step());
  cert.conclusion = quasi_hyperbolic_conclusion(flavor);
  finalize(cert);
  if (cert.verdict == Verdict::not_certified) cert.conclusion.clear();
  return cert;
}

}  // namespace quasihyp
