#pragma once

// Command dispatch for the quasihyp tool. `run` never throws: errors become exit code 1
// with a diagnostic on the error stream.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quasihyp/bounds.hpp"
#include "quasihyp/certify.hpp"
#include "quasihyp/filtration.hpp"
#include "quasihyp/koszul.hpp"
#include "quasihyp/multiplicity.hpp"
#include "quasihyp/problem.hpp"
#include "quasihyp/report.hpp"

namespace quasihyp {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitNegative = 2 };

struct CliOptions {
  std::string problem;
  std::string format = "text";
  std::string out;
  std::optional<long> max_weight;
  std::optional<long> box_size;
  std::string theorem;
  std::string flavor = "arithmetic";
  std::string damping = "1/2";
  unsigned long seed = 0;
  std::optional<long> delta;
  std::optional<long> m;
  long samples = 64;
};

namespace detail {

struct Outcome {
  Json results;
  int code = kExitOk;
  std::string text;  // preformatted text view, if any
};

inline Multidegree default_L(const ProblemSpec& p, const CliOptions& o) {
  if (p.task.L) return *p.task.L;
  return total_divisor_degree(p.model(), o.m.value_or(p.task.m.value_or(1)));
}

inline NSClass default_L_class(const ProblemSpec& p, const CliOptions& o) {
  if (p.task.L) return class_of(*p.task.L);
  if (p.task.L_class) return *p.task.L_class;
  return Rational(o.m.value_or(p.task.m.value_or(1))) * divisor_sum(p.config);
}

template <class F>
Json guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return Json{{"error", e.what()}};
  }
}

inline Json labels_json(const ProblemSpec& p, const IndexSet& I) {
  Json out = Json::array();
  for (auto i : I) out.push_back(p.config.labels[i]);
  return out;
}

inline Outcome cmd_nu(const ProblemSpec& p, const CliOptions& o) {
  const auto& model = p.model();
  const Multidegree L = default_L(p, o);
  const long A = o.max_weight.value_or(p.task.max_weight.value_or(4));
  NuEstimate est = nu_truncated(model, L, A);
  return {Json{{"L", L}, {"nu", to_json(est, p.config.labels)}}, kExitOk, {}};
}

inline std::optional<long> smallest_delta(const Configuration& c) {
  for (long delta = 2; delta <= static_cast<long>(c.r()); ++delta)
    if (k_fold_empty(c, static_cast<std::size_t>(delta) + 1) != Decision::no) return delta;
  return std::nullopt;
}

inline Outcome cmd_bounds(const ProblemSpec& p, const CliOptions& o) {
  const auto& c = p.config;
  Json res;
  const NSClass Lc = default_L_class(p, o);
  res["L"] = to_json(Lc.coords);
  if (p.geometric()) {
    const auto& model = p.model();
    const Multidegree L = default_L(p, o);
    Json alphas = Json::array();
    for (std::size_t i = 0; i < c.r(); ++i)
      alphas.push_back(guarded([&] { return Json{{"divisor", c.labels[i]}, {"value", to_string(alpha(model, L, i))}}; }));
    res["alpha"] = alphas;
    auto delta = o.delta ? o.delta : p.task.delta ? p.task.delta : smallest_delta(c);
    if (c.r() >= 2 && delta) res["pairwise_alpha"] = guarded([&] { return to_json(bound_prop41(model, L, *delta)); });
  }
  Json slopes = Json::array();
  for (std::size_t i = 0; i < c.r(); ++i)
    slopes.push_back(guarded([&] {
      Json j = to_json(bound_cor43(c.lattice, Lc, c.divisors[i]));
      j["divisor"] = c.labels[i];
      return j;
    }));
  res["alpha_slope"] = slopes;

  std::vector<IndexSet> meeting = p.geometric() ? meeting_subsets(p.model()) : p.meeting_subsets;
  std::optional<Rational> theta = p.task.theta;
  if (!theta) {
    Json chosen = guarded([&] {
      ThetaResult t = max_theta(c.lattice, Lc, c.divisors, ThetaMode::per_subset, meeting);
      theta = t.theta;
      return Json{{"theta", to_string(t.theta)}, {"exceeds_one", t.exceeds_one}, {"note", t.note}};
    });
    res["theta_choice"] = chosen;
  }
  if (theta) {
    res["theta"] = to_string(*theta);
    res["theta_nef"] = guarded([&] { return to_json(bound_thm54(c.lattice, Lc, c.divisors, *theta, meeting)); });
    res["lambda_theta"] = guarded([&] { return to_json(bound_cor55(c.d(), *theta)); });
  }
  return {res, kExitOk, {}};
}

inline Outcome cmd_multiplicities(const ProblemSpec& p, const CliOptions& o) {
  const auto& c = p.config;
  FixedPointOptions opt;
  opt.damping = parse_rational(o.damping);
  FixedPointResult fp = find_fixed_point(c.lattice.form, c.divisors, opt);
  Json res = to_json(fp);
  if (sgn(fp.residual) == 0) {
    const NSClass L = detail::combination(c.divisors, fp.point.t);
    const Rational lhs = phi(c.lattice.form, c.divisors, fp.point) * Rational(static_cast<long>(c.r()));
    const Rational rhs = intersect_powers(c.lattice.form, L, c.d(), L, 0);
    res["phi_identity"] = {{"r_phi", to_string(lhs)}, {"top_self_intersection", to_string(rhs)}, {"holds", lhs == rhs}};
  }
  return {res, fp.verified ? kExitOk : kExitNegative, {}};
}

inline Outcome cmd_koszul(const ProblemSpec& p, const CliOptions& o) {
  const auto& model = p.model();
  const std::size_t r = model.divisor_count();
  const Multidegree L = default_L(p, o);
  const long M = o.box_size.value_or(p.task.box_size.value_or(1));
  const std::vector<long> a = p.task.weights.value_or(std::vector<long>(r, 1));
  bool ok = true;
  Json res{{"L", L}, {"box_size", M}, {"weights", a}};

  const auto elements = box_elements(M, r);
  Json l51;
  if (elements.size() <= 4096) {
    Lemma51Sweep sweep = verify_lemma51_all(model, L, M);
    Json fails = Json::array();
    for (const auto& b : sweep.failures) fails.push_back(b);
    l51 = {{"mode", "exhaustive"}, {"boxes", sweep.boxes}, {"failures", fails}, {"holds", sweep.ok()}};
    ok = ok && sweep.ok();
  } else {
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<std::size_t> pick(0, elements.size() - 1);
    Json fails = Json::array();
    for (long s = 0; s < o.samples; ++s) {
      const auto& b = elements[pick(rng)];
      if (!verify_lemma51_sections(model, L, BoxIndex{M, b})) fails.push_back(b);
    }
    l51 = {{"mode", "sampled"}, {"seed", o.seed}, {"boxes", o.samples}, {"failures", fails}, {"holds", fails.empty()}};
    ok = ok && fails.empty();
  }
  res["regular_sequence_inclusion"] = l51;

  Lemma52Values v = bound_lemma52(model, L, a, M);
  res["filtration_bound"] = {{"bound", v.bound.get_str()}, {"direct", v.direct.get_str()}, {"holds", v.holds()}};
  ok = ok && v.holds();
  try {
    Prop53Result pr = bound_prop53(model, L, a, M);
    Json fails = Json::array();
    for (const auto& b : pr.identity_failures) fails.push_back(b);
    const bool dominated = v.direct >= pr.value;
    res["acyclic_closed_form"] = {{"value", pr.value.get_str()},
                                  {"direct", v.direct.get_str()},
                                  {"direct_at_least_value", dominated},
                                  {"proper", to_string(pr.proper)},
                                  {"boxes_checked", pr.boxes_checked},
                                  {"identity_failures", fails},
                                  {"identity_holds", pr.identity_holds()}};
    ok = ok && pr.identity_holds() && (pr.proper == Decision::no || dominated);
  } catch (const PreconditionFailure& e) {
    res["acyclic_closed_form"] = {{"precondition_failure", e.what()}};
  }
  return {res, ok ? kExitOk : kExitNegative, {}};
}

inline Flavor parse_flavor(const std::string& s) {
  if (s == "arithmetic") return Flavor::arithmetic;
  if (s == "analytic") return Flavor::analytic;
  throw MalformedInput("unknown flavor '" + s + "'");
}

inline Outcome cmd_certify(const ProblemSpec& p, const CliOptions& o) {
  const Flavor flavor = parse_flavor(o.flavor);
  const long delta = o.delta.value_or(p.task.delta.value_or(2));
  FixedPointOptions fpo;
  fpo.damping = parse_rational(o.damping);
  Certificate cert;
  if (o.theorem == "3.3") {
    cert = certify_criterion(p.model(), o.m.value_or(p.task.m.value_or(1)), flavor);
  } else if (o.theorem == "2.1") {
    cert = certify_thm21_pipeline(p.config, delta, fpo).certificate;
    cert.flavor = flavor;
  } else if (o.theorem == "1.1") {
    cert = certify_thm11(p.config, delta, flavor, fpo);
  } else if (o.theorem == "1.2") {
    cert = certify_thm12(p.config, flavor);
  } else if (o.theorem == "2.2") {
    cert = certify_thm22(p.config, p.task.theta, flavor);
  } else {
    throw MalformedInput("unknown theorem id '" + o.theorem + "' (expected 3.3, 2.1, 1.1, 1.2 or 2.2)");
  }
  Json res{{"certificate", to_json(cert)}, {"self_check", self_check(cert)}};
  return {res, cert.verdict == Verdict::not_certified ? kExitNegative : kExitOk, render_text(cert)};
}

inline Outcome cmd_verify_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open report '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(path + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.contains("results") || !j["results"].contains("certificate"))
    throw MalformedInput(path + ": report carries no certificate");
  Certificate cert = certificate_from_json(j["results"]["certificate"]);
  const bool ok = self_check(cert);
  Json res{{"verdict", to_string(cert.verdict)}, {"rederived_verdict", to_string(derive_verdict(cert))}, {"self_check", ok}};
  return {res, ok ? (cert.verdict == Verdict::not_certified ? kExitNegative : kExitOk) : kExitNegative, {}};
}

inline void emit(const std::string& text, const CliOptions& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw MalformedInput("cannot write '" + o.out + "'");
  f << text;
}

}  // namespace detail

/// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact computations and certificates for divisor configurations", "quasihyp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  CliOptions o;
  std::string damping_text = o.damping;

  auto common = [&](CLI::App* sub) {
    sub->add_option("problem", o.problem, "Problem file (JSON)")->required();
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", o.out, "Write the report to this path");
    sub->add_option("-m", o.m, "Multiple m of the divisor sum (default from the task, else 1)");
  };
  auto* nu = app.add_subcommand("nu", "Truncated exploration of the filtration invariant (upper estimate)");
  common(nu);
  nu->add_option("--max-weight", o.max_weight, "Weight cap A")->check(CLI::PositiveNumber);
  auto* bounds = app.add_subcommand("bounds", "Closed-form lower bounds");
  common(bounds);
  bounds->add_option("--delta", o.delta, "Multiplicity bound for the pairwise route")->check(CLI::Range(2L, 1000000L));
  auto* mult = app.add_subcommand("multiplicities", "Fixed-point choice of multiplicities");
  common(mult);
  mult->add_option("--damping", o.damping, "Damping factor P/Q in (0,1]");
  auto* kos = app.add_subcommand("koszul-verify", "Box checks of the Koszul-type inclusions and counts");
  common(kos);
  kos->add_option("--box-size", o.box_size, "Box size m")->check(CLI::NonNegativeNumber);
  kos->add_option("--seed", o.seed, "Seed for sampled checks on large boxes");
  kos->add_option("--samples", o.samples, "Number of sampled boxes")->check(CLI::PositiveNumber);
  auto* cert = app.add_subcommand("certify", "Assemble a certificate");
  common(cert);
  cert->add_option("--theorem", o.theorem, "3.3, 2.1, 1.1, 1.2 or 2.2")->required();
  cert->add_option("--flavor", o.flavor, "arithmetic or analytic")->check(CLI::IsMember({"arithmetic", "analytic"}));
  cert->add_option("--delta", o.delta, "delta for 2.1 / 1.1")->check(CLI::Range(1L, 1000000L));
  cert->add_option("--damping", o.damping, "Damping factor P/Q in (0,1]");
  auto* verify = app.add_subcommand("verify-report", "Re-check a certificate report");
  verify->add_option("report", o.problem, "Report file (JSON)")->required();
  verify->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolName << " " << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    detail::Outcome result;
    std::string digest;
    CLI::App* chosen = app.get_subcommands().front();
    const std::string command = chosen->get_name();
    if (command == "verify-report") {
      result = detail::cmd_verify_report(o.problem);
    } else {
      ProblemSpec p = load_problem(o.problem);
      digest = input_digest(p);
      if (command == "nu") result = detail::cmd_nu(p, o);
      else if (command == "bounds") result = detail::cmd_bounds(p, o);
      else if (command == "multiplicities") result = detail::cmd_multiplicities(p, o);
      else if (command == "koszul-verify") result = detail::cmd_koszul(p, o);
      else result = detail::cmd_certify(p, o);
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.format == "json") {
      Json report = report_envelope(command, digest);
      report["results"] = result.results;
      report["exit_code"] = result.code;
      report["timing_ms"] = static_cast<long>(ms);
      detail::emit(report.dump(2) + "\n", o, out);
    } else {
      std::string text = std::string(kToolName) + " " + kToolVersion + "  " + command;
      if (!digest.empty()) text += "  input " + digest;
      text += "\n" + (result.text.empty() ? render_json_text(result.results) : result.text);
      detail::emit(text, o, out);
    }
    return result.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace quasihyp
