#pragma once

// JSON and text rendering of results. Every number crossing the interface is an exact
// rational written as a "p/q" string.

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quasihyp/bounds.hpp"
#include "quasihyp/certify.hpp"
#include "quasihyp/filtration.hpp"
#include "quasihyp/hypothesis.hpp"
#include "quasihyp/koszul.hpp"
#include "quasihyp/multiplicity.hpp"
#include "quasihyp/problem.hpp"
#include "quasihyp/rational.hpp"

namespace quasihyp {

inline constexpr const char* kToolName = "quasihyp";
inline constexpr const char* kToolVersion = "1.0.0";

inline Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

inline Json to_json(const Hypothesis& h) {
  return {{"name", h.name}, {"status", to_string(h.status)}, {"evidence", h.evidence}};
}

inline Json to_json(const BoundValue& b) {
  Json hyps = Json::array();
  for (const auto& h : b.hypotheses) hyps.push_back(to_json(h));
  return {{"value", to_string(b.value)},
          {"source", b.source},
          {"asymptotic", b.asymptotic},
          {"conditional", b.conditional()},
          {"hypotheses", hyps}};
}

inline Json to_json(const NuEstimate& e, const std::vector<std::string>& labels) {
  Json subset = Json::array();
  for (auto i : e.witness.I) subset.push_back(labels.at(i));
  return {{"value", to_string(e.value)},
          {"kind", "upper-estimate"},
          {"witness", {{"subset", subset}, {"weights", e.witness.a}}},
          {"weight_cap", e.weight_cap},
          {"cells", e.cells},
          {"notes", e.notes}};
}

inline Json to_json(const FixedPointResult& r) {
  return {{"point", to_json(r.point.t)},
          {"residual", to_string(r.residual)},
          {"rounded", to_json(r.rounded.t)},
          {"multiplicities", r.multiplicities},
          {"denominator", r.denominator},
          {"verified", r.verified},
          {"iterations", r.iterations},
          {"method", r.method}};
}

inline Json to_json(const ChainStep& s) {
  Json out{{"lhs", s.lhs}, {"relation", s.relation}, {"rhs", s.rhs}, {"source", s.source}, {"asymptotic", s.asymptotic}};
  out["lhs_value"] = s.lhs_value ? Json(to_string(*s.lhs_value)) : Json(nullptr);
  out["rhs_value"] = s.rhs_value ? Json(to_string(*s.rhs_value)) : Json(nullptr);
  return out;
}

inline Json to_json(const Certificate& c) {
  Json hyps = Json::array(), chain = Json::array();
  for (const auto& h : c.hypotheses) hyps.push_back(to_json(h));
  for (const auto& s : c.chain) chain.push_back(to_json(s));
  return {{"theorem", c.theorem},   {"flavor", to_string(c.flavor)}, {"hypotheses", hyps},
          {"chain", chain},         {"verdict", to_string(c.verdict)}, {"conclusion", c.conclusion},
          {"notes", c.notes}};
}

namespace detail {

inline Status status_from(const std::string& s) {
  if (s == "verified") return Status::verified;
  if (s == "assumed") return Status::assumed;
  if (s == "failed") return Status::failed;
  throw MalformedInput("unknown hypothesis status '" + s + "'");
}

inline Verdict verdict_from(const std::string& s) {
  if (s == "certified") return Verdict::certified;
  if (s == "certified-with-assumptions") return Verdict::certified_with_assumptions;
  if (s == "not-certified") return Verdict::not_certified;
  throw MalformedInput("unknown verdict '" + s + "'");
}

inline std::optional<Rational> optional_rational(const Json& v) {
  if (v.is_null()) return std::nullopt;
  return parse_rational(v.get<std::string>());
}

}  // namespace detail

/// Inverse of to_json(Certificate); values are re-parsed, nothing is recomputed.
inline Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    c.theorem = j.at("theorem").get<std::string>();
    const auto flavor = j.at("flavor").get<std::string>();
    if (flavor != "arithmetic" && flavor != "analytic") throw MalformedInput("unknown flavor '" + flavor + "'");
    c.flavor = flavor == "arithmetic" ? Flavor::arithmetic : Flavor::analytic;
    for (const auto& h : j.at("hypotheses"))
      c.hypotheses.push_back({h.at("name").get<std::string>(), detail::status_from(h.at("status").get<std::string>()),
                              h.at("evidence").get<std::string>()});
    for (const auto& s : j.at("chain")) {
      ChainStep step{s.at("lhs").get<std::string>(),
                     s.at("relation").get<std::string>(),
                     s.at("rhs").get<std::string>(),
                     detail::optional_rational(s.at("lhs_value")),
                     detail::optional_rational(s.at("rhs_value")),
                     s.at("source").get<std::string>(),
                     s.at("asymptotic").get<bool>()};
      c.chain.push_back(std::move(step));
    }
    c.verdict = detail::verdict_from(j.at("verdict").get<std::string>());
    c.conclusion = j.at("conclusion").get<std::string>();
    c.notes = j.at("notes").get<std::vector<std::string>>();
    return c;
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("malformed certificate: ") + e.what());
  }
}

inline Json report_envelope(const std::string& command, const std::string& digest) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"input_digest", digest}};
}

inline std::string render_text(const Certificate& c) {
  std::ostringstream out;
  out << "theorem " << c.theorem << " (" << to_string(c.flavor) << ")\n";
  out << "hypotheses:\n";
  for (const auto& h : c.hypotheses) out << "  [" << to_string(h.status) << "] " << h.name << " : " << h.evidence << "\n";
  out << "chain:\n";
  for (const auto& s : c.chain)
    out << "  " << s.lhs << " " << s.relation << " " << s.rhs << "  {" << s.source << (s.asymptotic ? ", asymptotic" : "")
        << "}\n";
  for (const auto& n : c.notes) out << "note: " << n << "\n";
  out << "verdict: " << to_string(c.verdict) << "\n";
  if (!c.conclusion.empty()) out << "conclusion: " << c.conclusion << "\n";
  return out.str();
}

/// Generic text view of a JSON result: one `path: value` line per leaf.
inline void render_json_text(const Json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_json_text(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) render_json_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline std::string render_json_text(const Json& j) {
  std::ostringstream out;
  render_json_text(j, "", out);
  return out.str();
}

}  // namespace quasihyp
