#pragma once

// Problem files: JSON describing a model (projective space, product of projective spaces or a
// bare Néron–Severi lattice), its divisors and declarations, plus task parameters.
// Errors carry a byte offset (syntax) or a JSON pointer (content).

#include <openssl/evp.h>

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "quasihyp/certify.hpp"
#include "quasihyp/errors.hpp"
#include "quasihyp/geometry.hpp"
#include "quasihyp/lattice.hpp"
#include "quasihyp/rational.hpp"

namespace quasihyp {

using Json = nlohmann::json;

struct TaskParams {
  std::optional<Multidegree> L;  // geometric models
  std::optional<NSClass> L_class;  // lattice models
  std::optional<long> m;
  std::optional<long> delta;
  std::optional<Rational> theta;
  std::optional<long> max_weight;
  std::optional<long> box_size;
  std::optional<std::vector<long>> weights;
};

struct ProblemSpec {
  std::string kind;  // "projective_space", "product" or "ns_lattice"
  Configuration config;
  std::vector<IndexSet> meeting_subsets;  // lattice models only
  TaskParams task;

  bool geometric() const noexcept { return config.model.has_value(); }
  const MonomialModel& model() const {
    if (!config.model) throw DomainError("this command needs a geometric model, not an ns_lattice");
    return *config.model;
  }
};

namespace detail {

class Reader {
 public:
  [[noreturn]] static void fail(const Json::json_pointer& at, const std::string& msg) {
    std::string where = at.to_string();
    throw MalformedInput("at " + (where.empty() ? std::string("/") : where) + ": " + msg);
  }

  static const Json& field(const Json& obj, const Json::json_pointer& at, const char* key) {
    if (!obj.is_object()) fail(at, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(at, std::string("missing field '") + key + "'");
    return *it;
  }

  static const Json* optional_field(const Json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
  }

  static long integer(const Json& v, const Json::json_pointer& at) {
    if (!v.is_number_integer()) fail(at, "expected an integer");
    return v.get<long>();
  }

  static Rational rational(const Json& v, const Json::json_pointer& at) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (!v.is_string()) fail(at, "expected a rational as an integer or a \"p/q\" string");
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
      fail(at, e.what());
    }
  }

  static const Json& array(const Json& v, const Json::json_pointer& at) {
    if (!v.is_array()) fail(at, "expected an array");
    return v;
  }

  static std::vector<long> integers(const Json& v, const Json::json_pointer& at) {
    std::vector<long> out;
    std::size_t k = 0;
    for (const auto& x : array(v, at)) out.push_back(integer(x, at / k++));
    return out;
  }

  static Vector rationals(const Json& v, const Json::json_pointer& at) {
    Vector out;
    std::size_t k = 0;
    for (const auto& x : array(v, at)) out.push_back(rational(x, at / k++));
    return out;
  }
};

inline std::size_t label_index(const std::vector<std::string>& labels, const Json& v, const Json::json_pointer& at) {
  if (v.is_number_integer()) {
    long i = v.get<long>();
    if (i < 1 || static_cast<std::size_t>(i) > labels.size()) Reader::fail(at, "divisor number out of range");
    return static_cast<std::size_t>(i - 1);
  }
  if (!v.is_string()) Reader::fail(at, "expected a divisor label");
  auto it = std::find(labels.begin(), labels.end(), v.get<std::string>());
  if (it == labels.end()) Reader::fail(at, "unknown divisor label '" + v.get<std::string>() + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

inline std::vector<IndexSet> label_sets(const Json* v, const std::vector<std::string>& labels,
                                        const Json::json_pointer& at) {
  std::vector<IndexSet> out;
  if (!v) return out;
  std::size_t k = 0;
  for (const auto& set : Reader::array(*v, at)) {
    auto here = at / k++;
    IndexSet I;
    std::size_t t = 0;
    for (const auto& x : Reader::array(set, here)) I.push_back(label_index(labels, x, here / t++));
    std::sort(I.begin(), I.end());
    if (I.empty()) Reader::fail(here, "empty divisor set");
    if (std::adjacent_find(I.begin(), I.end()) != I.end()) Reader::fail(here, "repeated divisor");
    out.push_back(std::move(I));
  }
  return out;
}

/// Exponents as one flat list or as one list per factor.
inline ExponentVector exponent(const Json& v, const std::vector<int>& dims, const Json::json_pointer& at) {
  ExponentVector out;
  const auto& arr = Reader::array(v, at);
  if (!arr.empty() && arr.front().is_array()) {
    if (arr.size() != dims.size()) Reader::fail(at, "one exponent block per factor is required");
    for (std::size_t j = 0; j < arr.size(); ++j) {
      auto block = Reader::integers(arr[j], at / j);
      if (block.size() != static_cast<std::size_t>(dims[j] + 1))
        Reader::fail(at / j, "exponent block has the wrong length");
      out.insert(out.end(), block.begin(), block.end());
    }
    return out;
  }
  for (long x : Reader::integers(v, at)) out.push_back(static_cast<int>(x));
  return out;
}

inline Hypersurface hypersurface(const Json& v, const std::vector<int>& dims, std::size_t index,
                                 const Json::json_pointer& at) {
  Hypersurface h;
  h.label = "D" + std::to_string(index + 1);
  if (const Json* label = Reader::optional_field(v, "label")) {
    if (!label->is_string()) Reader::fail(at / "label", "expected a string");
    h.label = label->get<std::string>();
  }
  h.form.degree = Reader::integers(Reader::field(v, at, "degree"), at / "degree");
  const auto& terms = Reader::array(Reader::field(v, at, "terms"), at / "terms");
  for (std::size_t k = 0; k < terms.size(); ++k) {
    auto here = at / "terms" / k;
    const auto& term = Reader::array(terms[k], here);
    if (term.size() != 2) Reader::fail(here, "a term is [exponent, coefficient]");
    ExponentVector e = exponent(term[0], dims, here / 0);
    Rational c = Reader::rational(term[1], here / 1);
    if (sgn(c) == 0) continue;
    if (h.form.terms.count(e)) Reader::fail(here, "repeated monomial");
    h.form.terms.emplace(std::move(e), std::move(c));
  }
  return h;
}

inline void read_task(ProblemSpec& p, const Json& root) {
  const Json* t = Reader::optional_field(root, "task");
  if (!t) return;
  const Json::json_pointer at("/task");
  if (!t->is_object()) Reader::fail(at, "expected an object");
  if (const Json* v = Reader::optional_field(*t, "L")) {
    if (p.geometric()) {
      auto L = Reader::integers(*v, at / "L");
      if (L.size() != p.model().factor_count()) Reader::fail(at / "L", "multidegree length differs from factor count");
      p.task.L = L;
    } else {
      NSClass c{Reader::rationals(*v, at / "L")};
      if (c.rank() != p.config.lattice.rank()) Reader::fail(at / "L", "class length differs from lattice rank");
      p.task.L_class = c;
    }
  }
  auto positive = [&](const char* key, std::optional<long>& slot, long least) {
    if (const Json* v = Reader::optional_field(*t, key)) {
      long x = Reader::integer(*v, at / key);
      if (x < least) Reader::fail(at / key, "must be >= " + std::to_string(least));
      slot = x;
    }
  };
  positive("m", p.task.m, 1);
  positive("delta", p.task.delta, 1);
  positive("max_weight", p.task.max_weight, 1);
  positive("box_size", p.task.box_size, 0);
  if (const Json* v = Reader::optional_field(*t, "theta")) p.task.theta = Reader::rational(*v, at / "theta");
  if (const Json* v = Reader::optional_field(*t, "weights")) {
    auto w = Reader::integers(*v, at / "weights");
    if (w.size() != p.config.r()) Reader::fail(at / "weights", "one weight per divisor is required");
    for (long x : w)
      if (x < 1) Reader::fail(at / "weights", "weights must be positive");
    p.task.weights = w;
  }
}

inline Configuration read_geometric(const std::string& kind, const Json& model, const Json::json_pointer& at) {
  std::vector<int> dims;
  if (kind == "projective_space") {
    long n = Reader::integer(Reader::field(model, at, "dimension"), at / "dimension");
    if (n < 1) Reader::fail(at / "dimension", "must be >= 1");
    dims.push_back(static_cast<int>(n));
  } else {
    for (long n : Reader::integers(Reader::field(model, at, "factors"), at / "factors")) {
      if (n < 1) Reader::fail(at / "factors", "factor dimensions must be >= 1");
      dims.push_back(static_cast<int>(n));
    }
    if (dims.empty()) Reader::fail(at / "factors", "at least one factor is required");
  }
  std::vector<Hypersurface> divisors;
  const auto& list = Reader::array(Reader::field(model, at, "divisors"), at / "divisors");
  for (std::size_t i = 0; i < list.size(); ++i) divisors.push_back(hypersurface(list[i], dims, i, at / "divisors" / i));
  std::vector<std::string> labels;
  for (const auto& h : divisors) {
    if (std::find(labels.begin(), labels.end(), h.label) != labels.end())
      Reader::fail(at / "divisors", "duplicate label '" + h.label + "'");
    labels.push_back(h.label);
  }
  auto proper = label_sets(Reader::optional_field(model, "assert_proper"), labels, at / "assert_proper");
  auto empty = label_sets(Reader::optional_field(model, "assert_empty"), labels, at / "assert_empty");
  try {
    return configuration_of(MonomialModel(dims, std::move(divisors), std::move(proper), std::move(empty)));
  } catch (const MalformedInput& e) {
    Reader::fail(at, e.what());
  } catch (const DimensionMismatch& e) {
    Reader::fail(at, e.what());
  }
}

inline Configuration read_lattice(const Json& model, const Json::json_pointer& at, std::vector<IndexSet>& meeting) {
  long d = Reader::integer(Reader::field(model, at, "dimension"), at / "dimension");
  if (d < 1) Reader::fail(at / "dimension", "must be >= 1");
  std::vector<std::string> basis;
  std::size_t k = 0;
  for (const auto& b : Reader::array(Reader::field(model, at, "basis"), at / "basis")) {
    if (!b.is_string()) Reader::fail(at / "basis" / k, "expected a string");
    basis.push_back(b.get<std::string>());
    ++k;
  }
  if (basis.empty()) Reader::fail(at / "basis", "at least one basis class is required");
  const std::size_t rank = basis.size();
  IntersectionForm form(rank, static_cast<int>(d));
  const auto& values = Reader::array(Reader::field(model, at, "intersections"), at / "intersections");
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto here = at / "intersections" / i;
    const auto& entry = Reader::array(values[i], here);
    if (entry.size() != 2) Reader::fail(here, "an intersection entry is [indices, value]");
    std::vector<std::size_t> key;
    std::size_t t = 0;
    for (const auto& x : Reader::array(entry[0], here / 0)) key.push_back(label_index(basis, x, here / 0 / t++));
    try {
      form.set(key, Reader::rational(entry[1], here / 1));
    } catch (const Error& e) {
      Reader::fail(here, e.what());
    }
  }
  std::vector<NSClass> gens;
  const auto& cone = Reader::array(Reader::field(model, at, "nef_cone"), at / "nef_cone");
  for (std::size_t i = 0; i < cone.size(); ++i) {
    NSClass g{Reader::rationals(cone[i], at / "nef_cone" / i)};
    if (g.rank() != rank) Reader::fail(at / "nef_cone" / i, "generator length differs from basis size");
    gens.push_back(std::move(g));
  }
  if (gens.empty()) Reader::fail(at / "nef_cone", "at least one generator is required");
  Configuration c{std::nullopt, NSLattice{basis, std::move(form), NefCone(std::move(gens)), std::nullopt, {}}, {}, {}, {}, {}};
  const auto& list = Reader::array(Reader::field(model, at, "divisors"), at / "divisors");
  for (std::size_t i = 0; i < list.size(); ++i) {
    auto here = at / "divisors" / i;
    const Json* label = Reader::optional_field(list[i], "label");
    std::string name = label && label->is_string() ? label->get<std::string>() : "D" + std::to_string(i + 1);
    if (std::find(c.labels.begin(), c.labels.end(), name) != c.labels.end())
      Reader::fail(here, "duplicate label '" + name + "'");
    NSClass cls{Reader::rationals(Reader::field(list[i], here, "class"), here / "class")};
    if (cls.rank() != rank) Reader::fail(here / "class", "class length differs from basis size");
    c.labels.push_back(std::move(name));
    c.divisors.push_back(std::move(cls));
  }
  if (c.divisors.empty()) Reader::fail(at / "divisors", "at least one divisor is required");
  for (auto i : label_sets(Reader::optional_field(model, "ample"), c.labels, at / "ample"))
    for (auto j : i) c.lattice.declared_ample.push_back(c.divisors[j]);
  if (const Json* v = Reader::optional_field(model, "ample_classes"))
    for (std::size_t i = 0; i < v->size(); ++i) {
      NSClass cls{Reader::rationals((*v)[i], at / "ample_classes" / i)};
      if (cls.rank() != rank) Reader::fail(at / "ample_classes" / i, "class length differs from basis size");
      c.lattice.declared_ample.push_back(std::move(cls));
    }
  c.declared_proper = label_sets(Reader::optional_field(model, "assert_proper"), c.labels, at / "assert_proper");
  c.declared_empty = label_sets(Reader::optional_field(model, "assert_empty"), c.labels, at / "assert_empty");
  meeting = label_sets(Reader::optional_field(model, "meeting_subsets"), c.labels, at / "meeting_subsets");
  return c;
}

}  // namespace detail

inline ProblemSpec parse_problem(const Json& root) {
  using detail::Reader;
  const Json::json_pointer top;
  const Json& model = Reader::field(root, top, "model");
  const Json::json_pointer at("/model");
  const Json& kind = Reader::field(model, at, "kind");
  if (!kind.is_string()) Reader::fail(at / "kind", "expected a string");
  const std::string name = kind.get<std::string>();
  std::vector<IndexSet> meeting;
  auto config = [&] {
    if (name == "projective_space" || name == "product") return detail::read_geometric(name, model, at);
    if (name == "ns_lattice") return detail::read_lattice(model, at, meeting);
    Reader::fail(at / "kind", "unknown model kind '" + name + "'");
  }();
  ProblemSpec p{name, std::move(config), std::move(meeting), {}};
  detail::read_task(p, root);
  return p;
}

inline ProblemSpec parse_problem_text(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedInput("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return parse_problem(root);
}

inline ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot open problem file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_problem_text(ss.str());
  } catch (const MalformedInput& e) {
    throw MalformedInput(path + ": " + e.what());
  }
}

/// Canonical re-serialization: sorted keys, flat exponents, reduced rationals, labels resolved.
inline Json canonical_json(const ProblemSpec& p) {
  Json model;
  model["kind"] = p.kind;
  auto sets = [&](const std::vector<IndexSet>& list) {
    Json out = Json::array();
    for (const auto& I : list) {
      Json s = Json::array();
      for (auto i : I) s.push_back(p.config.labels[i]);
      out.push_back(s);
    }
    return out;
  };
  auto vec = [](const Vector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
  };
  if (p.geometric()) {
    const auto& mm = p.model();
    model["factors"] = mm.factor_dims();
    Json divs = Json::array();
    for (const auto& h : mm.divisors()) {
      Json terms = Json::array();
      for (const auto& [e, c] : h.form.terms) terms.push_back(Json::array({e, to_string(c)}));
      divs.push_back({{"label", h.label}, {"degree", h.form.degree}, {"terms", terms}});
    }
    model["divisors"] = divs;
    model["assert_proper"] = sets(mm.asserted_proper());
    model["assert_empty"] = sets(mm.asserted_empty());
  } else {
    const auto& lat = p.config.lattice;
    model["dimension"] = lat.dimension();
    model["basis"] = lat.basis_labels;
    Json values = Json::array();
    for (const auto& [key, v] : lat.form.values())
      if (sgn(v) != 0) values.push_back(Json::array({key, to_string(v)}));
    model["intersections"] = values;
    Json cone = Json::array();
    for (const auto& g : lat.cone.generators()) cone.push_back(vec(g.coords));
    model["nef_cone"] = cone;
    Json divs = Json::array();
    for (std::size_t i = 0; i < p.config.r(); ++i)
      divs.push_back({{"label", p.config.labels[i]}, {"class", vec(p.config.divisors[i].coords)}});
    model["divisors"] = divs;
    Json ample = Json::array();
    for (const auto& a : lat.declared_ample) ample.push_back(vec(a.coords));
    model["ample_classes"] = ample;
    model["assert_proper"] = sets(p.config.declared_proper);
    model["assert_empty"] = sets(p.config.declared_empty);
    model["meeting_subsets"] = sets(p.meeting_subsets);
  }
  Json task = Json::object();
  const auto& t = p.task;
  if (t.L) task["L"] = *t.L;
  if (t.L_class) task["L"] = vec(t.L_class->coords);
  if (t.m) task["m"] = *t.m;
  if (t.delta) task["delta"] = *t.delta;
  if (t.theta) task["theta"] = to_string(*t.theta);
  if (t.max_weight) task["max_weight"] = *t.max_weight;
  if (t.box_size) task["box_size"] = *t.box_size;
  if (t.weights) task["weights"] = *t.weights;
  return Json{{"model", model}, {"task", task}};
}

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

inline std::string input_digest(const ProblemSpec& p) { return "sha256:" + sha256_hex(canonical_json(p).dump()); }

}  // namespace quasihyp
