#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "quasihyp/geometry.hpp"
#include "quasihyp/lattice.hpp"
#include "quasihyp/rational.hpp"

namespace quasihyp {

enum class Status { verified, assumed, failed };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::verified: return "verified";
    case Status::assumed: return "assumed";
    case Status::failed: return "failed";
  }
  return "?";
}

inline Status status_of(Decision d) {
  switch (d) {
    case Decision::yes: return Status::verified;
    case Decision::assumed: return Status::assumed;
    default: return Status::failed;
  }
}

inline Status status_of(ClaimStatus c) {
  switch (c) {
    case ClaimStatus::verified: return Status::verified;
    case ClaimStatus::assumed: return Status::assumed;
    default: return Status::failed;
  }
}

inline Status status_of(bool ok) { return ok ? Status::verified : Status::failed; }

struct Hypothesis {
  std::string name;
  Status status = Status::failed;
  std::string evidence;

  bool operator==(const Hypothesis&) const = default;
};

/// A closed-form bound together with the hypotheses it rests on.
struct BoundValue {
  Rational value;
  std::string source;
  std::vector<Hypothesis> hypotheses;
  bool asymptotic = false;

  /// True when some hypothesis is not verified; the value then only holds under them.
  bool conditional() const {
    return std::any_of(hypotheses.begin(), hypotheses.end(),
                       [](const Hypothesis& h) { return h.status != Status::verified; });
  }
  bool failed() const {
    return std::any_of(hypotheses.begin(), hypotheses.end(),
                       [](const Hypothesis& h) { return h.status == Status::failed; });
  }
};

}  // namespace quasihyp
