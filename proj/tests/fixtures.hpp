#pragma once

#include <string>
#include <vector>

#include "quasihyp.hpp"

namespace fixtures {

using namespace quasihyp;

/// Linear form Σ c_k x_k on P^n.
inline Hypersurface linear(int n, const std::vector<long>& coeffs, const std::string& label) {
  Hypersurface h{label, {{1}, {}}};
  for (int k = 0; k <= n; ++k) {
    if (coeffs[k] == 0) continue;
    ExponentVector e(static_cast<std::size_t>(n + 1), 0);
    e[k] = 1;
    h.form.terms[e] = coeffs[k];
  }
  return h;
}

inline Hypersurface coordinate(int n, int k) {
  std::vector<long> c(static_cast<std::size_t>(n + 1), 0);
  c[k] = 1;
  return linear(n, c, "X" + std::to_string(k));
}

/// The first `count` coordinate hyperplanes of P^n.
inline MonomialModel coordinate_model(int n, int count) {
  std::vector<Hypersurface> hs;
  for (int k = 0; k < count; ++k) hs.push_back(coordinate(n, k));
  return MonomialModel({n}, hs);
}

/// x0, x1, x2, x0+x1+x2 on P^2.
inline MonomialModel four_lines() {
  return MonomialModel({2}, {linear(2, {1, 0, 0}, "D1"), linear(2, {0, 1, 0}, "D2"), linear(2, {0, 0, 1}, "D3"),
                             linear(2, {1, 1, 1}, "D4")});
}

/// x0, x1, x0+x1, x2: three lines through (0:0:1).
inline MonomialModel concurrent_lines() {
  return MonomialModel({2}, {linear(2, {1, 0, 0}, "D1"), linear(2, {0, 1, 0}, "D2"), linear(2, {1, 1, 0}, "D3"),
                             linear(2, {0, 0, 1}, "D4")});
}

/// H = {x0 = 0} and the conic x1² + x2² − x0², properness declared.
inline MonomialModel line_and_conic() {
  Hypersurface q{"Q", {{2}, {}}};
  q.form.terms[{0, 2, 0}] = 1;
  q.form.terms[{0, 0, 2}] = 1;
  q.form.terms[{2, 0, 0}] = -1;
  return MonomialModel({2}, {coordinate(2, 0), q}, {{0, 1}});
}

/// Four (1,1) curves on P^1 × P^1 with properness declared.
inline MonomialModel p1xp1_four() {
  auto form = [](std::vector<std::pair<ExponentVector, long>> terms, const std::string& label) {
    Hypersurface h{label, {{1, 1}, {}}};
    for (auto& [e, c] : terms) h.form.terms[e] = c;
    return h;
  };
  return MonomialModel({1, 1},
                       {form({{{1, 0, 1, 0}, 1}, {{0, 1, 0, 1}, 1}}, "D1"), form({{{1, 0, 0, 1}, 1}, {{0, 1, 1, 0}, 1}}, "D2"),
                        form({{{1, 0, 1, 0}, 1}, {{0, 1, 0, 1}, 2}, {{1, 0, 0, 1}, 1}}, "D3"),
                        form({{{1, 0, 1, 0}, 1}, {{0, 1, 1, 0}, 1}, {{0, 1, 0, 1}, 3}}, "D4")},
                       {{0, 1, 2, 3}});
}

inline Rational q(long p, long d = 1) { return ratio(p, d); }

inline std::string problem_path(const std::string& name) { return std::string(QUASIHYP_PROBLEMS_DIR) + "/" + name; }

}  // namespace fixtures
