#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace quasihyp;
using namespace fixtures;

namespace {

constexpr int kCases = 120;

Vector random_vector(std::mt19937_64& rng, std::size_t n, int spread = 2) {
  std::uniform_int_distribution<int> val(-spread, spread);
  std::uniform_int_distribution<int> den(1, 2);
  Vector v(n);
  for (auto& x : v) x = q(val(rng), den(rng));
  return v;
}

RationalMatrix random_space(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::vector<Vector> r;
  for (std::size_t i = 0; i < rows; ++i) r.push_back(random_vector(rng, cols));
  return RationalMatrix(cols, r);
}

struct RandomKey {
  MonomialModel model;
  Multidegree L;
  FiltrationKey key;
  int n;
};

RandomKey random_coordinate_key(std::mt19937_64& rng, long max_degree = 4) {
  std::uniform_int_distribution<int> dim(1, 3);
  const int n = dim(rng);
  const int count = std::uniform_int_distribution<int>(1, n + 1)(rng);
  std::uniform_int_distribution<long> deg(1, max_degree);
  std::uniform_int_distribution<long> wt(1, 3);
  IndexSet I;
  for (int i = 0; i < count; ++i)
    if (rng() % 2 == 0 || (i == count - 1 && I.empty())) I.push_back(static_cast<std::size_t>(i));
  std::vector<long> a;
  for (std::size_t t = 0; t < I.size(); ++t) a.push_back(wt(rng));
  return {coordinate_model(n, count), {deg(rng)}, {I, a}, n};
}

}  // namespace

TEST(Properties, CanonicalFormInvariantUnderRowMixing) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < kCases; ++t) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
    auto m = random_space(rng, rows, cols);
    std::vector<Vector> mixed = m.rows();
    // Unit lower-triangular mixing plus a row reversal keeps the row space.
    for (std::size_t i = 1; i < rows; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        Rational s = q(static_cast<long>(rng() % 5) - 2);
        for (std::size_t c = 0; c < cols; ++c) mixed[i][c] += s * mixed[j][c];
      }
    std::reverse(mixed.begin(), mixed.end());
    EXPECT_EQ(canonicalize(m), canonicalize(RationalMatrix(cols, mixed)));
  }
}

TEST(Properties, GrassmannDimensionFormula) {
  std::mt19937_64 rng(102);
  for (int t = 0; t < kCases; ++t) {
    const std::size_t n = 1 + rng() % 6;
    auto a = random_space(rng, rng() % (n + 1), n);
    auto b = random_space(rng, rng() % (n + 1), n);
    const std::size_t sum = subspace_sum(a, b).row_count();
    const std::size_t cap = subspace_intersection(a, b).row_count();
    EXPECT_EQ(sum + cap, rank(a) + rank(b));
    EXPECT_TRUE(is_subspace(subspace_intersection(a, b), a));
    EXPECT_TRUE(is_subspace(b, subspace_sum(a, b)));
  }
}

TEST(Properties, AdaptedBasisSpansEveryStage) {
  std::mt19937_64 rng(103);
  for (int t = 0; t < kCases; ++t) {
    const std::size_t n = 1 + rng() % 5;
    const std::size_t depth = 1 + rng() % 4;
    SubspaceChain chain;
    chain.ambient_dim = n;
    std::vector<Vector> pool;
    for (std::size_t i = 0; i < 2 * n; ++i) pool.push_back(random_vector(rng, n));
    std::vector<Vector> stage = pool;
    for (std::size_t k = 0; k < depth; ++k) {
      chain.stages.push_back(stage);
      std::vector<Vector> next;
      for (const auto& v : stage)
        if (rng() % 3 != 0) next.push_back(v);
      stage = next;
    }
    chain.stages.push_back({});
    auto basis = adapted_basis(chain);
    ASSERT_EQ(basis.size(), n);
    EXPECT_EQ(rank(RationalMatrix(n, basis)), n);
    for (const auto& F : chain.stages) {
      if (F.empty()) continue;
      std::vector<Vector> inside;
      for (const auto& v : basis)
        if (std::find(F.begin(), F.end(), v) != F.end()) inside.push_back(v);
      EXPECT_EQ(canonicalize(RationalMatrix(n, inside)), canonicalize(RationalMatrix(n, F)));
    }
  }
}

TEST(Properties, FiltrationMatchesMonomialOracleAndDecreases) {
  std::mt19937_64 rng(104);
  for (int t = 0; t < kCases; ++t) {
    auto c = random_coordinate_key(rng);
    const long top = filtration_length(c.model, c.L, c.key);
    std::size_t prev = static_cast<std::size_t>(-1);
    for (long k = 1; k <= top + 1; ++k) {
      const std::size_t d = dim_V(c.model, c.L, c.key, k);
      EXPECT_EQ(static_cast<long>(d), oracle::coordinate_dim(c.n, c.L[0], c.key.I, c.key.a, k));
      EXPECT_LE(d, prev);
      prev = d;
    }
    EXPECT_EQ(prev, 0u);
  }
}

TEST(Properties, TotalDimensionScalesWithWeights) {
  std::mt19937_64 rng(105);
  for (int t = 0; t < kCases; ++t) {
    auto c = random_coordinate_key(rng, 3);
    const long scale = 2 + static_cast<long>(rng() % 2);
    FiltrationKey scaled = c.key;
    for (auto& x : scaled.a) x *= scale;
    EXPECT_EQ(total_dim_V(c.model, c.L, scaled), Integer(scale) * total_dim_V(c.model, c.L, c.key));
    EXPECT_EQ(total_dim_V(c.model, c.L, c.key),
              oracle::coordinate_total_dim(c.n, c.L[0], c.key.I, c.key.a));
  }
}

TEST(Properties, WeightedIdentityOnCoordinateModels) {
  std::mt19937_64 rng(106);
  for (int t = 0; t < kCases; ++t) {
    auto c = random_coordinate_key(rng, 3);
    auto w = weighted_identity_check(c.model, c.L, c.key);
    EXPECT_EQ(w.pairwise_proper, Decision::yes);
    EXPECT_TRUE(w.equal()) << w.weighted_orders << " vs " << w.total_dim;
  }
}

TEST(Properties, IntersectionFormIsSymmetricMultilinear) {
  std::mt19937_64 rng(107);
  const std::vector<std::vector<int>> shapes{{3}, {1, 1, 1}, {1, 2}, {2, 1}};
  for (int t = 0; t < kCases; ++t) {
    auto lat = product_lattice(shapes[t % shapes.size()]);
    const std::size_t rank = lat.form.rank();
    const int d = lat.form.dimension();
    std::vector<NSClass> cls;
    for (int i = 0; i < d; ++i) cls.emplace_back(random_vector(rng, rank));
    const NSClass extra(random_vector(rng, rank));
    const Rational s = q(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
    const Rational base = intersection_number(lat.form, cls);
    auto shifted = cls;
    shifted[0] = shifted[0] + s * extra;
    auto only = cls;
    only[0] = extra;
    EXPECT_EQ(intersection_number(lat.form, shifted), base + s * intersection_number(lat.form, only));
    auto permuted = cls;
    std::shuffle(permuted.begin(), permuted.end(), rng);
    EXPECT_EQ(intersection_number(lat.form, permuted), base);
  }
}

TEST(Properties, NefConeClosedUnderPositiveCombinations) {
  std::mt19937_64 rng(108);
  auto lat = product_lattice(std::vector<int>{1, 2});
  for (int t = 0; t < kCases; ++t) {
    NSClass a(Vector{q(static_cast<long>(rng() % 5) - 1), q(static_cast<long>(rng() % 5) - 1)});
    NSClass b(Vector{q(static_cast<long>(rng() % 5) - 1), q(static_cast<long>(rng() % 5) - 1)});
    const bool na = is_nef(lat.cone, a), nb = is_nef(lat.cone, b);
    EXPECT_EQ(na, a.coords[0] >= 0 && a.coords[1] >= 0);
    if (na && nb) {
      EXPECT_TRUE(is_nef(lat.cone, a + q(1, 1 + static_cast<long>(rng() % 4)) * b));
    }
    // Nef classes on a product have nonnegative top self-intersection.
    if (na) {
      EXPECT_GE(intersect_powers(lat.form, a, 3, a, 0), 0);
    }
  }
}

TEST(Properties, TopSelfIntersectionMatchesHilbertPolynomial) {
  std::mt19937_64 rng(109);
  const std::vector<std::vector<int>> shapes{{2}, {3}, {1, 1}, {1, 2}};
  for (int t = 0; t < kCases; ++t) {
    const auto& dims = shapes[t % shapes.size()];
    auto lat = product_lattice(dims);
    std::vector<long> e;
    Vector coords;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      e.push_back(static_cast<long>(rng() % 4));
      coords.push_back(Rational(e.back()));
    }
    NSClass L(coords);
    EXPECT_EQ(intersect_powers(lat.form, L, lat.form.dimension(), L, 0),
              Rational(oracle::top_self_intersection(dims, e)));
  }
}

TEST(Properties, RationalTextRoundTrip) {
  std::mt19937_64 rng(110);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 5000);
  for (int t = 0; t < 500; ++t) {
    Rational x = q(num(rng), den(rng));
    EXPECT_EQ(parse_rational(to_string(x)), x);
  }
}
