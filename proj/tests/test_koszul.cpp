#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace quasihyp;
using namespace fixtures;

TEST(Koszul, BoxEnumerationOrderAndCap) {
  auto box = box_elements(1, 2);
  ASSERT_EQ(box.size(), 4u);
  EXPECT_EQ(box[0], (std::vector<long>{0, 0}));
  EXPECT_EQ(box[1], (std::vector<long>{0, 1}));
  EXPECT_EQ(box[3], (std::vector<long>{1, 1}));
  EXPECT_EQ(box_elements(0, 3).size(), 1u);
  EXPECT_THROW(box_elements(9, 7), SizeError);
  EXPECT_THROW(box_elements(-1, 2), DomainError);
}

TEST(Koszul, ThreeCoordinateLinesDegreeFour) {
  auto model = coordinate_model(2, 3);
  auto v = bound_lemma52(model, {4}, {1, 1, 1}, 1);
  EXPECT_EQ(v.direct, 30);
  EXPECT_EQ(v.bound, 30);
  auto p = bound_prop53(model, {4}, {1, 1, 1}, 1);
  EXPECT_EQ(p.value, 30);
  EXPECT_EQ(p.boxes_checked, 8u);
  EXPECT_TRUE(p.identity_holds());
  EXPECT_EQ(p.proper, Decision::yes);
}

TEST(Koszul, AlternatingSumAtOrigin) {
  auto model = coordinate_model(2, 3);
  EXPECT_EQ(alternating_sum(model, {4}, {0, 0, 0}, {0, 1, 2}), 0);
  BoxIndex origin{1, {0, 0, 0}};
  EXPECT_EQ(h0(model, {4}) - static_cast<unsigned long>(c_space(model, {4}, origin).dim()), 0);
  // 15 − 3·10 + 3·6 − 3
  EXPECT_EQ(h0(model, {4}), 15);
  EXPECT_EQ(h0(model, {3}), 10);
  EXPECT_EQ(h0(model, {2}), 6);
  EXPECT_EQ(h0(model, {1}), 3);
}

TEST(Koszul, DirectCountMatchesMonomialOracle) {
  for (long L = 1; L <= 5; ++L)
    for (long m = 0; m <= 2; ++m) {
      auto v = bound_lemma52(coordinate_model(2, 3), {L}, {1, 2, 1}, m);
      EXPECT_EQ(v.direct, oracle::coordinate_total_dim(2, L, {0, 1, 2}, {1, 2, 1}, m)) << L << " " << m;
      EXPECT_TRUE(v.holds());
    }
}

TEST(Koszul, RegularSequenceInclusionSmallBoxes) {
  auto model = coordinate_model(2, 3);
  for (long L = 1; L <= 4; ++L) {
    auto sweep = verify_lemma51_all(model, {L}, 1);
    EXPECT_TRUE(sweep.ok());
    EXPECT_EQ(sweep.boxes, 8u);
  }
  EXPECT_TRUE(verify_lemma51_sections(four_lines(), {3}, BoxIndex{1, {0, 1, 0, 1}}));
}

TEST(Koszul, NonAcyclicBoxRefused) {
  auto model = coordinate_model(2, 3);
  EXPECT_THROW(bound_prop53(model, {1}, {1, 1, 1}, 2), PreconditionFailure);
  try {
    bound_prop53(model, {1}, {1, 1, 1}, 2);
  } catch (const PreconditionFailure& e) {
    EXPECT_NE(std::string(e.what()).find("(0,2,2)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(bound_lemma52(model, {4}, {1, 1}, 1), DimensionMismatch);
  EXPECT_THROW(c_space(model, {4}, BoxIndex{1, {0, 2, 0}}), DomainError);
}

TEST(Koszul, NuBoundFromAcyclicBox) {
  auto b = koszul_nu_bound(four_lines(), {4});
  EXPECT_EQ(b.source, kSourceKoszul);
  EXPECT_FALSE(b.failed());
  // m = 1 is the largest acyclic box (L_b reaches degree 0); Σ_{k<=1} h0(4 − k) / h0(4) = 10/15.
  EXPECT_EQ(b.value, q(2, 3));
}
