#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"

using namespace quasihyp;
using namespace fixtures;

namespace {

bool has_step(const Certificate& c, const std::string& lhs, const std::string& rel, const std::string& rhs) {
  return std::any_of(c.chain.begin(), c.chain.end(),
                     [&](const ChainStep& s) { return s.lhs == lhs && s.relation == rel && s.rhs == rhs; });
}

const Hypothesis* find_hypothesis(const Certificate& c, const std::string& name) {
  for (const auto& h : c.hypotheses)
    if (h.name == name) return &h;
  return nullptr;
}

Configuration lattice_p1xp1(std::size_t r) {
  auto lat = product_lattice(std::vector<int>{1, 1});
  lat.product_dims.reset();
  NSClass diag(Vector{q(1), q(1)});
  lat.declared_ample = {diag};
  Configuration c{std::nullopt, lat, {}, {}, {}, {}};
  IndexSet all;
  for (std::size_t i = 0; i < r; ++i) {
    c.labels.push_back("E" + std::to_string(i + 1));
    c.divisors.push_back(diag);
    all.push_back(i);
  }
  c.declared_proper = {all};
  return c;
}

}  // namespace

TEST(Certify, CriterionOnFourLines) {
  auto cert = certify_criterion(four_lines(), 1, Flavor::arithmetic);
  EXPECT_EQ(cert.theorem, "3.3");
  EXPECT_EQ(cert.verdict, Verdict::certified);
  EXPECT_TRUE(has_step(cert, "4/3", ">", "m = 1"));
  EXPECT_NE(cert.conclusion.find("arithmetically quasi-hyperbolic"), std::string::npos);
  EXPECT_TRUE(self_check(cert));
  for (const auto& s : cert.chain)
    EXPECT_TRUE(s.source.rfind(kSourcePairwiseAlpha, 0) == 0 || s.source == kSourceKoszul) << s.source;
}

TEST(Certify, CriterionAnalyticFlavor) {
  auto cert = certify_criterion(four_lines(), 1, Flavor::analytic);
  EXPECT_EQ(cert.theorem, "3.5");
  EXPECT_NE(cert.conclusion.find("Brody"), std::string::npos);
}

TEST(Certify, CriterionFailsOnTwoLines) {
  auto cert = certify_criterion(coordinate_model(2, 2), 1);
  EXPECT_EQ(cert.verdict, Verdict::not_certified);
  EXPECT_TRUE(has_step(cert, "2/3", ">", "m = 1"));
  EXPECT_TRUE(cert.conclusion.empty());
  EXPECT_TRUE(self_check(cert));
}

TEST(Certify, CriterionGateOnBigness) {
  Hypersurface fibre{"F", {{1, 0}, {{{1, 0, 0, 0}, 1}}}};
  Hypersurface fibre2{"G", {{1, 0}, {{{0, 1, 0, 0}, 1}}}};
  MonomialModel model({1, 1}, {fibre, fibre2});
  auto cert = certify_criterion(model, 1);
  EXPECT_EQ(cert.verdict, Verdict::not_certified);
  const Hypothesis* big = find_hypothesis(cert, "L = m*sum(D_i) big");
  ASSERT_NE(big, nullptr);
  EXPECT_EQ(big->status, Status::failed);
}

TEST(Certify, PipelineOnFourLines) {
  auto cfg = configuration_of(four_lines());
  auto data = certify_thm21_pipeline(cfg, 2);
  const auto& cert = data.certificate;
  EXPECT_EQ(cert.verdict, Verdict::certified);
  EXPECT_EQ(data.fixed_point.multiplicities, (std::vector<long>(4, 1)));
  EXPECT_TRUE(has_step(cert, "13/12", ">", "r/(d*delta) = 1"));
  EXPECT_TRUE(self_check(cert));
  auto thm11 = certify_thm11(cfg, 2);
  EXPECT_EQ(thm11.verdict, Verdict::certified);
  EXPECT_TRUE(std::any_of(thm11.chain.begin(), thm11.chain.end(), [](const ChainStep& s) { return s.asymptotic; }));
}

TEST(Certify, PipelineRejectsConcurrentLines) {
  auto cert = certify_thm21_pipeline(configuration_of(concurrent_lines()), 2).certificate;
  EXPECT_EQ(cert.verdict, Verdict::not_certified);
  const Hypothesis* empty = find_hypothesis(cert, "every (delta+1)-fold intersection empty");
  ASSERT_NE(empty, nullptr);
  EXPECT_EQ(empty->status, Status::failed);
}

TEST(Certify, PipelineAsymmetricDegrees) {
  auto cfg = configuration_of(line_and_conic());
  auto data = certify_thm21_pipeline(cfg, 2);
  EXPECT_EQ(data.fixed_point.multiplicities, (std::vector<long>{2, 1}));
  EXPECT_EQ(data.certificate.verdict, Verdict::certified_with_assumptions);
  EXPECT_TRUE(std::any_of(data.certificate.chain.begin(), data.certificate.chain.end(),
                          [](const ChainStep& s) { return s.rhs == "r/(d*delta) = 1/2"; }));
  auto thm11 = certify_thm11(cfg, 2);
  EXPECT_EQ(thm11.verdict, Verdict::not_certified);
  EXPECT_EQ(find_hypothesis(thm11, "r = d*delta")->status, Status::failed);
}

TEST(Certify, TwiceLambdaRouteOnLines) {
  auto cert = certify_thm12(configuration_of(four_lines()));
  EXPECT_EQ(cert.verdict, Verdict::certified);
  EXPECT_TRUE(has_step(cert, "7/6", ">", "1"));
  EXPECT_TRUE(self_check(cert));
  auto three = certify_thm12(configuration_of(coordinate_model(2, 3)));
  EXPECT_EQ(three.verdict, Verdict::not_certified);
  EXPECT_EQ(find_hypothesis(three, "r >= 2d")->status, Status::failed);
}

TEST(Certify, TwiceLambdaRouteOnP1xP1) {
  auto geometric = certify_thm12(configuration_of(p1xp1_four()));
  EXPECT_EQ(geometric.verdict, Verdict::certified_with_assumptions);
  EXPECT_EQ(find_hypothesis(geometric, "L - 2d*D_i nef for every i")->status, Status::verified);
  EXPECT_TRUE(has_step(geometric, "7/6", ">", "1"));
  auto lattice_only = certify_thm12(lattice_p1xp1(4));
  EXPECT_EQ(lattice_only.verdict, Verdict::certified_with_assumptions);
  EXPECT_EQ(certify_thm12(lattice_p1xp1(3)).verdict, Verdict::not_certified);
}

TEST(Certify, ThetaRouteChoosesTheta) {
  auto cert = certify_thm22(configuration_of(four_lines()));
  EXPECT_EQ(cert.verdict, Verdict::certified);
  EXPECT_TRUE(has_step(cert, "theta-nef bound", ">=", "lambda_d*theta = 7/6"));
  auto low = certify_thm22(configuration_of(four_lines()), q(1, 2));
  EXPECT_EQ(low.verdict, Verdict::not_certified);
}

TEST(Certify, SelfCheckDetectsTampering) {
  auto cert = certify_thm12(configuration_of(four_lines()));
  ASSERT_TRUE(self_check(cert));
  auto forged = cert;
  for (auto& s : forged.chain)
    if (s.exact()) s.lhs_value = Rational(1, 2);
  EXPECT_FALSE(self_check(forged));
  auto upgraded = certify_thm12(configuration_of(coordinate_model(2, 3)));
  upgraded.verdict = Verdict::certified;
  EXPECT_FALSE(self_check(upgraded));
  auto assumed = cert;
  assumed.hypotheses.front().status = Status::assumed;
  EXPECT_FALSE(self_check(assumed));
  EXPECT_EQ(derive_verdict(assumed), Verdict::certified_with_assumptions);
}

TEST(Certify, RemovingADivisorNeverUpgrades) {
  auto full = certify_thm12(configuration_of(four_lines()));
  for (std::size_t drop = 0; drop < 4; ++drop) {
    std::vector<Hypersurface> rest;
    for (std::size_t i = 0; i < 4; ++i)
      if (i != drop) rest.push_back(four_lines().divisors()[i]);
    auto cert = certify_thm12(configuration_of(MonomialModel({2}, rest)));
    EXPECT_EQ(cert.verdict, Verdict::not_certified);
    for (const auto& h : cert.hypotheses) {
      const Hypothesis* before = find_hypothesis(full, h.name);
      if (before && before->status == Status::failed) {
        EXPECT_EQ(h.status, Status::failed) << h.name;
      }
    }
  }
}
