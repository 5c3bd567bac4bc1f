#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "conerank/efficiency.hpp"
#include "conerank/error.hpp"
#include "oracles.hpp"

using namespace conerank;

namespace {

AlternativeSet two_by_two() {
  return AlternativeSet::from_rows({{"A", (VectorXd(2) << 1.0, 0.9).finished()},
                                    {"B", (VectorXd(2) << 0.0, 1.0).finished()}});
}

AlternativeSet mixed_set() {
  return AlternativeSet::from_rows({{"a", (VectorXd(3) << 3.0, 1.0, 2.0).finished()},
                                    {"b", (VectorXd(3) << 1.0, 3.0, 2.0).finished()},
                                    {"c", (VectorXd(3) << 2.0, 2.0, 2.0).finished()},
                                    {"d", (VectorXd(3) << 1.0, 1.0, 1.0).finished()},
                                    {"e", (VectorXd(3) << 2.0, 2.0, 1.5).finished()}});
}

}  // namespace

TEST(EfficientSubset, TwoByTwoDependsOnRho) {
  const auto Z = two_by_two();
  const auto pareto = efficient_subset(Z, PolyConeD::orthant(2));
  EXPECT_EQ(pareto.efficient_labels(), (std::vector<std::string>{"A", "B"}));

  const auto wide = efficient_subset(Z, PolyConeD(2, RhoD::finite(1.0)));
  EXPECT_EQ(wide.efficient_labels(), (std::vector<std::string>{"A"}));
  EXPECT_EQ(wide.at("B").dominator_label, std::optional<std::string>("A"));
}

TEST(EfficientSubset, MatchesParetoOracle) {
  const auto Z = mixed_set();
  const auto report = efficient_subset(Z, PolyConeD::orthant(3));
  const auto expected = oracle::efficient_flags(Z, oracle::pareto_dominates);
  for (std::size_t i = 0; i < Z.size(); ++i) EXPECT_EQ(report.records[i].efficient, expected[i]);
  EXPECT_EQ(report.at("d").dominator_label, std::optional<std::string>("a"));
}

TEST(EfficientSubset, DiagonalRayKeepsEverythingOffTheRay) {
  const auto report = efficient_subset(mixed_set(), PolyConeD(3, RhoD::neg_reciprocal_k()));
  // Only c - d = (1,1,1) lies on the diagonal ray.
  EXPECT_FALSE(report.at("d").efficient);
  EXPECT_EQ(report.efficient_labels().size(), 4u);
}

TEST(EfficientSubset, HalfSpaceKeepsMaximumSum) {
  const auto report = efficient_subset(mixed_set(), PolyConeD(3, RhoD::plus_infinity()));
  EXPECT_EQ(report.efficient_labels(), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(OffsetSet, LiftsEveryRComponent) {
  const auto Z = mixed_set();
  for (double rho : {-0.3, -0.1, 0.0, 0.5, 2.0}) {
    const PolyConeD cone(3, RhoD::finite(rho));
    const OffsetSet Zb = offset_set(Z, cone, 0.25);
    for (std::size_t i = 0; i < Z.size(); ++i) {
      EXPECT_GE(r_transform(Zb.base.row(i), cone).minCoeff(), 0.25);
    }
    EXPECT_EQ(Zb.shift.minCoeff(), Zb.shift.maxCoeff());
  }
}

TEST(OffsetSet, RejectsDegenerateCones) {
  EXPECT_THROW(offset_set(mixed_set(), PolyConeD(3, RhoD::neg_reciprocal_k())), DomainError);
  EXPECT_THROW(offset_set(mixed_set(), PolyConeD(3, RhoD::plus_infinity())), DomainError);
  EXPECT_THROW(offset_set(mixed_set(), PolyConeD(3, RhoD::finite(0.0)), -1.0), DomainError);
}

TEST(OffsetSet, ConeMismatchIsAnError) {
  const OffsetSet Zb = offset_set(mixed_set(), PolyConeD::orthant(3));
  EXPECT_THROW(efficiency_test(Zb, "a", PolyConeD(3, RhoD::finite(0.5))), DomainError);
}

TEST(EfficiencyTest, AgreesOnMixedSet) {
  const auto Z = mixed_set();
  for (double rho : {-0.3, 0.0, 0.5}) {
    const PolyConeD cone(3, RhoD::finite(rho));
    const auto report = efficient_subset(Z, cone);
    const OffsetSet Zb = offset_set(Z, cone);
    for (const auto& rec : report.records) {
      EXPECT_EQ(efficiency_test(Zb, rec.label, cone).efficient, rec.efficient)
          << rec.label << " rho=" << rho;
    }
  }
}

TEST(EfficiencyTest, UnknownLabel) {
  const OffsetSet Zb = offset_set(mixed_set(), PolyConeD::orthant(3));
  EXPECT_THROW(efficiency_test(Zb, "zz", PolyConeD::orthant(3)), DomainError);
}

TEST(EfficiencyTest, LambdaIsReciprocalOfR) {
  const PolyConeD cone = PolyConeD::orthant(3);
  const OffsetSet Zb = offset_set(mixed_set(), cone);
  const auto res = efficiency_test(Zb, "c", cone);
  const VectorXd rbar = r_transform(Zb.base.row(2), cone);
  EXPECT_NEAR((res.lambda_used.array() * rbar.array() - 1.0).abs().maxCoeff(), 0.0, 1e-15);
}

TEST(Scalarization, ValueAndArgmax) {
  const PolyConeD cone = PolyConeD::orthant(3);
  const ScalarizationParams params(VectorXd::Ones(3), 0.0);
  const auto sol = solve_p_infinity(mixed_set(), cone, params);
  EXPECT_EQ(sol.argmax_labels, (std::vector<std::string>{"c"}));
  EXPECT_DOUBLE_EQ(sol.value, 2.0);
  EXPECT_THROW(ScalarizationParams(VectorXd::Zero(3), 0.0), DomainError);
  EXPECT_THROW(ScalarizationParams(VectorXd::Ones(3), -1.0), DomainError);
}

TEST(Certificate, BoundFormula) {
  EXPECT_DOUBLE_EQ(tradeoff_bound(2, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(tradeoff_bound(3, 0.5), 4.0);
  EXPECT_THROW(tradeoff_bound(3, 0.0), DomainError);
}

TEST(Certificate, LargestCertifyingSigma) {
  const PolyConeD cone = PolyConeD::orthant(3);
  const OffsetSet Zb = offset_set(mixed_set(), cone);
  const auto grid = default_sigma_grid();
  const auto cert = certify_over_sigma_grid(Zb, "c", cone, grid);
  ASSERT_TRUE(cert.certified);
  for (double s : grid) {
    if (s <= cert.sigma) break;
    EXPECT_FALSE(proper_efficiency_certificate(Zb, "c", cone, s).certified);
  }
  EXPECT_LE(tradeoff_constant(Zb, "c", cone), cert.n_bound + 1e-9);
}

TEST(TradeoffConstant, HandComputed) {
  // ybar = (2, 2), others (4, 1) and (1, 5): ratios 2/1 and 3/1.
  const auto Z = AlternativeSet::from_rows({{"bar", (VectorXd(2) << 2.0, 2.0).finished()},
                                            {"p", (VectorXd(2) << 4.0, 1.0).finished()},
                                            {"q", (VectorXd(2) << 1.0, 5.0).finished()}});
  EXPECT_DOUBLE_EQ(tradeoff_constant(Z, "bar", PolyConeD::orthant(2)), 3.0);
}

TEST(TradeoffConstant, DominatedThrows) {
  EXPECT_THROW(tradeoff_constant(mixed_set(), "d", PolyConeD::orthant(3)), DomainError);
}

TEST(CircleWitness, TangencyRatiosGrow) {
  const std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  const auto pts = improperness_witness_circle(deltas);
  ASSERT_EQ(pts.size(), deltas.size());
  for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_GT(pts[i].ratio, pts[i - 1].ratio);
  EXPECT_GT(pts.back().ratio, 1e3);
}

TEST(CircleWitness, MatchesNaiveFormulaWhereItIsAccurate) {
  const std::vector<double> deltas{1e-1, 3e-2, 1e-2, 3e-3};
  for (const auto& p : improperness_witness_circle(deltas)) {
    EXPECT_NEAR(p.ratio / oracle::circle_ratio_naive(p.delta), 1.0, 1e-8) << p.delta;
  }
}

TEST(CircleWitness, ApproachesAsymptote) {
  // gain ~ 3 delta / 2, loss ~ 5 sqrt5 delta^2 / 8: ratio ~ 12 sqrt5 / (25 delta).
  const std::vector<double> deltas{1e-6};
  const double ratio = improperness_witness_circle(deltas).front().ratio;
  EXPECT_NEAR(ratio * 1e-6 / (12.0 * std::sqrt(5.0) / 25.0), 1.0, 1e-5);
}

TEST(CircleWitness, RejectsBadDeltas) {
  const std::vector<double> up{1e-3, 1e-2};
  EXPECT_THROW(improperness_witness_circle(up), DomainError);
  const std::vector<double> neg{-1e-3};
  EXPECT_THROW(improperness_witness_circle(neg), DomainError);
}

TEST(EfficiencyProperty, ScalarizationEqualsBruteForce) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const int k = 2 + trial % 4;
    const int n = 5 + trial % 40;
    const bool grid = trial % 3 == 0;
    const auto Z = oracle::random_set(rng, k, n, grid);
    for (double rho : {-1.0 / k + 0.01, 0.0, 0.5, 2.0}) {
      if (grid && rho != 0.0) continue;
      const PolyConeD cone(k, RhoD::finite(rho));
      const auto report = efficient_subset(Z, cone);
      const OffsetSet Zb = offset_set(Z, cone);
      for (const auto& rec : report.records) {
        ASSERT_EQ(efficiency_test(Zb, rec.label, cone).efficient, rec.efficient)
            << "trial " << trial << " rho " << rho << " " << rec.label;
      }
      if (rho == 0.0) {
        const auto expected = oracle::efficient_flags(Z, oracle::pareto_dominates);
        for (std::size_t i = 0; i < Z.size(); ++i) ASSERT_EQ(report.records[i].efficient, expected[i]);
      } else {
        const auto expected = oracle::efficient_flags(Z, [rho](const auto& a, const auto& b) {
          return oracle::cone_dominates(a, b, rho);
        });
        for (std::size_t i = 0; i < Z.size(); ++i) ASSERT_EQ(report.records[i].efficient, expected[i]);
      }
    }
  }
}

TEST(EfficiencyProperty, EfficientSetShrinksAsConeGrows) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const auto Z = oracle::random_set(rng, 3, 30, false);
    std::vector<bool> previous(Z.size(), true);
    for (double rho : {-0.3, -0.1, 0.0, 0.5, 2.0}) {
      const auto report = efficient_subset(Z, PolyConeD(3, RhoD::finite(rho)));
      for (std::size_t i = 0; i < Z.size(); ++i) {
        EXPECT_TRUE(previous[i] || !report.records[i].efficient);
        previous[i] = report.records[i].efficient;
      }
    }
  }
}

TEST(EfficiencyProperty, CertifiedTradeoffWithinBound) {
  std::mt19937_64 rng(5);
  int certified = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 2 + trial % 3;
    const auto Z = oracle::random_set(rng, k, 25, false);
    const PolyConeD cone(k, RhoD::finite(trial % 2 == 0 ? 0.0 : 0.5));
    const OffsetSet Zb = offset_set(Z, cone);
    const auto grid = default_sigma_grid();
    for (const auto& rec : efficient_subset(Z, cone).records) {
      if (!rec.efficient) continue;
      const auto cert = certify_over_sigma_grid(Zb, rec.label, cone, grid);
      if (!cert.certified) continue;
      ++certified;
      EXPECT_LE(tradeoff_constant(Zb, rec.label, cone), cert.n_bound + 1e-9);
    }
  }
  EXPECT_GT(certified, 100);
}
