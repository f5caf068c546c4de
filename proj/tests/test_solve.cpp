#include <gtest/gtest.h>

#include "jrank/constructions.hpp"
#include "jrank/jr.hpp"
#include "jrank/solve.hpp"
#include "support.hpp"

namespace jrank {
namespace {

using testing::error_of;

TEST(OptimalSet, BridgePairMaximin) {
  const auto inst = testing::bridge_pair_instance();
  const auto r = optimal_set(inst, maximin_rule());
  EXPECT_EQ(r.committee.items, (std::vector<ItemId>{2, 3, 4}));
  EXPECT_EQ(r.committee.score.rational(), Rational(1, 2));
  EXPECT_EQ(r.committee.satisfies_jr, JrStatus::violated);
}

TEST(OptimalSet, KEqualsM) {
  const auto inst = build_instance(2, 3, 3, {{0}, {2}});
  EXPECT_EQ(optimal_set(inst, engagement_rule()).committee.items, (std::vector<ItemId>{0, 1, 2}));
}

TEST(OptimalSet, AllZeroScoresPickLowestIndices) {
  const auto inst = build_instance(2, 5, 2, {{}, {}});
  const auto r = optimal_set(inst, engagement_rule());
  EXPECT_EQ(r.committee.items, (std::vector<ItemId>{0, 1}));
  EXPECT_TRUE(r.committee.score.is_zero());
}

TEST(OptimalSet, MatchesBruteForceMaximum) {
  Rng rng(8);
  for (int t = 0; t < 500; ++t) {
    const auto inst = testing::random_instance(rng, {});
    const auto scores = engagement_rule().evaluate_all(inst);
    Score best;
    for (const auto& s : testing::all_subsets(inst.m(), inst.k())) {
      best = std::max(best, testing::sum_scores(s, scores),
                      [](const Score& a, const Score& b) { return a < b; });
    }
    EXPECT_EQ(optimal_set(inst, scores).committee.score, best);
  }
}

TEST(OptimalJrExact, BridgePairLexicographicOptimum) {
  const auto inst = testing::bridge_pair_instance();
  const auto r = optimal_jr_set_exact(inst, maximin_rule());
  EXPECT_EQ(r.committee.items, (std::vector<ItemId>{0, 1, 2}));
  EXPECT_EQ(r.committee.score.rational(), Rational(1, 6));
}

TEST(OptimalJrExact, EveryJrSetContainsBothBlocItems) {
  const auto inst = testing::bridge_pair_instance();
  for (const auto& s : testing::all_subsets(5, 3)) {
    if (!testing::naive_is_jr(s, inst)) continue;
    EXPECT_TRUE(std::find(s.begin(), s.end(), 0) != s.end());
    EXPECT_TRUE(std::find(s.begin(), s.end(), 1) != s.end());
  }
}

TEST(OptimalJrExact, SameAsUnconstrainedWhenOptimumIsJr) {
  const auto inst = build_instance(4, 3, 2, {{0}, {0}, {1}, {1, 2}});
  const auto opt = optimal_set(inst, engagement_rule());
  ASSERT_EQ(opt.committee.satisfies_jr, JrStatus::satisfied);
  const auto jr = optimal_jr_set_exact(inst, engagement_rule());
  EXPECT_EQ(jr.committee.items, opt.committee.items);
  EXPECT_EQ(jr.committee.score, opt.committee.score);
}

TEST(OptimalJrExact, MatchesBruteForce) {
  Rng rng(21);
  for (int t = 0; t < 1000; ++t) {
    const auto inst = testing::random_instance(rng, {10, 8, 0.3, 3});
    for (const auto& rule : {engagement_rule(), maximin_rule(), external_rule()}) {
      const auto scores = rule.evaluate_all(inst);
      const auto expected = testing::brute_best_jr(inst, scores);
      ASSERT_TRUE(expected);
      EXPECT_EQ(optimal_jr_set_exact(inst, scores).committee.items, *expected);
    }
  }
}

TEST(OptimalJrExact, BudgetExceeded) {
  const auto inst = build_instance(1, 25, 12, {{0}});
  EXPECT_EQ(binomial_saturating(25, 12), 5'200'300u);
  EXPECT_EQ(error_of([&] { optimal_jr_set_exact(inst, engagement_rule(), 5'000'000); }),
            ErrorCode::BudgetExceeded);
  const auto wide = build_instance(1, 30, 15, {{0}});
  EXPECT_EQ(error_of([&] { optimal_jr_set_exact(wide, engagement_rule()); }),
            ErrorCode::BudgetExceeded);
}

TEST(Binomial, Saturates) {
  EXPECT_EQ(binomial_saturating(5, 2), 10u);
  EXPECT_EQ(binomial_saturating(3, 5), 0u);
  EXPECT_EQ(binomial_saturating(200, 100), std::numeric_limits<std::uint64_t>::max());
}

TEST(GreedyCc, BridgePair) {
  const auto inst = testing::bridge_pair_instance();
  const auto r = greedy_cc(inst, maximin_rule());
  EXPECT_EQ(r.pick_order, (std::vector<ItemId>{0, 1, 2}));
  EXPECT_EQ(r.committee.items, (std::vector<ItemId>{0, 1, 2}));
  EXPECT_EQ(r.justifying_prefix_size, 2u);
  EXPECT_FALSE(verify_jr(r.committee.items, inst));
}

TEST(GreedyCc, TwoColourRepresentsClusteredUsers) {
  const auto inst = testing::two_colour_instance();
  const auto r = greedy_cc(inst, maximin_rule());
  EXPECT_FALSE(verify_jr(r.committee.items, inst));
  for (const UserId u : {0u, 1u, 3u, 4u}) {
    EXPECT_TRUE(inst.profile().approvals(u).intersects(make_bitset(inst.m(), r.committee.items)));
  }
}

TEST(GreedyCc, SingleSharedItemThenScores) {
  const auto inst = build_instance(3, 3, 2, {{0}, {0}, {0}}, std::nullopt,
                                   std::vector<double>{0.0, 0.2, 0.9});
  const auto r = greedy_cc(inst, external_rule());
  EXPECT_EQ(r.pick_order, (std::vector<ItemId>{0, 2}));
  EXPECT_EQ(r.justifying_prefix_size, 1u);
}

TEST(GreedyCc, AlwaysJustifies) {
  Rng rng(4);
  for (int t = 0; t < 2000; ++t) {
    const auto inst = testing::random_instance(rng, {40, 20, 0.15, 4});
    const auto r = greedy_cc(inst, engagement_rule());
    ASSERT_EQ(r.committee.size(), inst.k());
    EXPECT_TRUE(testing::naive_is_jr(r.committee.items, inst));
    EXPECT_LE(r.justifying_prefix_size, inst.k());
  }
}

TEST(Price, BridgePairExactIsK) {
  const auto report = price_of_jr(testing::bridge_pair_instance(), maximin_rule(), PriceMethod::exact);
  ASSERT_TRUE(report.price);
  EXPECT_EQ(report.price->rational(), Rational(3));
  EXPECT_TRUE(report.exact);
}

TEST(Price, OneWhenOptimumIsJr) {
  const auto inst = build_instance(4, 3, 2, {{0}, {0}, {1}, {1, 2}});
  const auto report = price_of_jr(inst, engagement_rule(), PriceMethod::exact);
  EXPECT_EQ(report.price->rational(), Rational(1));
}

TEST(Price, UndefinedWhenConstrainedScoreIsZero) {
  const auto inst = build_instance(2, 3, 1, {{0}, {1}}, GroupPartition({0, 1}));
  const auto report = price_of_jr(inst, maximin_rule(), PriceMethod::greedy);
  EXPECT_TRUE(report.undefined());
}

TEST(Price, GreedyNeverBeatsExact) {
  Rng rng(12);
  for (int t = 0; t < 500; ++t) {
    const auto inst = testing::random_instance(rng, {10, 8, 0.3, 3});
    const auto exact = price_of_jr(inst, engagement_rule(), PriceMethod::exact);
    const auto greedy = price_of_jr(inst, engagement_rule(), PriceMethod::greedy);
    EXPECT_LE(greedy.score_constrained, exact.score_constrained);
  }
}

TEST(Constructions, SingletonBlocsPrice) {
  const auto a = price_of_jr(construct_prop41_instance(2, 0.1, 1.0), external_rule(), PriceMethod::exact);
  EXPECT_NEAR(a.price->to_double(), 5.5, 1e-12);
  const auto b = price_of_jr(construct_prop41_instance(2, 0.01, 1.0), external_rule(), PriceMethod::exact);
  EXPECT_NEAR(b.price->to_double(), 50.5, 1e-9);
  EXPECT_GT(b.price->to_double(), a.price->to_double());
  EXPECT_EQ(error_of([] { construct_prop41_instance(2, 1.0, 1.0); }), ErrorCode::BadParams);
}

TEST(Constructions, ApprovalDependentTightness) {
  for (const auto [n, k] : {std::pair{12, 4}, {6, 3}, {20, 5}}) {
    const auto inst = construct_thm42_instance(n, k);
    const auto report = price_of_jr(inst, maximin_rule(), PriceMethod::exact);
    ASSERT_TRUE(report.price);
    EXPECT_EQ(report.price->rational(), Rational(k)) << "n=" << n << " k=" << k;
  }
  EXPECT_EQ(construct_thm42_instance(12, 4).groups()->gamma(), 3u);
  EXPECT_EQ(error_of([] { construct_thm42_instance(2, 2); }), ErrorCode::BadDivisibility);
  EXPECT_EQ(error_of([] { construct_thm42_instance(5, 3); }), ErrorCode::BadDivisibility);
}

TEST(Constructions, Thm42PriceIsKOverKMinusGamma) {
  // (12, 6): gamma = 4, so the price is 6/2 = 3 rather than k.
  const auto inst = construct_thm42_instance(12, 6);
  EXPECT_EQ(inst.groups()->gamma(), 4u);
  const auto report = price_of_jr(inst, maximin_rule(), PriceMethod::exact);
  ASSERT_TRUE(report.price);
  EXPECT_EQ(report.price->rational(), Rational(3));
}

TEST(Constructions, CohesiveGroupTightness) {
  const auto a = price_of_jr(construct_thm51_tight_instance(12, 4, 2), external_rule(), PriceMethod::exact);
  EXPECT_NEAR(a.price->to_double(), 2.0, 1e-12);
  const auto b = price_of_jr(construct_thm51_tight_instance(10, 5, 1), external_rule(), PriceMethod::exact);
  EXPECT_NEAR(b.price->to_double(), 5.0 / 4.0, 1e-12);
  EXPECT_EQ(error_of([] { construct_thm51_tight_instance(12, 4, 4); }), ErrorCode::BadParams);
}

}  // namespace
}  // namespace jrank
