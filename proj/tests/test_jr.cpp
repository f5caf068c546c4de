#include <gtest/gtest.h>

#include "jrank/jr.hpp"
#include "support.hpp"

namespace jrank {
namespace {

using testing::error_of;

TEST(Cohesive, SubgroupSharingAnItem) {
  const auto inst = testing::bridge_pair_instance();
  EXPECT_TRUE(is_cohesive(std::vector<UserId>{0, 1, 2, 3}, inst));
  EXPECT_TRUE(is_cohesive(std::vector<UserId>{5, 6}, inst));
  EXPECT_FALSE(is_cohesive(std::vector<UserId>{0, 7}, inst));
}

TEST(Cohesive, SingletonWithApprovals) {
  const auto inst = build_instance(2, 2, 1, {{1}, {}});
  EXPECT_TRUE(is_cohesive(std::vector<UserId>{0}, inst));
  EXPECT_FALSE(is_cohesive(std::vector<UserId>{1}, inst));
}

TEST(Cohesive, EmptyGroupIsAnError) {
  const auto inst = build_instance(1, 1, 1, {{0}});
  EXPECT_EQ(error_of([&] { is_cohesive({}, inst); }), ErrorCode::EmptyGroup);
}

TEST(Represents, Basics) {
  const auto inst = testing::bridge_pair_instance();
  const std::vector<UserId> g = {0, 1, 2, 3, 4};
  EXPECT_FALSE(represents(std::vector<ItemId>{2, 3, 4}, g, inst));
  EXPECT_TRUE(represents(std::vector<ItemId>{0}, g, inst));
  EXPECT_FALSE(represents({}, g, inst));
}

TEST(VerifyJr, BridgePairUnconstrainedOptimumFails) {
  const auto inst = testing::bridge_pair_instance();
  const auto w = verify_jr(std::vector<ItemId>{2, 3, 4}, inst);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->item, 0u);
  EXPECT_EQ(w->group, (std::vector<UserId>{0, 1, 2, 3, 4}));
}

TEST(VerifyJr, BridgePairJrSetPasses) {
  const auto inst = testing::bridge_pair_instance();
  EXPECT_FALSE(verify_jr(std::vector<ItemId>{0, 1, 2}, inst));
}

TEST(VerifyJr, AllItemsPassWhenEveryoneApprovesSomething) {
  const auto inst = build_instance(3, 3, 3, {{0}, {1}, {2, 0}});
  EXPECT_FALSE(verify_jr(std::vector<ItemId>{0, 1, 2}, inst));
}

TEST(VerifyJr, WitnessIsCohesiveUnrepresentedAndLargeEnough) {
  Rng rng(17);
  for (int t = 0; t < 2000; ++t) {
    const auto inst = testing::random_instance(rng, {});
    const auto s = testing::all_subsets(inst.m(), inst.k()).front();
    const auto w = verify_jr(s, inst);
    EXPECT_EQ(w.has_value(), !testing::naive_is_jr(s, inst));
    if (!w) continue;
    EXPECT_TRUE(inst.is_proportional(w->group.size()));
    EXPECT_TRUE(is_cohesive(w->group, inst));
    EXPECT_FALSE(represents(s, w->group, inst));
    for (const auto u : w->group) EXPECT_TRUE(inst.profile().approves(u, w->item));
  }
}

TEST(VerifyJr, MonotoneUnderAddingItems) {
  // Once a set justifies, every superset of it does too.
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const auto inst = testing::random_instance(rng, {});
    ItemSet set(inst.m());
    bool justified = false;
    for (ItemId i = 0; i < inst.m(); ++i) {
      set.set(rng.below(inst.m()));
      const bool now = is_justifying(set, inst);
      if (justified) EXPECT_TRUE(now);
      justified = now;
    }
  }
}

TEST(VerifyJrBruteforce, BridgePair) {
  const auto inst = testing::bridge_pair_instance();
  EXPECT_TRUE(verify_jr_bruteforce(std::vector<ItemId>{2, 3, 4}, inst));
  EXPECT_FALSE(verify_jr_bruteforce(std::vector<ItemId>{0, 1, 4}, inst));
}

TEST(VerifyJrBruteforce, SelectEverything) {
  const auto inst = build_instance(4, 2, 2, {{0}, {1}, {0, 1}, {1}});
  EXPECT_FALSE(verify_jr_bruteforce(std::vector<ItemId>{0, 1}, inst));
}

TEST(VerifyJrBruteforce, RejectsLargeN) {
  const auto inst = build_instance(21, 1, 1, std::vector<std::vector<ItemId>>(21, {0}));
  EXPECT_EQ(error_of([&] { verify_jr_bruteforce(std::vector<ItemId>{0}, inst); }), ErrorCode::TooLarge);
}

TEST(VerifyJrBruteforce, AgreesWithScanOnRandomInstances) {
  Rng rng(1000);
  for (int t = 0; t < 1000; ++t) {
    const auto inst = testing::random_instance(rng, {});
    for (const auto& s : testing::all_subsets(inst.m(), inst.k())) {
      ASSERT_EQ(verify_jr(s, inst).has_value(), verify_jr_bruteforce(s, inst).has_value());
    }
  }
}

TEST(JrSetContaining, BridgePairSeededWithBridgeItem) {
  const auto inst = testing::bridge_pair_instance();
  const auto s = jr_set_containing(2, inst);
  EXPECT_EQ(s, (std::vector<ItemId>{2, 0, 1}));
  EXPECT_FALSE(verify_jr(s, inst));
}

TEST(JrSetContaining, UniversallyApprovedItemAlone) {
  const auto inst = build_instance(3, 3, 1, {{1}, {1, 2}, {0, 1}});
  EXPECT_EQ(jr_set_containing(1, inst), std::vector<ItemId>{1});
}

TEST(JrSetContaining, UnapprovedItem) {
  const auto inst = build_instance(2, 2, 1, {{0}, {0}});
  EXPECT_EQ(error_of([&] { jr_set_containing(1, inst); }), ErrorCode::Unapproved);
}

TEST(JrSetContaining, AlwaysJustifiesOnRandomInstances) {
  Rng rng(99);
  for (int t = 0; t < 3000; ++t) {
    const auto inst = testing::random_instance(rng, {12, 8, 0.3, 3});
    for (ItemId i = 0; i < inst.m(); ++i) {
      if (inst.profile().approvers(i).none()) continue;
      const auto s = jr_set_containing(i, inst);
      ASSERT_EQ(s.size(), inst.k());
      EXPECT_EQ(s.front(), i);
      EXPECT_TRUE(testing::naive_is_jr(s, inst));
    }
  }
}

}  // namespace
}  // namespace jrank
