#include "jrank/scoring.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "jrank/error.hpp"
#include "jrank/rng.hpp"

namespace jrank {

namespace {

void check_item(ItemId item, const Instance& instance) {
  if (item >= instance.m()) {
    fail(ErrorCode::IndexOutOfRange,
         "item " + std::to_string(item) + " outside [0, " + std::to_string(instance.m()) + ")");
  }
}

const GroupPartition& require_groups(const Instance& instance) {
  if (!instance.groups()) fail(ErrorCode::MissingGroups, "diverse approval needs a group partition");
  return *instance.groups();
}

Rational approval_rate(const UserSet& approvers, const GroupPartition& groups, std::size_t g) {
  const auto in_group = (approvers & groups.members(g)).count();
  return Rational(static_cast<std::int64_t>(in_group),
                  static_cast<std::int64_t>(groups.block_size(g)));
}

}  // namespace

ScoringRule::ScoringRule(std::string name, RuleKind kind, Evaluator evaluate)
    : name_(std::move(name)), kind_(kind), evaluate_(std::move(evaluate)) {}

ScoringRule ScoringRule::custom(std::string name, Evaluator evaluate) {
  return ScoringRule(std::move(name), RuleKind::custom, std::move(evaluate));
}

Score ScoringRule::evaluate(ItemId item, const Instance& instance) const {
  check_item(item, instance);
  return evaluate_(item, instance);
}

std::vector<Score> ScoringRule::evaluate_all(const Instance& instance) const {
  std::vector<Score> scores;
  scores.reserve(instance.m());
  for (ItemId i = 0; i < instance.m(); ++i) scores.push_back(evaluate_(i, instance));
  return scores;
}

Score ScoringRule::set_score(std::span<const ItemId> items, const Instance& instance) const {
  Score total;
  for (const auto i : items) total += evaluate(i, instance);
  return total;
}

Score engagement_score(ItemId item, const Instance& instance) {
  check_item(item, instance);
  return Score::integer(static_cast<std::int64_t>(instance.profile().approval_count(item)));
}

Score maximin_diverse_approval(ItemId item, const Instance& instance) {
  check_item(item, instance);
  const auto& groups = require_groups(instance);
  const auto& approvers = instance.profile().approvers(item);
  Rational best = approval_rate(approvers, groups, 0);
  for (std::size_t g = 1; g < groups.gamma(); ++g) {
    best = std::min(best, approval_rate(approvers, groups, g));
  }
  return Score(best);
}

Score product_diverse_approval(ItemId item, const Instance& instance) {
  check_item(item, instance);
  const auto& groups = require_groups(instance);
  const auto& approvers = instance.profile().approvers(item);
  Rational product(1);
  for (std::size_t g = 0; g < groups.gamma(); ++g) {
    product *= approval_rate(approvers, groups, g);
    if (product.numerator() == 0) break;
  }
  return Score(product);
}

Score external_score(ItemId item, const Instance& instance) {
  check_item(item, instance);
  if (!instance.external_scores()) fail(ErrorCode::MissingScores, "instance has no score file");
  return Score((*instance.external_scores())[item]);
}

ScoringRule engagement_rule() {
  return ScoringRule("engagement", RuleKind::engagement, engagement_score);
}

ScoringRule maximin_rule() {
  return ScoringRule("mda", RuleKind::maximin_diverse_approval, maximin_diverse_approval);
}

ScoringRule product_rule() {
  return ScoringRule("product", RuleKind::product_diverse_approval, product_diverse_approval);
}

ScoringRule external_rule() {
  return ScoringRule("external", RuleKind::external, external_score);
}

ScoringRule rule_by_name(const std::string& name) {
  if (name == "engagement" || name == "eng") return engagement_rule();
  if (name == "mda" || name == "maximin_diverse_approval") return maximin_rule();
  if (name == "product" || name == "product_diverse_approval") return product_rule();
  if (name == "external" || name == "classifier") return external_rule();
  fail(ErrorCode::BadParams, "unknown scoring rule '" + name + "'");
}

std::optional<ItemId> check_approval_dependent(const ScoringRule& rule,
                                               const Instance& instance) {
  for (ItemId i = 0; i < instance.m(); ++i) {
    if (instance.profile().approvers(i).none() && !rule.evaluate(i, instance).is_zero()) {
      return i;
    }
  }
  return std::nullopt;
}

std::optional<MonotonicityViolation> check_approval_monotonic(const ScoringRule& rule,
                                                              const Instance& instance,
                                                              std::size_t trials,
                                                              std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::BadParams, "trials must be >= 1");
  Rng rng(seed);
  Instance current = instance;
  for (std::size_t t = 0; t < trials; ++t) {
    // Users with a free slot; stop once the profile is saturated.
    std::vector<UserId> open;
    for (UserId u = 0; u < current.n(); ++u) {
      if (!current.profile().approvals(u).all()) open.push_back(u);
    }
    if (open.empty()) break;
    const UserId u = open[rng.below(open.size())];
    const auto free_items = members_of(~current.profile().approvals(u));
    const ItemId i = free_items[rng.below(free_items.size())];

    Instance next = current.with_profile(current.profile().with_approval(u, i));
    const Score before = rule.evaluate(i, current);
    const Score after = rule.evaluate(i, next);
    if (after < before) {
      return MonotonicityViolation{u, i, current.profile(), next.profile(), before, after};
    }
    current = std::move(next);
  }
  return std::nullopt;
}

}  // namespace jrank
