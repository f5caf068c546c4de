#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jrank/core.hpp"
#include "jrank/score.hpp"

namespace jrank {

enum class RuleKind {
  engagement,
  maximin_diverse_approval,
  product_diverse_approval,
  external,
  custom,
};

/// An additive item-scoring rule f(i, A_n) >= 0. The score of a set is the
/// sum of its item scores.
class ScoringRule {
 public:
  using Evaluator = std::function<Score(ItemId, const Instance&)>;

  ScoringRule(std::string name, RuleKind kind, Evaluator evaluate);

  /// User-supplied rule, e.g. negative controls in property checks.
  static ScoringRule custom(std::string name, Evaluator evaluate);

  const std::string& name() const noexcept { return name_; }
  RuleKind kind() const noexcept { return kind_; }

  Score evaluate(ItemId item, const Instance& instance) const;
  std::vector<Score> evaluate_all(const Instance& instance) const;
  Score set_score(std::span<const ItemId> items, const Instance& instance) const;

 private:
  std::string name_;
  RuleKind kind_;
  Evaluator evaluate_;
};

/// Number of users approving the item.
Score engagement_score(ItemId item, const Instance& instance);

/// Minimum over groups of the within-group approval rate. Needs groups.
Score maximin_diverse_approval(ItemId item, const Instance& instance);

/// Product over groups of the within-group approval rate. Needs groups.
Score product_diverse_approval(ItemId item, const Instance& instance);

/// Stored classifier score for the item. Needs external scores.
Score external_score(ItemId item, const Instance& instance);

ScoringRule engagement_rule();
ScoringRule maximin_rule();
ScoringRule product_rule();
ScoringRule external_rule();

/// Accepts "engagement", "mda", "product", "external" (and long forms
/// "maximin_diverse_approval", "product_diverse_approval").
ScoringRule rule_by_name(const std::string& name);

/// Returns an item nobody approves that the rule scores above zero, if any.
std::optional<ItemId> check_approval_dependent(const ScoringRule& rule,
                                               const Instance& instance);

struct MonotonicityViolation {
  UserId user;
  ItemId item;
  ApprovalProfile before;
  ApprovalProfile after;
  Score score_before;
  Score score_after;
};

/// Randomized check: repeatedly add one approval (A'_u = A_u ∪ {i}) to the
/// evolving profile and confirm f(i) does not decrease.
std::optional<MonotonicityViolation> check_approval_monotonic(const ScoringRule& rule,
                                                              const Instance& instance,
                                                              std::size_t trials,
                                                              std::uint64_t seed);

}  // namespace jrank
