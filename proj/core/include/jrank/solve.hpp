#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jrank/core.hpp"
#include "jrank/scoring.hpp"

namespace jrank {

enum class Method { opt_unconstrained, opt_jr_exact, greedy_cc };

std::string_view to_string(Method method) noexcept;

struct SelectionResult {
  Committee committee;
  std::string rule;
  Method method = Method::opt_unconstrained;
  /// Items GreedyCC picked while the set was not yet n/k-justifying.
  std::size_t justifying_prefix_size = 0;
  /// Items in the order they were chosen.
  std::vector<ItemId> pick_order;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Top-k items by score; ties go to the lower index.
SelectionResult optimal_set(const Instance& instance, const ScoringRule& rule);
SelectionResult optimal_set(const Instance& instance, std::span<const Score> scores,
                            std::string rule_name = {});

/// Best JR committee by enumerating all size-k subsets in lexicographic
/// order. Throws BudgetExceeded when C(m, k) > budget.
SelectionResult optimal_jr_set_exact(const Instance& instance, const ScoringRule& rule,
                                     std::uint64_t budget = kDefaultEnumerationBudget);
SelectionResult optimal_jr_set_exact(const Instance& instance, std::span<const Score> scores,
                                     std::uint64_t budget = kDefaultEnumerationBudget,
                                     std::string rule_name = {});

/// Two-stage GreedyCC: max-coverage picks while some item has at least n/k
/// unrepresented approvers, then max-score picks. Ties go to the lower index.
SelectionResult greedy_cc(const Instance& instance, const ScoringRule& rule);
SelectionResult greedy_cc(const Instance& instance, std::span<const Score> scores,
                          std::string rule_name = {});

enum class PriceMethod { exact, greedy };

struct PriceReport {
  Score score_opt;
  Score score_constrained;
  /// score_opt / score_constrained; empty (undefined) when the denominator is 0.
  std::optional<Score> price;
  /// True when the denominator is the exact JR optimum.
  bool exact = false;
  SelectionResult unconstrained;
  SelectionResult constrained;

  bool undefined() const noexcept { return !price.has_value(); }
};

PriceReport price_of_jr(const Instance& instance, const ScoringRule& rule, PriceMethod method,
                        std::uint64_t budget = kDefaultEnumerationBudget);

/// Binomial coefficient saturating at UINT64_MAX.
std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) noexcept;

}  // namespace jrank
