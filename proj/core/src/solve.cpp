#include "jrank/solve.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>

#include "jrank/error.hpp"
#include "jrank/jr.hpp"
#include "jrank/rng.hpp"

namespace jrank {

namespace {

void require_scores(const Instance& instance, std::span<const Score> scores) {
  if (scores.size() != instance.m()) {
    fail(ErrorCode::BadParams, "expected " + std::to_string(instance.m()) + " item scores");
  }
}

Committee make_committee(std::vector<ItemId> items, std::span<const Score> scores,
                         JrStatus status) {
  std::sort(items.begin(), items.end());
  Score total;
  for (const auto i : items) total += scores[i];
  return Committee{std::move(items), total, status};
}

JrStatus jr_status(std::span<const ItemId> items, const Instance& instance) {
  return verify_jr(items, instance) ? JrStatus::violated : JrStatus::satisfied;
}

// Item-major approver bitsets flattened into 64-bit words so the subset
// enumeration can test the justifying property without allocating.
class ApproverWords {
 public:
  explicit ApproverWords(const Instance& instance)
      : instance_(instance),
        words_((instance.n() + 63) / 64),
        data_(instance.m() * words_),
        covered_(words_) {
    for (ItemId c = 0; c < instance.m(); ++c) {
      boost::to_block_range(instance.profile().approvers(c), data_.begin() + c * words_);
    }
  }

  bool is_justifying(std::span<const ItemId> items) {
    std::fill(covered_.begin(), covered_.end(), 0);
    for (const auto i : items) {
      const auto* row = &data_[i * words_];
      for (std::size_t w = 0; w < words_; ++w) covered_[w] |= row[w];
    }
    for (ItemId c = 0; c < instance_.m(); ++c) {
      const auto* row = &data_[c * words_];
      std::size_t count = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        count += static_cast<std::size_t>(std::popcount(row[w] & ~covered_[w]));
      }
      if (count > 0 && instance_.is_proportional(count)) return false;
    }
    return true;
  }

 private:
  const Instance& instance_;
  std::size_t words_;
  std::vector<std::uint64_t> data_;
  std::vector<std::uint64_t> covered_;
};

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::opt_unconstrained: return "opt_unconstrained";
    case Method::opt_jr_exact: return "opt_jr_exact";
    case Method::greedy_cc: return "greedy_cc";
  }
  return "unknown";
}

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  uint128 result = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    // result * (n - k + j) / j stays integral at every step.
    result = result * (n - k + j) / j;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

SelectionResult optimal_set(const Instance& instance, std::span<const Score> scores,
                            std::string rule_name) {
  require_scores(instance, scores);
  std::vector<ItemId> order(instance.m());
  std::iota(order.begin(), order.end(), ItemId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](ItemId a, ItemId b) { return scores[a] > scores[b]; });
  order.resize(instance.k());

  SelectionResult result;
  result.rule = std::move(rule_name);
  result.method = Method::opt_unconstrained;
  result.pick_order = order;
  result.committee = make_committee(order, scores, jr_status(order, instance));
  return result;
}

SelectionResult optimal_set(const Instance& instance, const ScoringRule& rule) {
  const auto scores = rule.evaluate_all(instance);
  return optimal_set(instance, scores, rule.name());
}

SelectionResult optimal_jr_set_exact(const Instance& instance, std::span<const Score> scores,
                                     std::uint64_t budget, std::string rule_name) {
  require_scores(instance, scores);
  const std::size_t m = instance.m();
  const std::size_t k = instance.k();
  const auto subsets = binomial_saturating(m, k);
  if (subsets > budget) {
    fail(ErrorCode::BudgetExceeded, "C(" + std::to_string(m) + ", " + std::to_string(k) +
                                        ") = " + std::to_string(subsets) + " subsets exceeds budget " +
                                        std::to_string(budget));
  }

  // Lexicographic enumeration; only a strictly better score replaces the
  // incumbent, so ties resolve to the lexicographically smallest set.
  std::vector<ItemId> combo(k);
  std::iota(combo.begin(), combo.end(), ItemId{0});
  std::optional<std::vector<ItemId>> best;
  Score best_score;
  ApproverWords words(instance);
  for (;;) {
    Score total;
    for (const auto i : combo) total += scores[i];
    if ((!best || total > best_score) && words.is_justifying(combo)) {
      best = combo;
      best_score = total;
    }

    std::size_t pos = k;
    while (pos > 0 && combo[pos - 1] == m - k + pos - 1) --pos;
    if (pos == 0) break;
    ++combo[pos - 1];
    for (std::size_t j = pos; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  // GreedyCC always produces a size-k JR set, so one exists.
  if (!best) fail(ErrorCode::BadParams, "no JR committee found");

  SelectionResult result;
  result.rule = std::move(rule_name);
  result.method = Method::opt_jr_exact;
  result.pick_order = *best;
  result.committee = make_committee(*best, scores, JrStatus::satisfied);
  return result;
}

SelectionResult optimal_jr_set_exact(const Instance& instance, const ScoringRule& rule,
                                     std::uint64_t budget) {
  const auto scores = rule.evaluate_all(instance);
  return optimal_jr_set_exact(instance, scores, budget, rule.name());
}

SelectionResult greedy_cc(const Instance& instance, std::span<const Score> scores,
                          std::string rule_name) {
  require_scores(instance, scores);
  const auto& profile = instance.profile();
  const std::size_t m = instance.m();

  ItemSet chosen(m);
  std::vector<ItemId> order;
  UserSet voters(instance.n());
  voters.set();
  std::size_t prefix = 0;

  while (order.size() < instance.k()) {
    // Stage 1: an item approved by >= n/k remaining voters exists.
    std::size_t best_cover = 0;
    ItemId best = 0;
    for (ItemId c = 0; c < m; ++c) {
      if (chosen.test(c)) continue;
      const auto cover = (profile.approvers(c) & voters).count();
      if (cover > best_cover) {
        best_cover = cover;
        best = c;
      }
    }
    if (best_cover > 0 && instance.is_proportional(best_cover)) {
      ++prefix;
    } else {
      // Stage 2: highest score among unpicked items.
      std::optional<ItemId> top;
      for (ItemId c = 0; c < m; ++c) {
        if (chosen.test(c)) continue;
        if (!top || scores[c] > scores[*top]) top = c;
      }
      best = *top;
    }
    chosen.set(best);
    order.push_back(best);
    voters -= profile.approvers(best);
  }

  SelectionResult result;
  result.rule = std::move(rule_name);
  result.method = Method::greedy_cc;
  result.justifying_prefix_size = prefix;
  result.pick_order = order;
  result.committee = make_committee(order, scores, JrStatus::satisfied);
  return result;
}

SelectionResult greedy_cc(const Instance& instance, const ScoringRule& rule) {
  const auto scores = rule.evaluate_all(instance);
  return greedy_cc(instance, scores, rule.name());
}

PriceReport price_of_jr(const Instance& instance, const ScoringRule& rule, PriceMethod method,
                        std::uint64_t budget) {
  const auto scores = rule.evaluate_all(instance);
  PriceReport report;
  report.unconstrained = optimal_set(instance, scores, rule.name());
  if (method == PriceMethod::exact) {
    report.constrained = optimal_jr_set_exact(instance, scores, budget, rule.name());
    report.exact = true;
  } else {
    report.constrained = greedy_cc(instance, scores, rule.name());
    report.exact = false;
  }
  report.score_opt = report.unconstrained.committee.score;
  report.score_constrained = report.constrained.committee.score;
  report.price = ratio(report.score_opt, report.score_constrained);
  return report;
}

}  // namespace jrank
