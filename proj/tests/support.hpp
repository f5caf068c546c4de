#pragma once

// Shared fixtures and slow reference implementations for the test suites.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "jrank/core.hpp"
#include "jrank/error.hpp"
#include "jrank/rng.hpp"
#include "jrank/score.hpp"

namespace jrank::testing {

template <class F>
std::optional<ErrorCode> error_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Two groups of six. G1 = users 0..5 all approve item 0, G2 = users 6..11
// all approve item 1; user 5 (F) and user 6 (G) also approve items 2, 3, 4.
inline Instance bridge_pair_instance() {
  std::vector<std::vector<ItemId>> approvals(12);
  for (UserId u = 0; u < 6; ++u) approvals[u] = {0};
  for (UserId u = 6; u < 12; ++u) approvals[u] = {1};
  approvals[5] = {0, 2, 3, 4};
  approvals[6] = {1, 2, 3, 4};
  std::vector<std::uint32_t> groups(12, 0);
  std::fill(groups.begin() + 6, groups.end(), 1);
  return build_instance(12, 5, 3, approvals, GroupPartition(groups));
}

// Red users 0..2, blue users 3..5. Items 2..4 are approved by one user of
// each colour; items 0 and 1 by two users of a single colour.
inline Instance two_colour_instance() {
  const std::vector<std::vector<ItemId>> approvals = {
      {0}, {0}, {2, 3, 4}, {1}, {1}, {2, 3, 4}};
  return build_instance(6, 5, 3, approvals, GroupPartition({0, 0, 0, 1, 1, 1}));
}

// Independent JR check on plain vectors: no bitsets, no early-exit tricks.
inline bool naive_is_jr(const std::vector<ItemId>& items, const Instance& instance) {
  const std::size_t n = instance.n();
  std::vector<bool> represented(n, false);
  for (UserId u = 0; u < n; ++u) {
    for (const auto i : items) {
      if (instance.profile().approves(u, i)) represented[u] = true;
    }
  }
  for (ItemId c = 0; c < instance.m(); ++c) {
    std::size_t group = 0;
    for (UserId u = 0; u < n; ++u) {
      if (!represented[u] && instance.profile().approves(u, c)) ++group;
    }
    if (group > 0 && group * instance.k() >= n) return false;
  }
  return true;
}

// All k-subsets of [0, m) in lexicographic order, via bitmasks (m <= 20).
inline std::vector<std::vector<ItemId>> all_subsets(std::size_t m, std::size_t k) {
  std::vector<std::vector<ItemId>> out;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<ItemId> s;
    for (ItemId i = 0; i < m; ++i) {
      if (mask >> i & 1U) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Score sum_scores(const std::vector<ItemId>& items, const std::vector<Score>& scores) {
  Score total;
  for (const auto i : items) total += scores[i];
  return total;
}

// Best JR set by exhaustive search; first in lexicographic order among ties.
inline std::optional<std::vector<ItemId>> brute_best_jr(const Instance& instance,
                                                         const std::vector<Score>& scores) {
  std::optional<std::vector<ItemId>> best;
  Score best_score;
  for (const auto& s : all_subsets(instance.m(), instance.k())) {
    if (!naive_is_jr(s, instance)) continue;
    const Score total = sum_scores(s, scores);
    if (!best || total > best_score) {
      best = s;
      best_score = total;
    }
  }
  return best;
}

struct RandomInstanceSpec {
  std::size_t max_n = 8;
  std::size_t max_m = 6;
  double density = 0.35;
  std::size_t max_groups = 3;
};

inline Instance random_instance(Rng& rng, const RandomInstanceSpec& spec) {
  const std::size_t n = 1 + rng.below(spec.max_n);
  const std::size_t m = 1 + rng.below(spec.max_m);
  const std::size_t k = 1 + rng.below(m);
  std::vector<std::vector<ItemId>> approvals(n);
  for (auto& a : approvals) {
    for (ItemId i = 0; i < m; ++i) {
      if (rng.uniform() < spec.density) a.push_back(i);
    }
  }
  // Groups: a random surjection onto [0, gamma).
  const std::size_t gamma = 1 + rng.below(std::min(spec.max_groups, n));
  std::vector<std::uint32_t> groups(n);
  for (std::size_t u = 0; u < n; ++u) {
    groups[u] = u < gamma ? static_cast<std::uint32_t>(u) : static_cast<std::uint32_t>(rng.below(gamma));
  }
  std::vector<double> scores(m);
  for (auto& s : scores) s = static_cast<double>(rng.below(5));
  return build_instance(n, m, k, approvals, GroupPartition(groups), scores);
}

}  // namespace jrank::testing
