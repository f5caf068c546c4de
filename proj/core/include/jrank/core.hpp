#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jrank/bitset.hpp"
#include "jrank/score.hpp"

namespace jrank {

/// Per-user approval sets A_u over m items, stored both user-major and
/// item-major. Immutable once built.
class ApprovalProfile {
 public:
  /// Throws IndexOutOfRange if an approval references an item >= m, BadParams
  /// if there are no users or no items.
  ApprovalProfile(std::size_t m, const std::vector<std::vector<ItemId>>& approvals);
  ApprovalProfile(std::size_t m, std::vector<ItemSet> approvals);

  std::size_t num_users() const noexcept { return by_user_.size(); }
  std::size_t num_items() const noexcept { return m_; }

  const ItemSet& approvals(UserId u) const { return by_user_.at(u); }
  const UserSet& approvers(ItemId i) const { return by_item_.at(i); }
  bool approves(UserId u, ItemId i) const { return by_user_.at(u).test(i); }
  std::size_t approval_count(ItemId i) const { return by_item_.at(i).count(); }

  /// Copy with A_u replaced by A_u ∪ {i}.
  ApprovalProfile with_approval(UserId u, ItemId i) const;

  /// Users are ordered; within a user the approval set is a set.
  friend bool operator==(const ApprovalProfile& a, const ApprovalProfile& b) {
    return a.m_ == b.m_ && a.by_user_ == b.by_user_;
  }

 private:
  void index_items();

  std::size_t m_;
  std::vector<ItemSet> by_user_;
  std::vector<UserSet> by_item_;
};

/// Partition of the n users into gamma disjoint non-empty blocks.
class GroupPartition {
 public:
  /// assignment[u] is the block index of user u. Blocks are 0..max; every
  /// index in that range must be used (BadPartition otherwise).
  explicit GroupPartition(std::vector<std::uint32_t> assignment);

  /// Builds from explicit blocks; they must be disjoint and cover [0, n).
  static GroupPartition from_blocks(std::size_t n,
                                    const std::vector<std::vector<UserId>>& blocks);

  std::size_t gamma() const noexcept { return members_.size(); }
  std::size_t num_users() const noexcept { return assignment_.size(); }
  std::uint32_t block_of(UserId u) const { return assignment_.at(u); }
  std::size_t block_size(std::size_t g) const { return members_.at(g).count(); }
  const UserSet& members(std::size_t g) const { return members_.at(g); }
  const std::vector<std::uint32_t>& assignment() const noexcept { return assignment_; }

  friend bool operator==(const GroupPartition& a, const GroupPartition& b) {
    return a.assignment_ == b.assignment_;
  }

 private:
  std::vector<std::uint32_t> assignment_;
  std::vector<UserSet> members_;
};

/// The tuple <m, A_n, k> with optional groups and classifier scores.
class Instance {
 public:
  Instance(ApprovalProfile profile, std::size_t k,
           std::optional<GroupPartition> groups = std::nullopt,
           std::optional<std::vector<double>> external_scores = std::nullopt);

  const ApprovalProfile& profile() const noexcept { return profile_; }
  std::size_t n() const noexcept { return profile_.num_users(); }
  std::size_t m() const noexcept { return profile_.num_items(); }
  std::size_t k() const noexcept { return k_; }
  const std::optional<GroupPartition>& groups() const noexcept { return groups_; }
  const std::optional<std::vector<double>>& external_scores() const noexcept {
    return external_scores_;
  }

  /// A group of this many users deserves representation: count >= n/k,
  /// evaluated exactly as count * k >= n.
  bool is_proportional(std::size_t count) const noexcept { return count * k_ >= n(); }

  Instance with_profile(ApprovalProfile profile) const;
  Instance with_k(std::size_t k) const;

  friend bool operator==(const Instance& a, const Instance& b) = default;

 private:
  ApprovalProfile profile_;
  std::size_t k_;
  std::optional<GroupPartition> groups_;
  std::optional<std::vector<double>> external_scores_;
};

/// Validating constructor for Instance. Errors: IndexOutOfRange, BadPartition,
/// BadK, NegativeScore.
Instance build_instance(std::size_t n, std::size_t m, std::size_t k,
                        const std::vector<std::vector<ItemId>>& approvals,
                        std::optional<GroupPartition> groups = std::nullopt,
                        std::optional<std::vector<double>> external_scores = std::nullopt);

/// User u approves item i iff probs[u][i] > cutoff (strict). Throws
/// BadProbability for entries or cutoff outside [0, 1].
std::vector<std::vector<ItemId>> threshold_probabilistic_approvals(
    const std::vector<std::vector<double>>& probs, double cutoff);

enum class JrStatus { unchecked, satisfied, violated };

struct Committee {
  std::vector<ItemId> items;  // ascending
  Score score;
  JrStatus satisfies_jr = JrStatus::unchecked;

  std::size_t size() const noexcept { return items.size(); }
};

}  // namespace jrank
