#include "jrank/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jrank/error.hpp"

namespace jrank {

ApprovalProfile::ApprovalProfile(std::size_t m,
                                 const std::vector<std::vector<ItemId>>& approvals)
    : m_(m) {
  if (m == 0) fail(ErrorCode::BadParams, "profile needs at least one item");
  if (approvals.empty()) fail(ErrorCode::BadParams, "profile needs at least one user");
  by_user_.reserve(approvals.size());
  for (std::size_t u = 0; u < approvals.size(); ++u) {
    ItemSet set(m);
    for (const auto i : approvals[u]) {
      if (i >= m) {
        fail(ErrorCode::IndexOutOfRange, "user " + std::to_string(u) + " approves item " +
                                             std::to_string(i) + " but m = " +
                                             std::to_string(m));
      }
      set.set(i);
    }
    by_user_.push_back(std::move(set));
  }
  index_items();
}

ApprovalProfile::ApprovalProfile(std::size_t m, std::vector<ItemSet> approvals)
    : m_(m), by_user_(std::move(approvals)) {
  if (m == 0) fail(ErrorCode::BadParams, "profile needs at least one item");
  if (by_user_.empty()) fail(ErrorCode::BadParams, "profile needs at least one user");
  for (const auto& set : by_user_) {
    if (set.size() != m) fail(ErrorCode::IndexOutOfRange, "approval bitset width != m");
  }
  index_items();
}

void ApprovalProfile::index_items() {
  by_item_.assign(m_, UserSet(by_user_.size()));
  for (std::size_t u = 0; u < by_user_.size(); ++u) {
    const auto& set = by_user_[u];
    for (auto i = set.find_first(); i != ItemSet::npos; i = set.find_next(i)) {
      by_item_[i].set(u);
    }
  }
}

ApprovalProfile ApprovalProfile::with_approval(UserId u, ItemId i) const {
  if (u >= num_users() || i >= m_) fail(ErrorCode::IndexOutOfRange, "with_approval");
  ApprovalProfile copy = *this;
  copy.by_user_[u].set(i);
  copy.by_item_[i].set(u);
  return copy;
}

GroupPartition::GroupPartition(std::vector<std::uint32_t> assignment)
    : assignment_(std::move(assignment)) {
  if (assignment_.empty()) fail(ErrorCode::BadPartition, "partition of zero users");
  const auto gamma = *std::max_element(assignment_.begin(), assignment_.end()) + std::size_t{1};
  if (gamma > assignment_.size()) {
    fail(ErrorCode::BadPartition, "more blocks than users; some block is empty");
  }
  members_.assign(gamma, UserSet(assignment_.size()));
  for (std::size_t u = 0; u < assignment_.size(); ++u) members_[assignment_[u]].set(u);
  for (std::size_t g = 0; g < gamma; ++g) {
    if (members_[g].none()) fail(ErrorCode::BadPartition, "block " + std::to_string(g) + " is empty");
  }
}

GroupPartition GroupPartition::from_blocks(std::size_t n,
                                           const std::vector<std::vector<UserId>>& blocks) {
  constexpr auto kUnassigned = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> assignment(n, kUnassigned);
  for (std::size_t g = 0; g < blocks.size(); ++g) {
    if (blocks[g].empty()) fail(ErrorCode::BadPartition, "block " + std::to_string(g) + " is empty");
    for (const auto u : blocks[g]) {
      if (u >= n) fail(ErrorCode::BadPartition, "user " + std::to_string(u) + " outside [0, n)");
      if (assignment[u] != kUnassigned) {
        fail(ErrorCode::BadPartition, "user " + std::to_string(u) + " in two blocks");
      }
      assignment[u] = static_cast<std::uint32_t>(g);
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    if (assignment[u] == kUnassigned) {
      fail(ErrorCode::BadPartition, "user " + std::to_string(u) + " in no block");
    }
  }
  return GroupPartition(std::move(assignment));
}

Instance::Instance(ApprovalProfile profile, std::size_t k, std::optional<GroupPartition> groups,
                   std::optional<std::vector<double>> external_scores)
    : profile_(std::move(profile)),
      k_(k),
      groups_(std::move(groups)),
      external_scores_(std::move(external_scores)) {
  if (k_ < 1 || k_ > profile_.num_items()) {
    fail(ErrorCode::BadK, "k = " + std::to_string(k_) + " must lie in [1, " +
                              std::to_string(profile_.num_items()) + "]");
  }
  if (groups_ && groups_->num_users() != profile_.num_users()) {
    fail(ErrorCode::BadPartition, "partition covers " + std::to_string(groups_->num_users()) +
                                      " users but n = " + std::to_string(profile_.num_users()));
  }
  if (external_scores_) {
    if (external_scores_->size() != profile_.num_items()) {
      fail(ErrorCode::MissingScores, "score map must cover all m items");
    }
    for (std::size_t i = 0; i < external_scores_->size(); ++i) {
      const double s = (*external_scores_)[i];
      if (!(s >= 0.0) || !std::isfinite(s)) {
        fail(ErrorCode::NegativeScore, "item " + std::to_string(i) + " has score " + std::to_string(s));
      }
    }
  }
}

Instance Instance::with_profile(ApprovalProfile profile) const {
  return Instance(std::move(profile), k_, groups_, external_scores_);
}

Instance Instance::with_k(std::size_t k) const {
  return Instance(profile_, k, groups_, external_scores_);
}

Instance build_instance(std::size_t n, std::size_t m, std::size_t k,
                        const std::vector<std::vector<ItemId>>& approvals,
                        std::optional<GroupPartition> groups,
                        std::optional<std::vector<double>> external_scores) {
  if (k < 1 || k > m) {
    fail(ErrorCode::BadK, "k = " + std::to_string(k) + " must lie in [1, " + std::to_string(m) + "]");
  }
  if (approvals.size() != n) {
    fail(ErrorCode::BadParams, "expected " + std::to_string(n) + " approval sets, got " +
                                   std::to_string(approvals.size()));
  }
  return Instance(ApprovalProfile(m, approvals), k, std::move(groups), std::move(external_scores));
}

std::vector<std::vector<ItemId>> threshold_probabilistic_approvals(
    const std::vector<std::vector<double>>& probs, double cutoff) {
  if (!(cutoff >= 0.0 && cutoff <= 1.0)) {
    fail(ErrorCode::BadProbability, "cutoff " + std::to_string(cutoff) + " outside [0, 1]");
  }
  std::vector<std::vector<ItemId>> out(probs.size());
  for (std::size_t u = 0; u < probs.size(); ++u) {
    for (std::size_t i = 0; i < probs[u].size(); ++i) {
      const double p = probs[u][i];
      if (!(p >= 0.0 && p <= 1.0)) {
        fail(ErrorCode::BadProbability, "entry (" + std::to_string(u) + ", " + std::to_string(i) +
                                            ") = " + std::to_string(p));
      }
      if (p > cutoff) out[u].push_back(static_cast<ItemId>(i));
    }
  }
  return out;
}

}  // namespace jrank
