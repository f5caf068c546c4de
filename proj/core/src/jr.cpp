#include "jrank/jr.hpp"

#include <bit>
#include <cstdint>
#include <string>

#include "jrank/error.hpp"

namespace jrank {

namespace {

void require_users(std::span<const UserId> group, const Instance& instance) {
  if (group.empty()) fail(ErrorCode::EmptyGroup, "group must be non-empty");
  for (const auto u : group) {
    if (u >= instance.n()) fail(ErrorCode::IndexOutOfRange, "user " + std::to_string(u));
  }
}

// Users approving at least one item of the set.
UserSet represented_users(const ItemSet& items, const Instance& instance) {
  UserSet covered(instance.n());
  for (auto i = items.find_first(); i != ItemSet::npos; i = items.find_next(i)) {
    covered |= instance.profile().approvers(static_cast<ItemId>(i));
  }
  return covered;
}

}  // namespace

bool is_cohesive(std::span<const UserId> group, const Instance& instance) {
  require_users(group, instance);
  ItemSet common = instance.profile().approvals(group.front());
  for (const auto u : group.subspan(1)) common &= instance.profile().approvals(u);
  return common.any();
}

bool represents(std::span<const ItemId> items, std::span<const UserId> group,
                const Instance& instance) {
  require_users(group, instance);
  const ItemSet set = make_bitset(instance.m(), items);
  for (const auto u : group) {
    if (instance.profile().approvals(u).intersects(set)) return true;
  }
  return false;
}

std::optional<JrWitness> verify_jr(const ItemSet& items, const Instance& instance) {
  if (items.size() != instance.m()) fail(ErrorCode::IndexOutOfRange, "item set width != m");
  const UserSet unrepresented = ~represented_users(items, instance);
  for (ItemId c = 0; c < instance.m(); ++c) {
    const UserSet group = instance.profile().approvers(c) & unrepresented;
    if (group.any() && instance.is_proportional(group.count())) {
      return JrWitness{c, members_of(group)};
    }
  }
  return std::nullopt;
}

std::optional<JrWitness> verify_jr(std::span<const ItemId> items, const Instance& instance) {
  return verify_jr(make_bitset(instance.m(), items), instance);
}

bool is_justifying(const ItemSet& items, const Instance& instance) {
  const UserSet unrepresented = ~represented_users(items, instance);
  for (ItemId c = 0; c < instance.m(); ++c) {
    const auto count = (instance.profile().approvers(c) & unrepresented).count();
    if (count > 0 && instance.is_proportional(count)) return false;
  }
  return true;
}

std::optional<JrWitness> verify_jr_bruteforce(std::span<const ItemId> items,
                                              const Instance& instance) {
  const std::size_t n = instance.n();
  if (n > 20) fail(ErrorCode::TooLarge, "brute-force JR check supports n <= 20, got " + std::to_string(n));
  const ItemSet set = make_bitset(instance.m(), items);
  const auto& profile = instance.profile();

  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (!instance.is_proportional(size)) continue;

    ItemSet common(instance.m());
    common.set();
    bool unrepresented = true;
    for (UserId u = 0; u < n && unrepresented; ++u) {
      if ((mask >> u & 1U) == 0) continue;
      common &= profile.approvals(u);
      unrepresented = !profile.approvals(u).intersects(set);
    }
    if (unrepresented && common.any()) {
      std::vector<UserId> group;
      for (UserId u = 0; u < n; ++u) {
        if (mask >> u & 1U) group.push_back(u);
      }
      return JrWitness{static_cast<ItemId>(common.find_first()), std::move(group)};
    }
  }
  return std::nullopt;
}

std::vector<ItemId> jr_set_containing(ItemId item, const Instance& instance) {
  if (item >= instance.m()) fail(ErrorCode::IndexOutOfRange, "item " + std::to_string(item));
  const auto& profile = instance.profile();
  if (profile.approvers(item).none()) {
    fail(ErrorCode::Unapproved, "item " + std::to_string(item) + " has no approver");
  }

  ItemSet chosen(instance.m());
  chosen.set(item);
  std::vector<ItemId> order{item};
  UserSet unrepresented = ~profile.approvers(item);

  // At most k-1 coverage picks follow: each covers >= n/k of the n-1 users
  // left, after which fewer than n/k remain.
  while (order.size() < instance.k()) {
    std::size_t best_count = 0;
    ItemId best = 0;
    for (ItemId c = 0; c < instance.m(); ++c) {
      if (chosen.test(c)) continue;
      const auto count = (profile.approvers(c) & unrepresented).count();
      if (count > best_count) {
        best_count = count;
        best = c;
      }
    }
    if (best_count == 0 || !instance.is_proportional(best_count)) break;
    chosen.set(best);
    order.push_back(best);
    unrepresented -= profile.approvers(best);
  }
  for (ItemId c = 0; c < instance.m() && order.size() < instance.k(); ++c) {
    if (!chosen.test(c)) {
      chosen.set(c);
      order.push_back(c);
    }
  }
  return order;
}

}  // namespace jrank
