#pragma once

#include <optional>
#include <span>
#include <vector>

#include "jrank/core.hpp"

namespace jrank {

/// A cohesive group of at least n/k users, all approving `item`, none of
/// whom approves anything in the checked set.
struct JrWitness {
  ItemId item;
  std::vector<UserId> group;

  friend bool operator==(const JrWitness&, const JrWitness&) = default;
};

/// True iff every member of the group approves some common item.
/// Throws EmptyGroup for an empty group.
bool is_cohesive(std::span<const UserId> group, const Instance& instance);

/// True iff some member of the group approves some item of `items`.
/// Throws EmptyGroup for an empty group.
bool represents(std::span<const ItemId> items, std::span<const UserId> group,
                const Instance& instance);

/// Checks the n/k-justifying property of `items` (any size). Scans items c in
/// ascending order and fails on the first c whose approvers outside the
/// represented users number at least n/k; that group is returned.
std::optional<JrWitness> verify_jr(std::span<const ItemId> items, const Instance& instance);
std::optional<JrWitness> verify_jr(const ItemSet& items, const Instance& instance);

/// Cheap pass/fail form of verify_jr used inside solvers.
bool is_justifying(const ItemSet& items, const Instance& instance);

/// Oracle: enumerates every user subset and reports the first (by bitmask
/// order) cohesive, unrepresented group of at least n/k users. Throws
/// TooLarge for n > 20.
std::optional<JrWitness> verify_jr_bruteforce(std::span<const ItemId> items,
                                              const Instance& instance);

/// A size-k set containing `item` that satisfies JR: seed with `item`, add
/// greedy max-coverage picks until justifying, then pad with the lowest free
/// indices. Throws Unapproved if nobody approves `item`.
std::vector<ItemId> jr_set_containing(ItemId item, const Instance& instance);

}  // namespace jrank
