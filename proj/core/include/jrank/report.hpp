#pragma once

#include <span>
#include <string>
#include <vector>

#include "jrank/core.hpp"

namespace jrank {

struct GroupRepresentation {
  std::size_t group = 0;
  std::size_t size = 0;
  std::size_t unrepresented = 0;
  double fraction = 0.0;
};

/// Users who approve nothing in the committee, overall and per group.
struct RepresentationReport {
  std::size_t total_users = 0;
  std::size_t unrepresented_count = 0;
  double unrepresented_fraction = 0.0;
  std::vector<GroupRepresentation> per_group;
  std::vector<ItemId> committee;
  std::string rule;
};

RepresentationReport representation_report(std::span<const ItemId> items,
                                           const Instance& instance,
                                           std::string rule = {});

}  // namespace jrank
