#include "jrank/report.hpp"

#include <algorithm>

#include "jrank/error.hpp"

namespace jrank {

RepresentationReport representation_report(std::span<const ItemId> items,
                                           const Instance& instance, std::string rule) {
  const ItemSet set = make_bitset(instance.m(), items);
  UserSet unrepresented(instance.n());
  for (UserId u = 0; u < instance.n(); ++u) {
    if (!instance.profile().approvals(u).intersects(set)) unrepresented.set(u);
  }

  RepresentationReport report;
  report.total_users = instance.n();
  report.unrepresented_count = unrepresented.count();
  report.unrepresented_fraction =
      static_cast<double>(report.unrepresented_count) / static_cast<double>(instance.n());
  report.committee.assign(items.begin(), items.end());
  std::sort(report.committee.begin(), report.committee.end());
  report.rule = std::move(rule);
  if (const auto& groups = instance.groups()) {
    for (std::size_t g = 0; g < groups->gamma(); ++g) {
      GroupRepresentation row;
      row.group = g;
      row.size = groups->block_size(g);
      row.unrepresented = (unrepresented & groups->members(g)).count();
      row.fraction = static_cast<double>(row.unrepresented) / static_cast<double>(row.size);
      report.per_group.push_back(row);
    }
  }
  return report;
}

}  // namespace jrank
