#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jrank/core.hpp"

namespace jrank {

// File formats (all ids 0-indexed integers):
//   approvals  user_id,item_id,value   value in {0,1}, or [0,1] in probability mode
//   groups     user_id,group_id
//   scores     item_id,score
//   comments   item_id,text

enum class ApprovalMode { binary, probability };

struct ApprovalCsvOptions {
  ApprovalMode mode = ApprovalMode::binary;
  /// Probability mode: approve iff value > cutoff.
  double cutoff = 0.5;
  /// Minimum item count; m = max(min_items, 1 + largest item id).
  std::size_t min_items = 0;
  /// Minimum user count; n = max(min_users, 1 + largest user id).
  std::size_t min_users = 0;
};

/// Dense profile; absent (user, item) pairs are non-approvals. Errors:
/// ParseError (malformed row or no users), DuplicatePair, MixedMode,
/// BadProbability.
ApprovalProfile parse_approval_csv(std::istream& in, const ApprovalCsvOptions& options = {});
ApprovalProfile parse_approval_csv(const std::filesystem::path& path,
                                   const ApprovalCsvOptions& options = {});

/// Group labels may be any strings; blocks are numbered by sorted label
/// (numerically when every label is an integer). Errors: ParseError,
/// MissingUser (some user in [0, n) has no row), DuplicateUser.
GroupPartition parse_groups_csv(std::istream& in, std::size_t n);
GroupPartition parse_groups_csv(const std::filesystem::path& path, std::size_t n);

/// Errors: ParseError, NegativeScore, DuplicatePair.
std::map<ItemId, double> parse_scores_csv(std::istream& in);
std::map<ItemId, double> parse_scores_csv(const std::filesystem::path& path);

/// Dense score vector over [0, m). Throws MissingScores for gaps and
/// IndexOutOfRange for ids >= m.
std::vector<double> complete_scores(const std::map<ItemId, double>& scores, std::size_t m);

/// item_id,text rows, returned as a dense vector indexed by item id.
std::vector<std::string> parse_comments_csv(std::istream& in);
std::vector<std::string> parse_comments_csv(const std::filesystem::path& path);

/// Items to keep after dropping empty and duplicate comments (exact match
/// after trimming whitespace; the first occurrence wins). Ascending.
std::vector<ItemId> dedup_comments(const std::vector<std::string>& texts);

/// Keeps only `items` (renumbered 0..|items|-1 in the given order) in the
/// profile and, if present, the external scores.
Instance restrict_items(const Instance& instance, const std::vector<ItemId>& items);

void write_approval_csv(std::ostream& out, const ApprovalProfile& profile);
void write_groups_csv(std::ostream& out, const GroupPartition& groups);
void write_scores_csv(std::ostream& out, const std::vector<double>& scores);

/// JSON form: {"n", "m", "k", "approvals": [[items]...], "groups": [block per
/// user] | null, "scores": [..] | null}.
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);

/// Files written by write_instance_files.
struct InstanceFiles {
  std::filesystem::path approvals;
  std::optional<std::filesystem::path> groups;
  std::optional<std::filesystem::path> scores;
  std::filesystem::path json;
};

/// Writes approvals.csv, groups.csv / scores.csv when present, and instance.json.
InstanceFiles write_instance_files(const Instance& instance, const std::filesystem::path& dir);

/// Loads an instance from CSV files. The item count is
/// max(m_hint, 1 + largest item id in approvals, size of the score map).
Instance load_instance_csv(const std::filesystem::path& approvals, std::size_t k,
                           const std::optional<std::filesystem::path>& groups,
                           const std::optional<std::filesystem::path>& scores,
                           const ApprovalCsvOptions& options = {});

Instance load_instance_json(const std::filesystem::path& path);

}  // namespace jrank
