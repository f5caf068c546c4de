#include "jrank/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "jrank/csv.hpp"
#include "jrank/error.hpp"

namespace jrank {

namespace {

using json = nlohmann::json;

std::string where(const csv::Row& row) { return "line " + std::to_string(row.line) + ": "; }

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<std::int64_t> to_int(const std::string& text) {
  const std::string t = trim(text);
  std::int64_t value = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) return std::nullopt;
  return value;
}

std::uint32_t parse_id(const std::string& text, const csv::Row& row, const char* what) {
  const auto value = to_int(text);
  if (!value || *value < 0 || *value > std::numeric_limits<std::int32_t>::max()) {
    fail(ErrorCode::ParseError, where(row) + "bad " + what + " '" + text + "'");
  }
  return static_cast<std::uint32_t>(*value);
}

double parse_real(const std::string& text, const csv::Row& row, const char* what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    fail(ErrorCode::ParseError, where(row) + "bad " + what + " '" + text + "'");
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

ApprovalProfile parse_approval_csv(std::istream& in, const ApprovalCsvOptions& options) {
  if (options.mode == ApprovalMode::probability && !(options.cutoff >= 0.0 && options.cutoff <= 1.0)) {
    fail(ErrorCode::BadProbability, "cutoff must lie in [0, 1]");
  }
  const auto rows = csv::read_with_header(in, {"user_id", "item_id", "value"});
  if (rows.empty()) fail(ErrorCode::ParseError, "approval file lists no users");

  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> approved;
  std::size_t n = options.min_users;
  std::size_t m = options.min_items;
  for (const auto& row : rows) {
    const auto u = parse_id(row.fields[0], row, "user_id");
    const auto i = parse_id(row.fields[1], row, "item_id");
    const double value = parse_real(row.fields[2], row, "value");
    if (!seen.emplace(u, i).second) {
      fail(ErrorCode::DuplicatePair, where(row) + "pair (" + std::to_string(u) + ", " +
                                         std::to_string(i) + ") listed twice");
    }
    if (!(value >= 0.0 && value <= 1.0)) {
      fail(ErrorCode::BadProbability, where(row) + "value outside [0, 1]");
    }
    bool approves = false;
    if (options.mode == ApprovalMode::binary) {
      if (value != 0.0 && value != 1.0) {
        fail(ErrorCode::MixedMode, where(row) + "fractional value " + trim(row.fields[2]) +
                                       " in binary mode (use probability mode)");
      }
      approves = value == 1.0;
    } else {
      approves = value > options.cutoff;
    }
    n = std::max<std::size_t>(n, std::size_t{u} + 1);
    m = std::max<std::size_t>(m, std::size_t{i} + 1);
    if (approves) approved.emplace_back(u, i);
  }
  std::vector<ItemSet> sets(n, ItemSet(m));
  for (const auto& [u, i] : approved) sets[u].set(i);
  return ApprovalProfile(m, std::move(sets));
}

ApprovalProfile parse_approval_csv(const std::filesystem::path& path,
                                   const ApprovalCsvOptions& options) {
  auto in = open_input(path);
  return parse_approval_csv(in, options);
}

GroupPartition parse_groups_csv(std::istream& in, std::size_t n) {
  const auto rows = csv::read_with_header(in, {"user_id", "group_id"});
  std::vector<std::optional<std::string>> label_of(n);
  for (const auto& row : rows) {
    const auto u = parse_id(row.fields[0], row, "user_id");
    if (u >= n) {
      fail(ErrorCode::IndexOutOfRange, where(row) + "user " + std::to_string(u) +
                                           " outside [0, " + std::to_string(n) + ")");
    }
    if (label_of[u]) fail(ErrorCode::DuplicateUser, where(row) + "user " + std::to_string(u) + " listed twice");
    label_of[u] = trim(row.fields[1]);
  }
  for (std::size_t u = 0; u < n; ++u) {
    if (!label_of[u]) fail(ErrorCode::MissingUser, "user " + std::to_string(u) + " has no group");
  }

  std::vector<std::string> labels;
  for (const auto& l : label_of) labels.push_back(*l);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const bool numeric = std::all_of(labels.begin(), labels.end(),
                                   [](const std::string& l) { return to_int(l).has_value(); });
  if (numeric) {
    std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
      return *to_int(a) < *to_int(b);
    });
  }
  std::vector<std::uint32_t> assignment(n);
  for (std::size_t u = 0; u < n; ++u) {
    const auto it = std::find(labels.begin(), labels.end(), *label_of[u]);
    assignment[u] = static_cast<std::uint32_t>(it - labels.begin());
  }
  return GroupPartition(std::move(assignment));
}

GroupPartition parse_groups_csv(const std::filesystem::path& path, std::size_t n) {
  auto in = open_input(path);
  return parse_groups_csv(in, n);
}

std::map<ItemId, double> parse_scores_csv(std::istream& in) {
  const auto rows = csv::read_with_header(in, {"item_id", "score"});
  std::map<ItemId, double> scores;
  for (const auto& row : rows) {
    const auto i = parse_id(row.fields[0], row, "item_id");
    const double s = parse_real(row.fields[1], row, "score");
    if (!std::isfinite(s) || s < 0.0) {
      fail(ErrorCode::NegativeScore, where(row) + "score must be finite and >= 0");
    }
    if (!scores.emplace(i, s).second) {
      fail(ErrorCode::DuplicatePair, where(row) + "item " + std::to_string(i) + " scored twice");
    }
  }
  return scores;
}

std::map<ItemId, double> parse_scores_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_scores_csv(in);
}

std::vector<double> complete_scores(const std::map<ItemId, double>& scores, std::size_t m) {
  std::vector<double> dense(m);
  std::vector<bool> present(m, false);
  for (const auto& [i, s] : scores) {
    if (i >= m) fail(ErrorCode::IndexOutOfRange, "scored item " + std::to_string(i) + " >= m");
    dense[i] = s;
    present[i] = true;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!present[i]) fail(ErrorCode::MissingScores, "item " + std::to_string(i) + " has no score");
  }
  return dense;
}

std::vector<std::string> parse_comments_csv(std::istream& in) {
  const auto rows = csv::read_with_header(in, {"item_id", "text"});
  std::vector<std::optional<std::string>> texts;
  for (const auto& row : rows) {
    const auto i = parse_id(row.fields[0], row, "item_id");
    if (i >= texts.size()) texts.resize(std::size_t{i} + 1);
    if (texts[i]) fail(ErrorCode::DuplicatePair, where(row) + "item " + std::to_string(i) + " listed twice");
    texts[i] = row.fields[1];
  }
  std::vector<std::string> dense;
  dense.reserve(texts.size());
  for (auto& t : texts) dense.push_back(t.value_or(std::string{}));
  return dense;
}

std::vector<std::string> parse_comments_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_comments_csv(in);
}

std::vector<ItemId> dedup_comments(const std::vector<std::string>& texts) {
  std::set<std::string> seen;
  std::vector<ItemId> keep;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    std::string t = trim(texts[i]);
    if (t.empty() || !seen.insert(std::move(t)).second) continue;
    keep.push_back(static_cast<ItemId>(i));
  }
  return keep;
}

Instance restrict_items(const Instance& instance, const std::vector<ItemId>& items) {
  if (items.empty()) fail(ErrorCode::BadParams, "no items left after filtering");
  std::vector<bool> used(instance.m(), false);
  for (const auto i : items) {
    if (i >= instance.m()) fail(ErrorCode::IndexOutOfRange, "item " + std::to_string(i));
    if (used[i]) fail(ErrorCode::BadParams, "item " + std::to_string(i) + " kept twice");
    used[i] = true;
  }
  std::vector<ItemSet> sets(instance.n(), ItemSet(items.size()));
  for (UserId u = 0; u < instance.n(); ++u) {
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (instance.profile().approves(u, items[j])) sets[u].set(j);
    }
  }
  std::optional<std::vector<double>> scores;
  if (instance.external_scores()) {
    scores.emplace();
    for (const auto i : items) scores->push_back((*instance.external_scores())[i]);
  }
  return Instance(ApprovalProfile(items.size(), std::move(sets)), instance.k(), instance.groups(),
                  std::move(scores));
}

void write_approval_csv(std::ostream& out, const ApprovalProfile& profile) {
  const std::size_t m = profile.num_items();
  out << "user_id,item_id,value\n";
  // Explicit zero rows pin n and m when the extreme ids approve nothing.
  const bool pin_m = profile.approvers(static_cast<ItemId>(m - 1)).none();
  for (UserId u = 0; u < profile.num_users(); ++u) {
    const auto& set = profile.approvals(u);
    if (u == 0 && pin_m && (m > 1 || set.any())) out << "0," << m - 1 << ",0\n";
    if (set.none()) out << u << ",0,0\n";
    for (auto i = set.find_first(); i != ItemSet::npos; i = set.find_next(i)) {
      out << u << ',' << i << ",1\n";
    }
  }
}

void write_groups_csv(std::ostream& out, const GroupPartition& groups) {
  out << "user_id,group_id\n";
  for (UserId u = 0; u < groups.num_users(); ++u) out << u << ',' << groups.block_of(u) << '\n';
}

void write_scores_csv(std::ostream& out, const std::vector<double>& scores) {
  out << "item_id,score\n";
  for (std::size_t i = 0; i < scores.size(); ++i) out << i << ',' << shortest(scores[i]) << '\n';
}

std::string instance_to_json(const Instance& instance) {
  json doc;
  doc["n"] = instance.n();
  doc["m"] = instance.m();
  doc["k"] = instance.k();
  json approvals = json::array();
  for (UserId u = 0; u < instance.n(); ++u) approvals.push_back(members_of(instance.profile().approvals(u)));
  doc["approvals"] = std::move(approvals);
  doc["groups"] = instance.groups() ? json(instance.groups()->assignment()) : json(nullptr);
  doc["scores"] = instance.external_scores() ? json(*instance.external_scores()) : json(nullptr);
  return doc.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    const auto n = doc.at("n").get<std::size_t>();
    const auto m = doc.at("m").get<std::size_t>();
    const auto k = doc.at("k").get<std::size_t>();
    const auto approvals = doc.at("approvals").get<std::vector<std::vector<ItemId>>>();
    std::optional<GroupPartition> groups;
    if (doc.contains("groups") && !doc["groups"].is_null()) {
      groups.emplace(doc["groups"].get<std::vector<std::uint32_t>>());
    }
    std::optional<std::vector<double>> scores;
    if (doc.contains("scores") && !doc["scores"].is_null()) {
      scores = doc["scores"].get<std::vector<double>>();
    }
    return build_instance(n, m, k, approvals, std::move(groups), std::move(scores));
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("instance JSON: ") + e.what());
  }
}

InstanceFiles write_instance_files(const Instance& instance, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());

  InstanceFiles files;
  files.approvals = dir / "approvals.csv";
  {
    auto out = open_output(files.approvals);
    write_approval_csv(out, instance.profile());
  }
  if (instance.groups()) {
    files.groups = dir / "groups.csv";
    auto out = open_output(*files.groups);
    write_groups_csv(out, *instance.groups());
  }
  if (instance.external_scores()) {
    files.scores = dir / "scores.csv";
    auto out = open_output(*files.scores);
    write_scores_csv(out, *instance.external_scores());
  }
  files.json = dir / "instance.json";
  auto out = open_output(files.json);
  out << instance_to_json(instance);
  return files;
}

Instance load_instance_csv(const std::filesystem::path& approvals, std::size_t k,
                           const std::optional<std::filesystem::path>& groups,
                           const std::optional<std::filesystem::path>& scores,
                           const ApprovalCsvOptions& options) {
  ApprovalCsvOptions opts = options;
  std::optional<std::map<ItemId, double>> score_map;
  if (scores) {
    score_map = parse_scores_csv(*scores);
    if (!score_map->empty()) {
      opts.min_items = std::max<std::size_t>(opts.min_items, std::size_t{score_map->rbegin()->first} + 1);
    }
  }
  auto profile = parse_approval_csv(approvals, opts);
  std::optional<GroupPartition> partition;
  if (groups) partition = parse_groups_csv(*groups, profile.num_users());
  std::optional<std::vector<double>> dense;
  if (score_map) dense = complete_scores(*score_map, profile.num_items());
  return Instance(std::move(profile), k, std::move(partition), std::move(dense));
}

Instance load_instance_json(const std::filesystem::path& path) {
  auto in = open_input(path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return instance_from_json(text);
}

}  // namespace jrank
