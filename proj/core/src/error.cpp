#include "jrank/error.hpp"

#include "jrank/bitset.hpp"

namespace jrank {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::NegativeScore: return "NegativeScore";
    case ErrorCode::BadProbability: return "BadProbability";
    case ErrorCode::MissingGroups: return "MissingGroups";
    case ErrorCode::MissingScores: return "MissingScores";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Unapproved: return "Unapproved";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadDivisibility: return "BadDivisibility";
    case ErrorCode::NotPermutation: return "NotPermutation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicatePair: return "DuplicatePair";
    case ErrorCode::MixedMode: return "MixedMode";
    case ErrorCode::MissingUser: return "MissingUser";
    case ErrorCode::DuplicateUser: return "DuplicateUser";
    case ErrorCode::NetworkError: return "NetworkError";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BudgetExceeded:
    case ErrorCode::TooLarge:
    case ErrorCode::NetworkError:
    case ErrorCode::ChecksumMismatch:
    case ErrorCode::IoError:
      return false;
    default:
      return true;
  }
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

Bitset make_bitset(std::size_t width, std::span<const std::uint32_t> members) {
  Bitset set(width);
  for (const auto x : members) {
    if (x >= width) {
      fail(ErrorCode::IndexOutOfRange,
           "index " + std::to_string(x) + " outside [0, " + std::to_string(width) + ")");
    }
    set.set(x);
  }
  return set;
}

Bitset make_bitset(std::size_t width, std::initializer_list<std::uint32_t> members) {
  return make_bitset(width, std::span<const std::uint32_t>(members.begin(), members.size()));
}

std::vector<std::uint32_t> members_of(const Bitset& set) {
  std::vector<std::uint32_t> out;
  out.reserve(set.count());
  for (auto i = set.find_first(); i != Bitset::npos; i = set.find_next(i)) {
    out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

}  // namespace jrank
