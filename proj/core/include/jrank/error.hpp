#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jrank {

enum class ErrorCode {
  IndexOutOfRange,
  BadPartition,
  BadK,
  NegativeScore,
  BadProbability,
  MissingGroups,
  MissingScores,
  EmptyGroup,
  TooLarge,
  Unapproved,
  BudgetExceeded,
  BadParams,
  BadDivisibility,
  NotPermutation,
  ParseError,
  DuplicatePair,
  MixedMode,
  MissingUser,
  DuplicateUser,
  NetworkError,
  ChecksumMismatch,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for failures caused by bad input (CLI exit code 1); false for
// runtime failures such as an exhausted budget or the network (exit code 2).
bool is_validation_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace jrank
