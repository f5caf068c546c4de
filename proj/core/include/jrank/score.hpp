#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include <boost/rational.hpp>

namespace jrank {

using Rational = boost::rational<std::int64_t>;

/// A non-negative item or set score. Rules defined as ratios of integers
/// produce exact rationals; file-backed classifier scores are doubles. Any
/// arithmetic that touches a double yields a double.
class Score {
 public:
  Score() : value_(Rational(0)) {}
  Score(Rational q) : value_(q) {}  // NOLINT(google-explicit-constructor)
  explicit Score(double x) : value_(x) {}
  static Score integer(std::int64_t v) { return Score(Rational(v)); }

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;
  double to_double() const noexcept;
  bool is_zero() const noexcept;

  Score& operator+=(const Score& other);
  friend Score operator+(Score lhs, const Score& rhs) { return lhs += rhs; }
  friend Score operator*(const Score& lhs, const Score& rhs);

  friend std::partial_ordering operator<=>(const Score& lhs, const Score& rhs);
  friend bool operator==(const Score& lhs, const Score& rhs) {
    return (lhs <=> rhs) == std::partial_ordering::equivalent;
  }

  /// "p/q" (or "p") for exact values, shortest round-trip decimal otherwise.
  std::string to_string() const;
  /// Decimal with 12 significant digits; used for CSV output.
  std::string to_csv() const;

  /// Inverse of to_string().
  static Score parse(const std::string& text);

 private:
  std::variant<Rational, double> value_;
};

/// numerator / denominator, or nullopt when the denominator is zero.
std::optional<Score> ratio(const Score& numerator, const Score& denominator);

std::string format_sig12(double x);

}  // namespace jrank
