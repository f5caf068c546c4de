#include "jrank/score.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "jrank/error.hpp"

namespace jrank {

namespace {

double as_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

}  // namespace

const Rational& Score::rational() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q;
  fail(ErrorCode::BadParams, "score is not an exact rational");
}

double Score::to_double() const noexcept {
  if (const auto* q = std::get_if<Rational>(&value_)) return as_double(*q);
  return std::get<double>(value_);
}

bool Score::is_zero() const noexcept {
  if (const auto* q = std::get_if<Rational>(&value_)) return q->numerator() == 0;
  return std::get<double>(value_) == 0.0;
}

Score& Score::operator+=(const Score& other) {
  if (is_exact() && other.is_exact()) {
    std::get<Rational>(value_) += std::get<Rational>(other.value_);
  } else {
    value_ = to_double() + other.to_double();
  }
  return *this;
}

Score operator*(const Score& lhs, const Score& rhs) {
  if (lhs.is_exact() && rhs.is_exact()) return Score(lhs.rational() * rhs.rational());
  return Score(lhs.to_double() * rhs.to_double());
}

std::partial_ordering operator<=>(const Score& lhs, const Score& rhs) {
  if (lhs.is_exact() && rhs.is_exact()) {
    const auto& a = std::get<Rational>(lhs.value_);
    const auto& b = std::get<Rational>(rhs.value_);
    if (a < b) return std::partial_ordering::less;
    if (b < a) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }
  return lhs.to_double() <=> rhs.to_double();
}

std::string Score::to_string() const {
  if (const auto* q = std::get_if<Rational>(&value_)) {
    if (q->denominator() == 1) return std::to_string(q->numerator());
    return std::to_string(q->numerator()) + "/" + std::to_string(q->denominator());
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), std::get<double>(value_));
  return std::string(buf, res.ptr);
}

std::string Score::to_csv() const { return format_sig12(to_double()); }

Score Score::parse(const std::string& text) {
  const auto slash = text.find('/');
  const bool looks_integer =
      !text.empty() && text.find_first_not_of("-0123456789/") == std::string::npos;
  if (looks_integer) {
    std::int64_t num = 0;
    std::int64_t den = 1;
    const char* end = text.data() + (slash == std::string::npos ? text.size() : slash);
    auto r = std::from_chars(text.data(), end, num);
    if (r.ec != std::errc() || r.ptr != end) fail(ErrorCode::ParseError, "bad score '" + text + "'");
    if (slash != std::string::npos) {
      const char* dbegin = text.data() + slash + 1;
      const char* dend = text.data() + text.size();
      r = std::from_chars(dbegin, dend, den);
      if (r.ec != std::errc() || r.ptr != dend || den == 0) {
        fail(ErrorCode::ParseError, "bad score '" + text + "'");
      }
    }
    return Score(Rational(num, den));
  }
  double x = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), x);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    fail(ErrorCode::ParseError, "bad score '" + text + "'");
  }
  return Score(x);
}

std::optional<Score> ratio(const Score& numerator, const Score& denominator) {
  if (denominator.is_zero()) return std::nullopt;
  if (numerator.is_exact() && denominator.is_exact()) {
    return Score(numerator.rational() / denominator.rational());
  }
  return Score(numerator.to_double() / denominator.to_double());
}

std::string format_sig12(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace jrank
