#include "thnorm/rational.hpp"

#include <charconv>

namespace thnorm {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    throw OverflowError("rational component out of range: '" + std::string(whole) + "'");
  }
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("not a rational number: '" + std::string(whole) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  if (num == INT64_MIN || den == INT64_MIN) throw OverflowError("rational component out of range");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::abs() const { return num_ < 0 ? -*this : *this; }

Rational Rational::operator-() const {
  if (num_ == INT64_MIN) throw OverflowError("integer overflow in negation");
  Rational out;
  out.num_ = -num_;
  out.den_ = den_;
  return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
  const std::int64_t g = std::gcd(den_, rhs.den_);
  const std::int64_t lhs_scale = rhs.den_ / g;
  const std::int64_t rhs_scale = den_ / g;
  *this = Rational(checked::add(checked::mul(num_, lhs_scale), checked::mul(rhs.num_, rhs_scale)),
                   checked::mul(den_, lhs_scale));
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  // Cross-reduce first so intermediate products stay small.
  const std::int64_t g1 = std::gcd(num_, rhs.den_);
  const std::int64_t g2 = std::gcd(rhs.num_, den_);
  *this = Rational(checked::mul(num_ / g1, rhs.num_ / g2), checked::mul(den_ / g2, rhs.den_ / g1));
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw ValidationError("division by zero");
  return *this *= Rational(rhs.den_, rhs.num_);
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  __extension__ using Wide = __int128;
  const Wide a = static_cast<Wide>(lhs.num_) * rhs.den_;
  const Wide b = static_cast<Wide>(rhs.num_) * lhs.den_;
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  const std::string_view whole = trim(text);
  const auto slash = whole.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(whole, whole));
  const std::int64_t num = parse_int(trim(whole.substr(0, slash)), whole);
  const std::int64_t den = parse_int(trim(whole.substr(slash + 1)), whole);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
  return Rational(num, den);
}

std::int64_t factorial(int n) {
  if (n < 0 || n > 20) throw OverflowError("factorial argument out of range: " + std::to_string(n));
  std::int64_t out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace thnorm
