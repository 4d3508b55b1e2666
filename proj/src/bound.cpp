#include "thnorm/bound.hpp"

#include <mpfr.h>

#include <charconv>

#include "thnorm/error.hpp"

namespace thnorm {

namespace {

constexpr mpfr_prec_t kPrecision = 256;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Integer, "p/q", or a plain decimal such as "0.75".
Rational parse_number(std::string_view text) {
  text = trim(text);
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational::parse(text);
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 18 || frac.find_first_not_of("0123456789") != std::string_view::npos) {
    throw ParseError("malformed decimal '" + std::string(text) + "'");
  }
  const bool negative = !whole.empty() && whole.front() == '-';
  const Rational int_part = whole.empty() || whole == "-" ? Rational(0) : Rational::parse(whole);
  std::int64_t frac_num = 0;
  std::from_chars(frac.data(), frac.data() + frac.size(), frac_num);
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  const Rational frac_part(frac_num, scale);
  return negative ? int_part - frac_part : int_part + frac_part;
}

struct MpfrValue {
  mpfr_t v;
  MpfrValue() { mpfr_init2(v, kPrecision); }
  ~MpfrValue() { mpfr_clear(v); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
};

std::string format_digits(const mpfr_t x, int digits) {
  if (mpfr_zero_p(x)) return "0";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), x, MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // mant holds d1 d2 ... with value 0.d1d2... * 10^exp10.
  std::string out;
  if (exp10 > 0 && exp10 <= digits) {
    out = mant.substr(0, static_cast<std::size_t>(exp10));
    if (static_cast<std::size_t>(exp10) < mant.size()) out += "." + mant.substr(static_cast<std::size_t>(exp10));
  } else if (exp10 <= 0 && exp10 > -6) {
    out = "0." + std::string(static_cast<std::size_t>(-exp10), '0') + mant;
  } else {
    out = mant.substr(0, 1) + "." + mant.substr(1) + "e" + std::to_string(exp10 - 1);
  }
  return sign + out;
}

std::string rational_times_pi(const Rational& c, int k) {
  if (k == 0) return c.to_string();
  const std::string pi = k == 1 || k == -1 ? "pi" : "pi^" + std::to_string(k < 0 ? -k : k);
  const std::string num = std::to_string(c.num());
  if (k > 0) {
    std::string head = c.num() == 1 ? pi : c.num() == -1 ? "-" + pi : num + "*" + pi;
    return c.den() == 1 ? head : head + "/" + std::to_string(c.den());
  }
  const std::string den = c.den() == 1 ? pi : "(" + std::to_string(c.den()) + "*" + pi + ")";
  return num + "/" + den;
}

void check_digits(int digits) {
  if (digits < 1 || digits > 60) throw ValidationError("digits must be in 1..60");
}

}  // namespace

Volume parse_volume(std::string_view text) {
  const std::string_view t = trim(text);
  if (t.empty()) throw ParseError("empty volume");
  Volume v;
  const auto pi_at = t.find("pi");
  if (pi_at == std::string_view::npos) {
    v.coefficient = parse_number(t);
  } else {
    std::string_view coeff = trim(t.substr(0, pi_at));
    if (!coeff.empty()) {
      if (coeff.back() != '*') throw ParseError("expected '*' before pi in '" + std::string(t) + "'");
      coeff.remove_suffix(1);
      v.coefficient = parse_number(coeff);
    } else {
      v.coefficient = Rational(1);
    }
    std::string_view rest = trim(t.substr(pi_at + 2));
    v.pi_power = 1;
    if (!rest.empty()) {
      if (rest.front() != '^') throw ParseError("expected '^' after pi in '" + std::string(t) + "'");
      rest = trim(rest.substr(1));
      const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v.pi_power);
      if (ec != std::errc{} || ptr != rest.data() + rest.size()) {
        throw ParseError("malformed pi exponent in '" + std::string(t) + "'");
      }
    }
  }
  if (v.coefficient.sign() <= 0) throw ValidationError("volume must be positive");
  return v;
}

std::string to_string(const Volume& v) { return rational_times_pi(v.coefficient, v.pi_power); }

std::optional<Rational> known_norm(int n) {
  switch (n) {
    case 1:
      return Rational(1);
    case 2:
      return Rational(2, 3);
    case 3:
      return Rational(11, 45);
    default:
      return std::nullopt;
  }
}

std::string pi_multiple_decimal(const Rational& c, int k, int digits) {
  check_digits(digits);
  MpfrValue pi, x, num, den;
  mpfr_const_pi(pi.v, MPFR_RNDN);
  if (k >= 0) {
    mpfr_pow_ui(x.v, pi.v, static_cast<unsigned long>(k), MPFR_RNDN);
  } else {
    mpfr_pow_ui(x.v, pi.v, static_cast<unsigned long>(-k), MPFR_RNDN);
    mpfr_ui_div(x.v, 1, x.v, MPFR_RNDN);
  }
  mpfr_set_si(num.v, c.num(), MPFR_RNDN);
  mpfr_set_si(den.v, c.den(), MPFR_RNDN);
  mpfr_mul(x.v, x.v, num.v, MPFR_RNDN);
  mpfr_div(x.v, x.v, den.v, MPFR_RNDN);
  return format_digits(x.v, digits);
}

BoundResult compute_bound(int n, const Rational& norm, const Volume& volume, int digits) {
  if (n < 1) throw ValidationError("n must be at least 1");
  if (norm.sign() <= 0) throw ValidationError("norm must be positive");
  if (volume.coefficient.sign() <= 0) throw ValidationError("volume must be positive");
  check_digits(digits);
  BoundResult r;
  r.n = n;
  r.norm = norm;
  r.volume = to_string(volume);
  r.coefficient = volume.coefficient / norm;
  r.pi_power = volume.pi_power - n;
  r.symbolic = rational_times_pi(r.coefficient, r.pi_power);
  r.decimal = pi_multiple_decimal(r.coefficient, r.pi_power, digits);
  if (r.pi_power == 0) r.exact = r.coefficient;
  return r;
}

BoundResult surface_bound(const Rational& norm, std::span<const int> genera, int digits) {
  if (genera.empty()) throw ValidationError("at least one surface genus is required");
  Rational factor(1);
  std::string product;
  for (int g : genera) {
    if (g < 2) throw ValidationError("surface genus must be at least 2");
    factor *= Rational(4 * (g - 1));
    product += (product.empty() ? "" : "*") + std::to_string(4 * (g - 1));
  }
  const int n = static_cast<int>(genera.size());
  BoundResult r = compute_bound(n, norm, Volume{factor, n}, digits);
  r.genera.assign(genera.begin(), genera.end());
  r.product_form = (Rational(1) / norm).to_string() + " * " + product;
  return r;
}

}  // namespace thnorm
