#include "injhull/Scalar.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <regex>

namespace injhull {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// GMP's string constructor guesses the base from a leading 0, so strip zeros.
Integer decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer(std::string(digits.empty() ? "0" : digits));
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ScalarParseError("not a rational number: '" + std::string(whole) + "'");
  Integer v = decimal_integer(s);
  return negative ? Integer(-v) : v;
}

Integer pow10(unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ScalarParseError("empty scalar");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw ScalarParseError("bad denominator in '" + std::string(text) + "'");
    Integer den = decimal_integer(den_text);
    if (den == 0) throw ScalarParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  static const std::regex decimal(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
  std::cmatch m;
  std::string owned(text);
  if (!std::regex_match(owned.c_str(), m, decimal) || (m[2].length() == 0 && m[3].length() == 0))
    throw ScalarParseError("not a rational number: '" + owned + "'");
  std::string digits = m[2].str() + m[3].str();
  Integer mantissa = decimal_integer(digits);
  long exponent = -static_cast<long>(m[3].length());
  if (m[4].matched) {
    long e = 0;
    auto s = m[4].str();
    auto [p, ec] = std::from_chars(s.data() + (s[0] == '+' ? 1 : 0), s.data() + s.size(), e);
    if (ec != std::errc() || std::labs(e) > 100000) throw ScalarParseError("exponent out of range: '" + owned + "'");
    exponent += e;
  }
  if (m[1].str() == "-") mantissa = -mantissa;
  if (exponent >= 0) return Rational(Integer(mantissa * pow10(static_cast<unsigned>(exponent))));
  return Rational(mantissa, pow10(static_cast<unsigned>(-exponent)));
}

std::string to_string(const Rational& value) {
  Integer num = numerator(value);
  Integer den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::optional<Rational> exact_from_double(double value) {
  if (!std::isfinite(value)) return std::nullopt;
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  // 53 bits of mantissa as an integer
  auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r{Integer(scaled)};
  Integer two_pow = 1;
  for (int i = 0; i < std::abs(exponent); ++i) two_pow *= 2;
  if (exponent >= 0) return Rational(r * Rational(two_pow));
  return Rational(r / Rational(two_pow));
}

std::optional<Rational> representable_from_double(double value) {
  auto exact = exact_from_double(value);
  if (!exact) return std::nullopt;
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return std::nullopt;
  Rational decimal = parse_rational(std::string_view(buf, static_cast<std::size_t>(end - buf)));
  if (decimal != *exact) return std::nullopt;
  return exact;
}

Rational rationalize(const Rational& value, std::int64_t max_denominator) {
  if (max_denominator < 1) throw std::invalid_argument("rationalize: max_denominator must be >= 1");
  const Integer bound(max_denominator);
  if (denominator(value) <= bound) return value;

  // Convergents p/q of the continued fraction of value.
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer num = numerator(value), den = denominator(value);
  while (true) {
    Integer a = num / den;
    if (num < 0 && a * den != num) a -= 1;  // floor
    Integer q2 = q0 + a * q1;
    if (q2 > bound) {
      // Best semiconvergent with denominator within the bound.
      Integer k = (bound - q0) / q1;
      Rational semi(Integer(p0 + k * p1), Integer(q0 + k * q1));
      Rational conv(p1, q1);
      return abs(Rational(semi - value)) < abs(Rational(conv - value)) ? semi : conv;
    }
    Integer p2 = p0 + a * p1;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    Integer rem = num - a * den;
    if (rem == 0) return Rational(p1, q1);
    num = den;
    den = rem;
  }
}

Rational rationalize(double value, std::int64_t max_denominator) {
  auto exact = exact_from_double(value);
  if (!exact) throw std::invalid_argument("rationalize: non-finite value");
  return rationalize(*exact, max_denominator);
}

Integer common_denominator(const RationalMatrix& m) {
  Integer l = 1;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) l = boost::multiprecision::lcm(l, Integer(denominator(m(i, j))));
  return l;
}

}  // namespace injhull
