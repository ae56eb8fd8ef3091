#include "nilpet/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace nilpet {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("not an integer");
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  try {
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      Integer num = parse_integer(s.substr(0, slash));
      Integer den = parse_integer(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      std::string_view int_part = s.substr(0, dot);
      std::string_view frac_part = s.substr(dot + 1);
      bool negative = !int_part.empty() && int_part.front() == '-';
      if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+'))
        int_part.remove_prefix(1);
      if (int_part.empty()) int_part = "0";
      if (!all_digits(int_part) || (!frac_part.empty() && !all_digits(frac_part)))
        throw std::invalid_argument("bad decimal");
      Integer scale = 1;
      for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
      Integer digits(std::string(int_part) + std::string(frac_part.empty() ? "" : frac_part));
      Rational value(digits, scale);
      return negative ? Rational(-value) : value;
    }
    return Rational(parse_integer(s));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse rational '" + std::string(text) + "'");
  }
}

std::string to_string(const Rational& value) { return value.str(); }

Rational rational_from_decimal(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::invalid_argument("cannot format double");
  std::string s(buf, end);
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    Rational mantissa = parse_rational(s.substr(0, e));
    int exponent = std::stoi(s.substr(e + 1));
    Rational scale = 1;
    for (int i = 0; i < std::abs(exponent); ++i) scale *= 10;
    return exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa / scale);
  }
  return parse_rational(s);
}

Integer floor(const Rational& value) {
  Integer num = boost::multiprecision::numerator(value);
  Integer den = boost::multiprecision::denominator(value);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Rational frac(const Rational& value) { return value - Rational(floor(value)); }

double to_double(const Rational& value) { return value.convert_to<double>(); }

RationalVector zero_vector(Eigen::Index size) {
  RationalVector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = 0;
  return v;
}

bool is_zero(const RationalVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return false;
  }
  return true;
}

}  // namespace nilpet
