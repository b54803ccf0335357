#include "pddlval/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace pddlval {

Rational parse_decimal(std::string_view text) {
  using boost::multiprecision::cpp_int;
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  cpp_int numerator = 0;
  cpp_int denominator = 1;
  bool digits = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '.') {
      if (seen_point) return fail();
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
    digits = true;
    numerator = numerator * 10 + (c - '0');
    if (seen_point) denominator *= 10;
  }
  if (!digits) return fail();
  Rational value(numerator, denominator);
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  using boost::multiprecision::cpp_int;
  const cpp_int num = boost::multiprecision::numerator(value);
  const cpp_int den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();

  // Terminating iff the reduced denominator has no prime factors besides 2, 5.
  cpp_int rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return num.str() + "/" + den.str();

  const int places = std::max(twos, fives);
  cpp_int scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  cpp_int scaled = num * (scale / den);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (digits.size() <= static_cast<std::size_t>(places)) {
    digits.insert(0, static_cast<std::size_t>(places) - digits.size() + 1, '0');
  }
  digits.insert(digits.size() - places, ".");
  return (negative ? "-" : "") + digits;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace pddlval
