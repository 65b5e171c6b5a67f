#include "mlmotif/count.hpp"

#include <algorithm>
#include <cctype>

namespace mlmotif {

std::string to_decimal(const Count& value) { return value.str(); }

std::string to_decimal(const Rational& value, unsigned max_fraction_digits) {
  const Count num = boost::multiprecision::numerator(value);
  const Count den = boost::multiprecision::denominator(value);
  const bool negative = num < 0;
  const Count mag = negative ? Count(-num) : num;

  // Does the expansion terminate?
  Count rest = den;
  unsigned twos = 0;
  unsigned fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  const bool exact = rest == 1 && std::max(twos, fives) <= max_fraction_digits;
  const unsigned digits = exact ? std::max(twos, fives) : max_fraction_digits;

  Count scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  Count scaled = mag * scale;
  Count q = scaled / den;
  if (!exact && (scaled % den) * 2 >= den) q += 1;

  std::string int_part = Count(q / scale).str();
  std::string frac = Count(q % scale).str();
  if (frac.size() < digits) frac.insert(0, digits - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();

  std::string out;
  if (negative && (q != 0)) out += '-';
  out += int_part;
  if (!frac.empty() && digits > 0) {
    out += '.';
    out += frac;
  }
  return out;
}

std::string to_fraction(const Rational& value) {
  const Count den = boost::multiprecision::denominator(value);
  if (den == 1) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

namespace {

Count parse_integer_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  Count out = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
    }
    out = out * 10 + (c - '0');
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  if (text.empty()) throw std::invalid_argument("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (den_text.empty() || den_text.front() == '-' || den_text.front() == '+') {
      throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
    }
    Count den = parse_integer_digits(den_text, whole);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    if (boost::multiprecision::denominator(num) != 1) {
      throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
    }
    return Rational(boost::multiprecision::numerator(num), den);
  }

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (exp_text.empty() || exp_text.size() > 6) {
      throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
    }
    exponent = static_cast<long>(parse_integer_digits(exp_text, whole));
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }

  std::string_view int_digits = text;
  std::string_view frac_digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_digits = text.substr(0, dot);
    frac_digits = text.substr(dot + 1);
  }
  if (int_digits.empty() && frac_digits.empty()) {
    throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  }
  std::string digits(int_digits);
  digits += frac_digits;
  Count mantissa = parse_integer_digits(digits, whole);
  exponent -= static_cast<long>(frac_digits.size());

  Count ten_pow = 1;
  for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) ten_pow *= 10;
  Rational out = exponent >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
  return negative ? Rational(-out) : out;
}

Count falling_factorial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  Count out = 1;
  for (std::uint64_t i = 0; i < k; ++i) out *= (n - i);
  return out;
}

Count factorial(std::uint64_t n) { return falling_factorial(n, n); }

}  // namespace mlmotif
