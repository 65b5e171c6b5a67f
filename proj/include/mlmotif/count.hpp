#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mlmotif {

/// Embedding counts are unbounded; nothing in the library wraps around.
using Count = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A counting method cannot run on this input (no layout, cover too large,
/// disconnected pattern for the window scan, ...). Callers may fall back.
class StrategyInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal identity did not hold, e.g. an inclusion-exclusion total
/// that is not divisible by |aut(H)|.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

std::string to_decimal(const Count& value);

/// Exact decimal if the denominator only has factors 2 and 5, otherwise
/// rounded half-up to `max_fraction_digits` digits. Trailing zeros trimmed.
std::string to_decimal(const Rational& value, unsigned max_fraction_digits = 9);

/// "p/q" in lowest terms, or just "p" for integers.
std::string to_fraction(const Rational& value);

/// Parses "-12", "3.25", "1e-3", "2.5E2" and "7/4" exactly.
/// Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// n (n-1) ... (n-k+1); zero when k > n.
Count falling_factorial(std::uint64_t n, std::uint64_t k);

Count factorial(std::uint64_t n);

}  // namespace mlmotif
