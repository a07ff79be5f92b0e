#pragma once

// Exact integer and rational arithmetic shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace repstab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Decimal string for an integer.
std::string to_string(const Integer& value);

/// "p" for integers, "p/q" otherwise (sign carried by the numerator).
std::string to_string(const Rational& value);

/// Parses "p" or "p/q"; the result is canonicalized. Throws ParseError.
Rational parse_rational(std::string_view text);

Integer parse_integer(std::string_view text);

Integer factorial(unsigned n);

/// binomial(n, k) for a possibly negative top argument.
Integer binomial(const Integer& n, unsigned k);

Integer ipow(const Integer& base, unsigned exponent);

/// num/den in lowest terms (the two-argument mpq constructor does not reduce).
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace repstab
