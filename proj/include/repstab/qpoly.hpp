#pragma once

// Polynomials in q with exact rational coefficients.

#include "repstab/exact.hpp"

#include <string>
#include <vector>

namespace repstab {

struct QPoly {
  std::vector<Rational> coeffs;  // index = power of q, no trailing zeros

  QPoly() = default;
  explicit QPoly(std::vector<Rational> c);
  static QPoly monomial(const Rational& c, unsigned power);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  Rational coefficient(unsigned power) const { return power < coeffs.size() ? coeffs[power] : Rational(0); }
  Rational evaluate(const Rational& q) const;

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator*(const Rational& s) const;
  /// Exact division; throws FormulaViolation if the divisor leaves a remainder.
  QPoly divide_exact(const QPoly& divisor) const;
  friend bool operator==(const QPoly&, const QPoly&) = default;

  /// "q^3 - 3q^2 + 2q"; "0" for zero.
  std::string to_string() const;
  /// Parses the to_string format (integer or p/q coefficients). Throws ParseError.
  static QPoly parse(const std::string& text);
};

}  // namespace repstab
