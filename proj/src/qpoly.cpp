#include "repstab/qpoly.hpp"

#include "repstab/errors.hpp"

#include <cctype>

namespace repstab {

namespace {

void trim_zeros(std::vector<Rational>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

QPoly::QPoly(std::vector<Rational> c) : coeffs(std::move(c)) { trim_zeros(coeffs); }

QPoly QPoly::monomial(const Rational& c, unsigned power) {
  std::vector<Rational> v(power + 1, Rational(0));
  v[power] = c;
  return QPoly(std::move(v));
}

Rational QPoly::evaluate(const Rational& q) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * q + *it;
  return acc;
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<Rational> c(std::max(coeffs.size(), o.coeffs.size()), Rational(0));
  for (std::size_t k = 0; k < coeffs.size(); ++k) c[k] += coeffs[k];
  for (std::size_t k = 0; k < o.coeffs.size(); ++k) c[k] += o.coeffs[k];
  return QPoly(std::move(c));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + o * Rational(-1); }

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> c(coeffs.size() + o.coeffs.size() - 1, Rational(0));
  for (std::size_t a = 0; a < coeffs.size(); ++a) {
    for (std::size_t b = 0; b < o.coeffs.size(); ++b) c[a + b] += coeffs[a] * o.coeffs[b];
  }
  return QPoly(std::move(c));
}

QPoly QPoly::operator*(const Rational& s) const {
  std::vector<Rational> c = coeffs;
  for (auto& x : c) x *= s;
  return QPoly(std::move(c));
}

QPoly QPoly::divide_exact(const QPoly& divisor) const {
  if (divisor.is_zero()) throw FormulaViolation("qpoly: division by zero");
  std::vector<Rational> rem = coeffs;
  const int dd = divisor.degree();
  if (degree() < dd) {
    if (is_zero()) return {};
    throw FormulaViolation("qpoly: " + to_string() + " is not divisible by " + divisor.to_string());
  }
  std::vector<Rational> quot(degree() - dd + 1, Rational(0));
  for (int k = degree(); k >= dd; --k) {
    const Rational c = rem[k] / divisor.coeffs[dd];
    quot[k - dd] = c;
    for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= c * divisor.coeffs[j];
  }
  trim_zeros(rem);
  if (!rem.empty()) throw FormulaViolation("qpoly: " + to_string() + " is not divisible by " + divisor.to_string());
  return QPoly(std::move(quot));
}

std::string QPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int k = degree(); k >= 0; --k) {
    Rational c = coeffs[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (s.empty()) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    const std::string cs = repstab::to_string(c);
    if (k == 0) {
      s += cs;
    } else {
      if (c != 1) s += cs.find('/') != std::string::npos ? "(" + cs + ")" : cs;
      s += k == 1 ? "q" : "q^" + std::to_string(k);
    }
  }
  return s;
}

QPoly QPoly::parse(const std::string& text) {
  std::string t;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  }
  if (t.empty()) throw ParseError("qpoly: empty input");
  QPoly out;
  std::size_t pos = 0;
  while (pos < t.size()) {
    int sign = 1;
    if (t[pos] == '+' || t[pos] == '-') {
      sign = t[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      throw ParseError("qpoly: expected sign at position " + std::to_string(pos) + " in '" + text + "'");
    }
    bool paren = pos < t.size() && t[pos] == '(';
    if (paren) ++pos;
    std::size_t start = pos;
    while (pos < t.size() && (std::isdigit(static_cast<unsigned char>(t[pos])) || t[pos] == '/')) ++pos;
    Rational c = start == pos ? Rational(1) : parse_rational(t.substr(start, pos - start));
    if (paren) {
      if (pos >= t.size() || t[pos] != ')') throw ParseError("qpoly: missing ')' in '" + text + "'");
      ++pos;
    }
    if (pos < t.size() && t[pos] == '*') ++pos;
    unsigned power = 0;
    if (pos < t.size() && t[pos] == 'q') {
      ++pos;
      power = 1;
      if (pos < t.size() && t[pos] == '^') {
        ++pos;
        start = pos;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
        if (start == pos) throw ParseError("qpoly: missing exponent in '" + text + "'");
        power = static_cast<unsigned>(std::stoul(t.substr(start, pos - start)));
      }
    } else if (start == pos && !paren) {
      throw ParseError("qpoly: empty term in '" + text + "'");
    }
    out = out + monomial(c * sign, power);
  }
  return out;
}

}  // namespace repstab
