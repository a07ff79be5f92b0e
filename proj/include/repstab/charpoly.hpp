#pragma once

// Character polynomials: rational combinations of products of binomials
// C(X_i, a_i) in the cycle-count variables X_i, with deg X_i = i.

#include "repstab/exact.hpp"
#include "repstab/stability.hpp"
#include "repstab/symcore.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace repstab::charpoly {

using symcore::ClassFunction;
using symcore::CycleType;
using symcore::Partition;

/// a = (a_1, ..., a_r) with a_r > 0 (the empty index is the constant term).
using MultiIndex = std::vector<int>;

/// Weighted degree sum_i i * a_i.
int weighted_degree(const MultiIndex& a);

/// Orders terms by weighted degree, then by the index padded with zeros.
struct TermOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

class CharacterPolynomial {
 public:
  using Terms = std::map<MultiIndex, Rational, TermOrder>;

  CharacterPolynomial() = default;
  explicit CharacterPolynomial(Terms terms);

  static CharacterPolynomial constant(const Rational& c);
  /// X_i.
  static CharacterPolynomial X(int i);
  /// C(X_i, a).
  static CharacterPolynomial binom_X(int i, int a);
  /// The single term c * prod C(X_i, a_i).
  static CharacterPolynomial term(const MultiIndex& a, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Maximal weighted degree; 0 for constants and for the zero polynomial.
  int degree() const;
  /// Largest variable index occurring.
  int max_variable() const;

  /// Value at the cycle counts m_1, m_2, ... (missing entries read as zero).
  Rational evaluate(const std::vector<int>& m) const;
  Rational evaluate(const CycleType& mu) const;

  CharacterPolynomial& operator+=(const CharacterPolynomial& other);
  CharacterPolynomial& operator-=(const CharacterPolynomial& other);
  CharacterPolynomial& operator*=(const Rational& c);
  friend CharacterPolynomial operator+(CharacterPolynomial a, const CharacterPolynomial& b) { return a += b; }
  friend CharacterPolynomial operator-(CharacterPolynomial a, const CharacterPolynomial& b) { return a -= b; }
  friend CharacterPolynomial operator*(const Rational& c, CharacterPolynomial p) { return p *= c; }
  friend CharacterPolynomial operator*(const CharacterPolynomial& a, const CharacterPolynomial& b);
  friend bool operator==(const CharacterPolynomial&, const CharacterPolynomial&) = default;

  /// Canonical text: "c * C(X1,a1)*C(X2,a2)" terms joined by " + ", "0" when zero.
  std::string to_string() const;
  /// Accepts the canonical form and the looser forms "X1", "X2^2",
  /// "binom(X1,2)", "2*X1*X3", "-X2", "C(X1,2) - X2". Throws ParseError.
  static CharacterPolynomial parse(std::string_view text);

  /// Expansion in ordinary monomials prod X_i^{e_i}; keys are exponent vectors.
  std::map<MultiIndex, Rational, TermOrder> to_monomials() const;
  static CharacterPolynomial from_monomials(const std::map<MultiIndex, Rational, TermOrder>& monomials);
  /// Display string in the monomial basis, e.g. "1/2 * X1^2 - 1/2 * X1 - X2".
  std::string to_monomial_string() const;

 private:
  void add_term(const MultiIndex& a, const Rational& c);
  Terms terms_;
};

/// mu -> P(mu) on every class of S_n (n = 0 gives the single empty class).
ClassFunction restrict_to_n(const CharacterPolynomial& p, int n);

struct FitResult {
  enum class Status { unique, inconsistent, underdetermined };
  Status status = Status::unique;
  CharacterPolynomial polynomial;          // when unique
  std::size_t rank = 0;
  std::size_t unknowns = 0;
  std::optional<std::pair<int, Partition>> witness;  // (n, class) of a violated constraint
  std::vector<CharacterPolynomial> free_directions;  // kernel directions when underdetermined

  bool ok() const { return status == Status::unique; }
  std::string describe() const;
};

/// Finds the unique P of degree <= max_degree with restrict_to_n(P, n) equal
/// to each supplied class function. Throws ArgumentError on repeated n.
FitResult fit(const std::vector<std::pair<int, ClassFunction>>& data, int max_degree);

/// All multi-indices of weighted degree <= max_degree, in term order.
std::vector<MultiIndex> indices_up_to(int max_degree);

/// <restrict_to_n(P, n), chi^{pad(lambda, n)}> along the window; returns the
/// value of the constant tail. Throws PaddingError if some n in the window is
/// too small for lambda, StabilizationError if the tail is too short.
StableValue<Rational> stable_inner_product(const CharacterPolynomial& p, const Partition& lambda,
                                           const Window& window);

/// A statistic on cycle types: a character polynomial or a raw class rule.
class Statistic {
 public:
  Statistic(std::string name, CharacterPolynomial p);
  Statistic(std::string name, std::function<Rational(const CycleType&)> rule);

  /// Built-in names: one, linear, quadratic-excess, sign, ncycle; anything
  /// else is parsed as a character polynomial. Throws ParseError.
  static Statistic parse(std::string_view text);

  const std::string& name() const { return name_; }
  const std::optional<CharacterPolynomial>& polynomial() const { return poly_; }
  Rational operator()(const CycleType& mu) const;
  ClassFunction restrict_to_n(int n) const;

 private:
  std::string name_;
  std::optional<CharacterPolynomial> poly_;
  std::function<Rational(const CycleType&)> rule_;
};

/// C(X1,2) - X2.
CharacterPolynomial quadratic_excess();
/// The six-term polynomial of H^2 of the configuration space.
CharacterPolynomial h2_polynomial();

}  // namespace repstab::charpoly
