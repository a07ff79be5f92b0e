#pragma once

// Monic polynomials over prime fields F_q: square-free detection, factor
// degree statistics by distinct-degree factorization, weighted totals over
// square-free polynomials, and the point-count comparison with H^i(Conf_n).

#include "repstab/charpoly.hpp"
#include "repstab/exact.hpp"
#include "repstab/stability.hpp"
#include "repstab/symcore.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace repstab {
class Cache;
}

namespace repstab::fqstats {

using charpoly::Statistic;
using symcore::CycleType;
using symcore::Partition;

/// Largest degree handled by the fixed-size arithmetic.
inline constexpr int kMaxDegree = 16;

bool is_prime(long q);

/// Monic polynomial over F_q; coeffs[k] is the coefficient of x^k, coeffs[n] == 1.
struct FqPoly {
  int q = 2;
  std::vector<int> coeffs;

  FqPoly() = default;
  /// Throws ArgumentError unless q is prime, residues are in [0, q) and the
  /// leading coefficient is 1.
  FqPoly(int q, std::vector<int> coeffs);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  /// "x^2 + 2x + 1".
  std::string to_string() const;
  friend bool operator==(const FqPoly&, const FqPoly&) = default;
};

/// Number of independent chunks enumerate_monic_chunk splits the q^n polynomials into.
std::size_t monic_chunk_count(int n, int q);
/// Streams the polynomials whose top coefficients form the given prefix.
void enumerate_monic_chunk(int n, int q, std::size_t chunk, const std::function<void(const FqPoly&)>& visit);
/// Streams all q^n monic polynomials of degree n. Throws ArgumentError for
/// composite q, n < 1 or n > kMaxDegree.
void enumerate_monic(int n, int q, const std::function<void(const FqPoly&)>& visit);

/// gcd(f, f') is constant.
bool is_squarefree(const FqPoly& f);

/// d[i] = number of irreducible factors of degree i (index 0 unused).
struct FactorStats {
  std::vector<int> d;

  int degree() const;
  int factor_count() const;
  /// Cycle type of Frobenius on the roots: d[i] cycles of length i.
  CycleType cycle_type() const;
  /// (-1)^(n - number of factors).
  int sign() const;
};

/// Distinct-degree factorization. Throws ArgumentError for non-square-free f.
FactorStats factor_degree_stats(const FqPoly& f);

/// Square-free monic polynomials of degree n counted by Frobenius cycle type.
struct Census {
  int n = 0;
  int q = 0;
  Integer monic = 0;
  Integer squarefree = 0;
  std::map<Partition, Integer> by_type;
};

/// Full enumeration, parallel over coefficient prefixes (jobs = 0: default);
/// memoized per (n, q) for the lifetime of the process.
const Census& census(int n, int q, unsigned jobs = 0);

struct TotalResult {
  int n = 0;
  int q = 0;
  std::string statistic;
  Integer squarefree = 0;
  Rational total = 0;
  /// total divided by the number of square-free polynomials (q^n - q^(n-1) for n >= 2).
  Rational expectation = 0;
};

TotalResult total_statistic(int n, int q, const Statistic& p, unsigned jobs = 0);

/// Sum over d | n of mu(n/d) q^d / n.
Integer mobius_irreducible_count(int n, int q);
/// Enumerated count of irreducibles; throws IdentityViolation if it differs
/// from the Mobius formula.
Integer irreducible_count(int n, int q, unsigned jobs = 0);

/// (-1)^(n(n-1)/2) Res(f, f') as a residue in [0, q), f' taken with formal degree n - 1.
int discriminant(const FqPoly& f);

struct DiscriminantResult {
  Integer squares = 0;     // square-free f with disc a nonzero square
  Integer nonsquares = 0;  // square-free f with disc a nonsquare
  Integer sign_sum = 0;    // sum over square-free f of sign(Frobenius)
  /// True when squares - nonsquares == sign_sum, i.e. disc is a square exactly
  /// for even Frobenius.
  bool square_iff_even = false;
};

/// Throws ArgumentError for even q or n < 2.
DiscriminantResult discriminant_statistic(int n, int q, unsigned jobs = 0);

struct CrossCheck {
  int n = 0;
  int q = 0;
  std::string statistic;
  Rational point_count = 0;   // sum over square-free f of P(f)
  Rational cohomology = 0;    // sum_i (-1)^i q^(n-i) <P, chi_{H^i}>
  std::vector<Rational> inner_products;  // <P, chi_{H^i}> for i = 0..n-1
  bool ok() const { return point_count == cohomology; }
  std::string to_string() const;
};

/// Computes both sides; throws CrossCheckFailure (both sides in the message)
/// when they differ.
CrossCheck gl_crosscheck(int n, int q, const Statistic& p, Cache* cache = nullptr, unsigned jobs = 0);

struct SeriesResult {
  std::string statistic;
  /// c_i = (-1)^i <P, chi_{H^i}> in the stable range: total / q^n -> sum c_i q^-i.
  std::vector<Rational> total;
  /// Partial sums of c_i: expectation over square-free f -> sum e_i q^-i.
  std::vector<Rational> expectation;
  std::vector<int> onsets;
  std::vector<Window> windows;
};

/// Default window for degree i: five values from max(1, 2i + deg P - 2).
Window default_series_window(int i, int degree);

/// Stable coefficients for i = 0..i_max. Needs a polynomial statistic; a
/// supplied window is used for every i. Throws StabilizationError.
SeriesResult series_partial_sums(const Statistic& p, int i_max, std::optional<Window> window = std::nullopt,
                                 Cache* cache = nullptr);

/// "1/q - 3/q^2 + 4/q^3"; "0" if all zero.
std::string format_q_series(const std::vector<Rational>& coefficients);

}  // namespace repstab::fqstats
