#pragma once

// Cohomology of the configuration space of n points in the plane, modeled by
// the Orlik-Solomon algebra of the braid arrangement. Generators w_ij
// (i < j), normal form = monomials whose upper indices strictly increase.

#include "repstab/exact.hpp"
#include "repstab/stability.hpp"
#include "repstab/symcore.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace repstab {
class Cache;
}

namespace repstab::osconf {

using symcore::ClassFunction;
using symcore::Decomposition;
using symcore::Partition;

/// Largest n supported by the monomial encoding.
inline constexpr int kMaxPoints = 20;

/// w_ij with i < j; the constructor orders the indices.
struct OSGenerator {
  int i = 0;
  int j = 0;
  OSGenerator() = default;
  OSGenerator(int a, int b);
  friend auto operator<=>(const OSGenerator&, const OSGenerator&) = default;
};

/// Product of generators; normal form has strictly increasing j.
using OSMonomial = std::vector<OSGenerator>;

bool is_normal_form(const OSMonomial& m);
std::string to_string(const OSMonomial& m);

/// Rational combination of normal-form monomials of one degree.
struct OSElement {
  int n = 0;
  int degree = 0;
  std::map<OSMonomial, Rational> terms;

  bool is_zero() const { return terms.empty(); }
  Rational coefficient(const OSMonomial& m) const;
  /// "w12*w23 - 2 w13*w23"; "0" when zero.
  std::string to_string() const;
  friend bool operator==(const OSElement&, const OSElement&) = default;
};

/// Permutation of {1..n} in one-line notation: sigma[k-1] = sigma(k).
using Permutation = std::vector<int>;

/// All normal-form monomials of degree i, ordered by upper indices then lower
/// indices. Empty (with a warning on stderr) when i >= n and n >= 1.
std::vector<OSMonomial> nbc_basis(int n, int i);

/// e_i(1, ..., n-1), the size of nbc_basis(n, i).
Integer nbc_dimension(int n, int i);

/// Normal form of a product of generators. With an RNG, the repeated-upper
/// pair to rewrite is chosen at random at every step (for confluence tests).
OSElement straighten(const OSMonomial& word, int n, std::mt19937* rng = nullptr);

/// Normal form of a linear combination of arbitrary words.
OSElement straighten_all(const std::map<OSMonomial, Rational>& words, int n, int degree);

/// sigma . x, relabeling every generator and straightening.
OSElement sn_action(const Permutation& sigma, const OSElement& x);

/// Coefficient of the normal-form monomial `target` in straighten(word).
std::int64_t straightened_coefficient(const OSMonomial& word, const OSMonomial& target);

/// Representative permutation of a cycle type: cycles on consecutive integers.
Permutation representative(const Partition& mu);

/// Trace of sigma on degree i. Parallel over basis monomials.
Integer trace(const Permutation& sigma, int n, int i);

/// Character of H^i on S_n (zero for i >= n). The disk cache is consulted
/// when given; the n = 0 case is the trivial character for i = 0.
ClassFunction character_conf(int n, int i, Cache* cache = nullptr);

Decomposition decompose_conf(int n, int i, Cache* cache = nullptr);

struct StabilityReport {
  int i = 0;
  Window window;
  std::vector<std::pair<int, Decomposition>> per_n;
  /// For each unpadded label: first n from which its multiplicity is constant.
  std::map<Partition, int> label_onset;
  int observed_onset = 0;   // max over labels
  int predicted_onset = 0;  // 4i
  Decomposition stable;     // the table at the end of the window
  std::string to_string() const;
};

/// Decomposes H^i across the window. Throws StabilityViolation if some
/// multiplicity changes at an n >= 4i inside the window.
StabilityReport verify_stability(int i, const Window& window, Cache* cache = nullptr);

}  // namespace repstab::osconf
