#pragma once

// Partitions, conjugacy classes and irreducible characters of the symmetric
// groups, class-function inner products, and padded naming V(lambda)_n.

#include "repstab/exact.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace repstab {
class Cache;
}

namespace repstab::symcore {

/// Weakly decreasing tuple of positive integers.
class Partition {
 public:
  Partition() = default;
  /// Throws ArgumentError unless parts are positive and weakly decreasing.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return size_; }
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  /// Largest part, 0 for the empty partition.
  int first() const { return parts_.empty() ? 0 : parts_.front(); }
  int operator[](std::size_t k) const { return parts_[k]; }

  /// Conjugate (transposed) partition.
  Partition conjugate() const;

  /// "(3,1)"; the empty partition prints as "()".
  std::string to_string() const;
  /// Accepts "3,1", "(3,1)", "()" or "".
  static Partition parse(std::string_view text);

  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }
  friend bool operator==(const Partition& a, const Partition& b) = default;

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

/// Conjugacy class of S_n, stored by its cycle lengths. m(i) is the number of
/// i-cycles, i.e. the statistic X_i.
class CycleType {
 public:
  CycleType() = default;
  explicit CycleType(Partition cycles);

  const Partition& partition() const { return cycles_; }
  int n() const { return cycles_.size(); }
  /// Number of parts equal to i (zero when i is out of range).
  int m(int i) const { return (i >= 1 && i < static_cast<int>(mult_.size())) ? mult_[i] : 0; }
  /// Number of cycles, fixed points included.
  int cycle_count() const { return static_cast<int>(cycles_.length()); }
  /// Sign of any permutation in the class.
  int sign() const { return ((n() - cycle_count()) % 2 == 0) ? 1 : -1; }

  static CycleType identity(int n);

  friend auto operator<=>(const CycleType& a, const CycleType& b) { return a.cycles_ <=> b.cycles_; }
  friend bool operator==(const CycleType& a, const CycleType& b) { return a.cycles_ == b.cycles_; }

 private:
  Partition cycles_;
  std::vector<int> mult_;
};

/// Label of V(lambda)_n, the irreducible indexed by (n - |lambda|, lambda).
struct PaddedLabel {
  Partition lambda;
  int n = 0;

  bool valid() const { return n >= lambda.size() + lambda.first(); }
  /// The padded partition of n. Throws PaddingError when invalid.
  Partition padded() const;
  /// "V(1,1)"; V(0) for the empty partition.
  std::string to_string() const;

  friend auto operator<=>(const PaddedLabel&, const PaddedLabel&) = default;
};

/// All partitions of n in reverse-lexicographic order: (n) first, (1^n) last.
const std::vector<Partition>& partitions_of(int n);

/// Position of a partition of n inside partitions_of(n).
std::size_t partition_index(const Partition& p);

/// Number of permutations in the class: n! / z_mu.
Integer class_size(const CycleType& mu);

/// z_mu = prod_i i^{m_i} m_i!, the centralizer order.
Integer centralizer_order(const CycleType& mu);

/// Irreducible character value chi^lambda(mu) by the Murnaghan-Nakayama rule.
/// Tables are memoized per n. Throws ArgumentError on size mismatch or n > 30.
std::int64_t mn_character(const Partition& lambda, const CycleType& mu);

/// The full table: row = lambda, column = mu, both in partitions_of(n) order.
const std::vector<std::vector<std::int64_t>>& character_table(int n);

/// Installs a precomputed table (loaded from the cache). The table is checked
/// against shape before it is accepted; an existing table is left untouched.
void install_character_table(int n, std::vector<std::vector<std::int64_t>> table);

/// Loads the table for n from the cache, or computes and stores it.
const std::vector<std::vector<std::int64_t>>& character_table(int n, Cache* cache);

/// Dimension of V(lambda)_n by the hook length formula.
Integer dim_irrep(const PaddedLabel& label);
/// Hook length formula for an unpadded partition.
Integer hook_dimension(const Partition& lambda);

/// (n - |lambda|, lambda_1, ..., lambda_r). Throws PaddingError below the threshold.
Partition pad(const Partition& lambda, int n);
/// Inverse of pad: drops the first row.
Partition unpad(const Partition& padded);

/// Exact rational class function on S_n, indexed by partitions_of(n).
class ClassFunction {
 public:
  ClassFunction() = default;
  /// Zero function on S_n.
  explicit ClassFunction(int n);
  ClassFunction(int n, std::vector<Rational> values);

  int n() const { return n_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator[](std::size_t class_index) const { return values_[class_index]; }
  Rational& operator[](std::size_t class_index) { return values_[class_index]; }
  const Rational& at(const CycleType& mu) const;

  ClassFunction& operator+=(const ClassFunction& other);
  ClassFunction& operator*=(const Rational& scale);
  friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
  friend ClassFunction operator*(const Rational& s, ClassFunction f) { return f *= s; }
  /// Pointwise product (character of the tensor product).
  friend ClassFunction operator*(const ClassFunction& a, const ClassFunction& b);
  friend bool operator==(const ClassFunction&, const ClassFunction&) = default;

 private:
  int n_ = 0;
  std::vector<Rational> values_;
};

/// chi^lambda as a class function.
ClassFunction irreducible_character(const Partition& lambda);

/// (1/n!) sum over classes of |class| f(mu) g(mu). Throws on mismatched n.
Rational inner_product(const ClassFunction& f, const ClassFunction& g);

/// Irreducible multiplicities keyed by the unpadded label lambda of V(lambda)_n.
struct Decomposition {
  int n = 0;
  std::map<Partition, Integer> multiplicities;

  std::vector<PaddedLabel> labels() const;
  /// Sum of mult * dim.
  Integer dimension() const;
  /// "V(1)^2 + V(1,1) + V(2)"; "0" for the zero representation.
  std::string to_string() const;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Multiplicities <f, chi^lambda> for every lambda of n. Throws
/// NotACharacterError if one is not a nonnegative integer; the reconstruction
/// sum of c(lambda) chi^lambda == f is verified exactly.
Decomposition decompose(const ClassFunction& f);

/// Character with the given multiplicities (inverse of decompose).
ClassFunction character_of(const Decomposition& d);

/// Compares the unpadded multiplicity tables, ignoring n.
bool same_multiplicities(const Decomposition& a, const Decomposition& b);

}  // namespace repstab::symcore
