#pragma once

// Exact rational linear algebra: sparse row echelon spaces for rank and span
// questions, and small dense Gauss-Jordan routines for solving and kernels.

#include "repstab/exact.hpp"

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace repstab::linalg {

/// Sparse vector: entries sorted by index, no stored zeros.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

/// a + scale * b.
SparseVec add_scaled(const SparseVec& a, const SparseVec& b, const Rational& scale);
SparseVec scaled(const SparseVec& a, const Rational& scale);
/// Builds a sparse vector from possibly unsorted, possibly repeated entries.
SparseVec from_entries(std::vector<std::pair<std::size_t, Rational>> entries);
Rational coefficient(const SparseVec& v, std::size_t index);
SparseVec unit(std::size_t index);

/// Span of inserted vectors, kept as rows whose leading entry is 1 and whose
/// leading columns are distinct.
class RowSpace {
 public:
  explicit RowSpace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  /// Eliminates every pivot column from v. The result is zero iff v lies in
  /// the span; its entries sit on non-pivot columns, which makes it the
  /// coordinate vector of v in the quotient by this span.
  SparseVec reduce(SparseVec v) const;

  /// Returns true if v was independent of the current span.
  bool insert(SparseVec v);

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  bool is_pivot(std::size_t column) const { return rows_.count(column) != 0; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t ambient_dim() const { return ambient_; }

 private:
  std::size_t ambient_;
  std::unordered_map<std::size_t, SparseVec> rows_;
};

/// Expresses vectors in the coordinates of a fixed list of independent basis
/// vectors living in a larger ambient space.
class CoordinateSolver {
 public:
  CoordinateSolver() = default;
  /// Throws DataError if the basis vectors are dependent.
  explicit CoordinateSolver(const std::vector<SparseVec>& basis);

  /// Coordinates of v, or nullopt if v is outside the span.
  std::optional<SparseVec> try_express(const SparseVec& v) const;
  /// Same, throwing DataError when v is outside the span.
  SparseVec express(const SparseVec& v) const;
  std::size_t size() const { return size_; }

 private:
  struct Row {
    SparseVec vec;
    SparseVec combo;
  };
  std::size_t size_ = 0;
  std::unordered_map<std::size_t, Row> rows_;
};

using DenseMatrix = std::vector<std::vector<Rational>>;

/// In-place reduced row echelon form, pivoting only among the first `columns`
/// columns; returns pivot columns in order.
std::vector<std::size_t> rref(DenseMatrix& m, std::size_t columns);

/// Basis of {x : m x = 0} for an r x columns matrix.
std::vector<std::vector<Rational>> nullspace(DenseMatrix m, std::size_t columns);

/// Rank of the span of sparse vectors.
std::size_t rank(const std::vector<SparseVec>& vectors, std::size_t ambient_dim);

struct LinearSolution {
  enum class Status { unique, inconsistent, underdetermined };
  Status status = Status::unique;
  std::vector<Rational> x;                       // valid when unique
  std::size_t rank = 0;
  std::optional<std::size_t> witness_row;        // an equation that cannot hold
  std::vector<std::vector<Rational>> free_directions;  // nullspace when underdetermined
};

/// Solves a x = b exactly.
LinearSolution solve(const DenseMatrix& a, const std::vector<Rational>& b, std::size_t unknowns);

}  // namespace repstab::linalg
