#include "repstab/linalg.hpp"

#include "repstab/errors.hpp"

#include <algorithm>

namespace repstab::linalg {

SparseVec add_scaled(const SparseVec& a, const SparseVec& b, const Rational& scale) {
  if (scale == 0) return a;
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, scale * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second + scale * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec scaled(const SparseVec& a, const Rational& scale) {
  if (scale == 0) return {};
  SparseVec out = a;
  for (auto& [idx, val] : out) val *= scale;
  return out;
}

SparseVec from_entries(std::vector<std::pair<std::size_t, Rational>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVec out;
  for (auto& [idx, val] : entries) {
    if (!out.empty() && out.back().first == idx) {
      out.back().second += val;
      if (out.back().second == 0) out.pop_back();
    } else if (val != 0) {
      out.emplace_back(idx, std::move(val));
    }
  }
  return out;
}

Rational coefficient(const SparseVec& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const auto& e, std::size_t i) { return e.first < i; });
  if (it != v.end() && it->first == index) return it->second;
  return 0;
}

SparseVec unit(std::size_t index) { return {{index, Rational(1)}}; }

SparseVec RowSpace::reduce(SparseVec v) const {
  std::size_t p = 0;
  while (p < v.size()) {
    auto it = rows_.find(v[p].first);
    if (it == rows_.end()) {
      ++p;
      continue;
    }
    // The pivot row starts at this column, so earlier entries are untouched.
    Rational factor = -v[p].second;
    v = add_scaled(v, it->second, factor);
  }
  return v;
}

bool RowSpace::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Rational lead = v.front().second;
  if (lead != 1) {
    Rational inv = 1 / lead;
    for (auto& [idx, val] : v) val *= inv;
  }
  std::size_t pivot = v.front().first;
  rows_.emplace(pivot, std::move(v));
  return true;
}

CoordinateSolver::CoordinateSolver(const std::vector<SparseVec>& basis) : size_(basis.size()) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    SparseVec vec = basis[k];
    SparseVec combo = unit(k);
    std::size_t p = 0;
    while (p < vec.size()) {
      auto it = rows_.find(vec[p].first);
      if (it == rows_.end()) {
        ++p;
        continue;
      }
      Rational factor = -vec[p].second;
      vec = add_scaled(vec, it->second.vec, factor);
      combo = add_scaled(combo, it->second.combo, factor);
    }
    if (vec.empty()) throw DataError("coordinate basis is linearly dependent");
    Rational inv = 1 / vec.front().second;
    for (auto& e : vec) e.second *= inv;
    for (auto& e : combo) e.second *= inv;
    std::size_t pivot = vec.front().first;
    rows_.emplace(pivot, Row{std::move(vec), std::move(combo)});
  }
}

std::optional<SparseVec> CoordinateSolver::try_express(const SparseVec& v) const {
  SparseVec residual = v;
  SparseVec coords;
  std::size_t p = 0;
  while (p < residual.size()) {
    auto it = rows_.find(residual[p].first);
    if (it == rows_.end()) return std::nullopt;
    Rational factor = residual[p].second;
    residual = add_scaled(residual, it->second.vec, -factor);
    coords = add_scaled(coords, it->second.combo, factor);
  }
  return coords;
}

SparseVec CoordinateSolver::express(const SparseVec& v) const {
  auto coords = try_express(v);
  if (!coords) throw DataError("vector is outside the span of the coordinate basis");
  return *coords;
}

std::vector<std::size_t> rref(DenseMatrix& m, std::size_t columns) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    Rational inv = 1 / m[row][col];
    // Trailing columns beyond `columns` (an augmented right-hand side) ride along.
    const std::size_t width = m[row].size();
    for (std::size_t c = col; c < width; ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c < width; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rational>> nullspace(DenseMatrix m, std::size_t columns) {
  auto pivots = rref(m, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(columns, Rational(0));
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::size_t rank(const std::vector<SparseVec>& vectors, std::size_t ambient_dim) {
  RowSpace space(ambient_dim);
  for (const auto& v : vectors) space.insert(v);
  return space.rank();
}

LinearSolution solve(const DenseMatrix& a, const std::vector<Rational>& b, std::size_t unknowns) {
  if (a.size() != b.size()) throw ArgumentError("solve: row count mismatch");
  LinearSolution out;

  // Incremental pass locates the first equation contradicting its predecessors.
  RowSpace augmented(unknowns + 1);
  for (std::size_t r = 0; r < a.size(); ++r) {
    std::vector<std::pair<std::size_t, Rational>> entries;
    for (std::size_t c = 0; c < unknowns; ++c) {
      if (a[r][c] != 0) entries.emplace_back(c, a[r][c]);
    }
    if (b[r] != 0) entries.emplace_back(unknowns, b[r]);
    SparseVec reduced = augmented.reduce(from_entries(std::move(entries)));
    if (!reduced.empty() && reduced.front().first == unknowns) {
      out.status = LinearSolution::Status::inconsistent;
      out.witness_row = r;
      return out;
    }
    augmented.insert(std::move(reduced));
  }

  DenseMatrix m = a;
  for (std::size_t r = 0; r < m.size(); ++r) {
    m[r].resize(unknowns + 1);
    m[r][unknowns] = b[r];
  }
  auto pivots = rref(m, unknowns);
  out.rank = pivots.size();
  if (pivots.size() < unknowns) {
    out.status = LinearSolution::Status::underdetermined;
    DenseMatrix coeffs = a;
    out.free_directions = nullspace(std::move(coeffs), unknowns);
    return out;
  }
  out.x.assign(unknowns, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) out.x[pivots[r]] = m[r][unknowns];
  return out;
}

}  // namespace repstab::linalg
