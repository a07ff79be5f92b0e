#pragma once

// Independent reference computations used only by the tests. None of these
// call into the code paths they check.

#include "repstab/exact.hpp"
#include "repstab/linalg.hpp"
#include "repstab/osconf.hpp"
#include "repstab/symcore.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace oracles {

using repstab::Integer;
using repstab::Rational;

inline repstab::osconf::Permutation inverse(const repstab::osconf::Permutation& s) {
  repstab::osconf::Permutation out(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) out[s[k] - 1] = static_cast<int>(k + 1);
  return out;
}

inline int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

/// Integer polynomial in q as a coefficient vector (index = power).
using QPolyInt = std::vector<Integer>;

inline QPolyInt multiply(const QPolyInt& a, const QPolyInt& b) {
  QPolyInt out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// j * (number of monic irreducibles of degree j over F_q) = sum_{d|j} mu(d) q^{j/d}.
inline QPolyInt degree_j_points(int j) {
  QPolyInt p(j + 1, 0);
  for (int d = 1; d <= j; ++d) {
    if (j % d == 0) p[j / d] += mobius(d);
  }
  return p;
}

/// Frobenius-twisted point count of ordered configurations: tuples of distinct
/// points x_k with Frob(x_k) = x_{sigma(k)}. For m_j cycles of length j this is
/// prod_{k<m_j} (jN_j(q) - jk). Purity makes the coefficient of q^{n-i} equal
/// to (-1)^i times the trace of sigma on H^i.
inline Rational conf_character_by_point_count(const repstab::symcore::Partition& mu, int i) {
  const int n = mu.size();
  if (i < 0 || (n > 0 && i >= n) || (n == 0 && i > 0)) return 0;
  QPolyInt total{1};
  std::map<int, int> mult;
  for (int part : mu.parts()) ++mult[part];
  for (const auto& [j, m] : mult) {
    const QPolyInt base = degree_j_points(j);
    for (int k = 0; k < m; ++k) {
      QPolyInt factor = base;
      factor[0] -= j * k;
      total = multiply(total, factor);
    }
  }
  Integer c = total[n - i];
  return Rational(i % 2 ? Integer(-c) : c);
}

/// The Orlik-Solomon algebra as the exterior algebra on the edges of K_n modulo
/// the ideal generated by boundaries of circuits, in each degree.
class OSPresentation {
 public:
  explicit OSPresentation(int n) : n_(n) {
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) edges_.emplace_back(a, b);
    }
    const int e = static_cast<int>(edges_.size());
    for (unsigned mask = 1; mask < (1u << e); ++mask) {
      if (is_circuit(mask)) circuits_.push_back(mask);
    }
  }

  /// dim Lambda^i minus the rank of the ideal in degree i.
  Integer quotient_dimension(int i) const {
    return Integer(static_cast<long>(monomials(i).size() - ideal(i).rank()));
  }

  /// True if the given monomials together with the ideal span Lambda^i.
  bool spans_quotient(int i, const std::vector<repstab::osconf::OSMonomial>& basis) const {
    auto space = ideal(i);
    for (const auto& m : basis) space.insert(vector_of(m));
    return space.rank() == monomials(i).size();
  }

  /// word - element lies in the ideal.
  bool congruent(const repstab::osconf::OSMonomial& word, const repstab::osconf::OSElement& element) const {
    const int i = static_cast<int>(word.size());
    auto diff = vector_of(word);
    for (const auto& [m, c] : element.terms) diff = repstab::linalg::add_scaled(diff, vector_of(m), -c);
    return ideal(i).contains(diff);
  }

 private:
  int edge_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      if (edges_[k] == std::make_pair(a, b)) return static_cast<int>(k);
    }
    return -1;
  }

  bool is_circuit(unsigned mask) const {
    std::vector<int> degree(n_ + 1, 0);
    int count = 0;
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      if (mask >> k & 1u) {
        ++degree[edges_[k].first];
        ++degree[edges_[k].second];
        ++count;
      }
    }
    int vertices = 0;
    for (int v = 1; v <= n_; ++v) {
      if (degree[v] != 0 && degree[v] != 2) return false;
      vertices += degree[v] ? 1 : 0;
    }
    if (count < 3) return false;
    // Connected 2-regular graph: a single cycle has as many edges as vertices
    // and is reached by walking from one vertex.
    int start = 0;
    for (int v = 1; v <= n_; ++v) {
      if (degree[v]) {
        start = v;
        break;
      }
    }
    std::vector<bool> seen(n_ + 1, false);
    std::vector<int> stack{start};
    seen[start] = true;
    int reached = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++reached;
      for (std::size_t k = 0; k < edges_.size(); ++k) {
        if (!(mask >> k & 1u)) continue;
        int w = edges_[k].first == v ? edges_[k].second : (edges_[k].second == v ? edges_[k].first : 0);
        if (w && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    return reached == vertices && count == vertices;
  }

  std::vector<unsigned> monomials(int i) const {
    std::vector<unsigned> out;
    for (unsigned mask = 0; mask < (1u << edges_.size()); ++mask) {
      if (__builtin_popcount(mask) == i) out.push_back(mask);
    }
    return out;
  }

  std::size_t index_of(unsigned mask) const {
    auto all = monomials(__builtin_popcount(mask));
    return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), mask) - all.begin());
  }

  // Sign-adjusted product of edge indices in the given order.
  repstab::linalg::SparseVec wedge(const std::vector<int>& idx) const {
    std::vector<int> v = idx;
    int sign = 1;
    for (std::size_t a = 0; a < v.size(); ++a) {
      for (std::size_t b = 0; b + 1 < v.size() - a; ++b) {
        if (v[b] == v[b + 1]) return {};
        if (v[b] > v[b + 1]) {
          std::swap(v[b], v[b + 1]);
          sign = -sign;
        }
      }
    }
    for (std::size_t b = 0; b + 1 < v.size(); ++b) {
      if (v[b] == v[b + 1]) return {};
    }
    unsigned mask = 0;
    for (int k : v) mask |= 1u << k;
    return {{index_of(mask), Rational(sign)}};
  }

  repstab::linalg::SparseVec vector_of(const repstab::osconf::OSMonomial& m) const {
    std::vector<int> idx;
    for (const auto& g : m) idx.push_back(edge_index(g.i, g.j));
    return wedge(idx);
  }

  repstab::linalg::RowSpace ideal(int i) const {
    repstab::linalg::RowSpace space(monomials(i).size());
    for (unsigned c : circuits_) {
      std::vector<int> cedges;
      for (std::size_t k = 0; k < edges_.size(); ++k) {
        if (c >> k & 1u) cedges.push_back(static_cast<int>(k));
      }
      const int extra = i - (static_cast<int>(cedges.size()) - 1);
      if (extra < 0) continue;
      for (unsigned t : monomials(extra)) {
        std::vector<int> tail;
        for (std::size_t k = 0; k < edges_.size(); ++k) {
          if (t >> k & 1u) tail.push_back(static_cast<int>(k));
        }
        repstab::linalg::SparseVec boundary;
        for (std::size_t drop = 0; drop < cedges.size(); ++drop) {
          std::vector<int> idx;
          for (std::size_t k = 0; k < cedges.size(); ++k) {
            if (k != drop) idx.push_back(cedges[k]);
          }
          idx.insert(idx.end(), tail.begin(), tail.end());
          boundary = repstab::linalg::add_scaled(boundary, wedge(idx), drop % 2 ? -1 : 1);
        }
        space.insert(boundary);
      }
    }
    return space;
  }

  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<unsigned> circuits_;
};

}  // namespace oracles
