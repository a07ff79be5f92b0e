#include "repstab/tori.hpp"

#include "repstab/errors.hpp"
#include "repstab/fqstats.hpp"

#include <algorithm>
#include <set>

namespace repstab::tori {

namespace {

using symcore::CycleType;

void check_args(int n, int q) {
  if (n < 1) throw ArgumentError("tori: n >= 1");
  if (!fqstats::is_prime(q)) throw ArgumentError("tori: q = " + std::to_string(q) + " is not prime");
}

// q^k - 1 as a polynomial.
QPoly q_power_minus_one(unsigned k) { return QPoly::monomial(1, k) - QPoly::monomial(1, 0); }

// ---- small matrices over F_q, row-major ----

using Mat = std::vector<int>;

struct MatOps {
  int n;
  int q;

  Mat mul(const Mat& a, const Mat& b) const {
    Mat c(n * n, 0);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        const int x = a[i * n + k];
        if (!x) continue;
        for (int j = 0; j < n; ++j) c[i * n + j] = (c[i * n + j] + x * b[k * n + j]) % q;
      }
    }
    return c;
  }

  // Inverse by Gauss-Jordan; empty if singular.
  Mat inverse(const Mat& a) const {
    std::vector<std::vector<int>> m(n, std::vector<int>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m[i][j] = a[i * n + j];
      m[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
      int pivot = col;
      while (pivot < n && m[pivot][col] == 0) ++pivot;
      if (pivot == n) return {};
      std::swap(m[pivot], m[col]);
      int inv = 1;
      while (m[col][col] * inv % q != 1) ++inv;
      for (auto& x : m[col]) x = x * inv % q;
      for (int r = 0; r < n; ++r) {
        if (r == col || m[r][col] == 0) continue;
        const int f = m[r][col];
        for (int k = 0; k < 2 * n; ++k) m[r][k] = ((m[r][k] - f * m[col][k]) % q + q) % q;
      }
    }
    Mat out(n * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out[i * n + j] = m[i][n + j];
    }
    return out;
  }

  long code(const Mat& a) const {
    long c = 0;
    for (int x : a) c = c * q + x;
    return c;
  }

  Mat decode(long c) const {
    Mat a(n * n);
    for (int k = n * n - 1; k >= 0; --k) {
      a[k] = static_cast<int>(c % q);
      c /= q;
    }
    return a;
  }
};

// First monic irreducible of degree k, as coefficients low to high.
std::vector<int> irreducible_of_degree(int k, int q) {
  std::vector<int> c(k + 1, 0);
  c[k] = 1;
  std::vector<int> found;
  fqstats::enumerate_monic(k, q, [&](const fqstats::FqPoly& f) {
    if (!found.empty() || !fqstats::is_squarefree(f)) return;
    const auto stats = fqstats::factor_degree_stats(f);
    if (stats.d[k] == 1) found = f.coeffs;
  });
  return found;
}

}  // namespace

Integer gl_order(int n, int q) {
  check_args(n, q);
  return gl_order_polynomial(n).evaluate(Rational(q)).get_num();
}

QPoly gl_order_polynomial(int n) {
  if (n < 1) throw ArgumentError("tori: n >= 1");
  QPoly p = QPoly::monomial(1, static_cast<unsigned>(n * (n - 1) / 2));
  for (int i = 1; i <= n; ++i) p = p * q_power_minus_one(i);
  return p;
}

QPoly tori_count_polynomial(const Partition& mu) {
  const int n = mu.size();
  if (n < 1) throw ArgumentError("tori: empty type");
  QPoly denominator = QPoly::monomial(1, 0);
  for (int part : mu.parts()) denominator = denominator * q_power_minus_one(part);
  const QPoly quotient = gl_order_polynomial(n).divide_exact(denominator);
  return quotient * make_rational(1, symcore::centralizer_order(CycleType(mu)));
}

std::map<Partition, Integer> tori_count_by_type(int n, int q) {
  check_args(n, q);
  const Integer order = gl_order(n, q);
  std::map<Partition, Integer> out;
  for (const auto& mu : symcore::partitions_of(n)) {
    Integer denom = symcore::centralizer_order(CycleType(mu));
    for (int part : mu.parts()) denom *= ipow(Integer(q), static_cast<unsigned>(part)) - 1;
    if (order % denom != 0) {
      throw FormulaViolation("tori count for type " + mu.to_string() + " is not an integer");
    }
    out[mu] = order / denom;
  }
  return out;
}

ToriResult tori_statistic(int n, int q, const Statistic& p) {
  ToriResult out;
  for (const auto& [mu, count] : tori_count_by_type(n, q)) out.total += Rational(count) * p(CycleType(mu));
  out.expectation = out.total / Rational(ipow(Integer(q), static_cast<unsigned>(n * n - n)));
  return out;
}

std::map<Partition, Integer> brute_force_tori(int n, int q) {
  check_args(n, q);
  if (n > 3 || q > 3) {
    throw CostGuardError("brute_force_tori: only n <= 3 and q <= 3 are enumerated; use tori_count_by_type for larger sizes");
  }
  const MatOps ops{n, q};
  long total_codes = 1;
  for (int k = 0; k < n * n; ++k) total_codes *= q;
  std::vector<Mat> group;
  std::vector<Mat> inverses;
  for (long c = 0; c < total_codes; ++c) {
    Mat a = ops.decode(c);
    Mat inv = ops.inverse(a);
    if (inv.empty()) continue;
    group.push_back(std::move(a));
    inverses.push_back(std::move(inv));
  }
  if (Integer(static_cast<long>(group.size())) != gl_order(n, q)) {
    throw IdentityViolation("brute_force_tori: invertible matrix count differs from the order formula");
  }
  std::map<Partition, Integer> out;
  for (const auto& mu : symcore::partitions_of(n)) {
    // Basis of the block-diagonal algebra: powers of a companion matrix in each block.
    std::vector<Mat> basis;
    int offset = 0;
    for (int k : mu.parts()) {
      const std::vector<int> poly = irreducible_of_degree(k, q);
      Mat companion(k * k, 0);
      for (int r = 1; r < k; ++r) companion[r * k + r - 1] = 1;
      for (int r = 0; r < k; ++r) companion[r * k + k - 1] = (q - poly[r]) % q;
      Mat power(k * k, 0);
      for (int r = 0; r < k; ++r) power[r * k + r] = 1;
      const MatOps block{k, q};
      for (int e = 0; e < k; ++e) {
        Mat full(n * n, 0);
        for (int r = 0; r < k; ++r) {
          for (int s = 0; s < k; ++s) full[(offset + r) * n + offset + s] = power[r * k + s];
        }
        basis.push_back(std::move(full));
        power = block.mul(power, companion);
      }
      offset += k;
    }
    // All q^n elements of the algebra.
    std::set<long> algebra;
    long combos = 1;
    for (int k = 0; k < n; ++k) combos *= q;
    for (long c = 0; c < combos; ++c) {
      Mat m(n * n, 0);
      long rest = c;
      for (const auto& b : basis) {
        const int coef = static_cast<int>(rest % q);
        rest /= q;
        for (int k = 0; k < n * n; ++k) m[k] = (m[k] + coef * b[k]) % q;
      }
      algebra.insert(ops.code(m));
    }
    if (static_cast<long>(algebra.size()) != combos) throw IdentityViolation("brute_force_tori: algebra basis is dependent");
    long stabilizer = 0;
    std::set<std::vector<long>> conjugates;
    for (std::size_t g = 0; g < group.size(); ++g) {
      bool stable = true;
      for (const auto& b : basis) {
        if (!algebra.count(ops.code(ops.mul(ops.mul(group[g], b), inverses[g])))) {
          stable = false;
          break;
        }
      }
      stabilizer += stable;
      std::vector<long> image;
      for (long c : algebra) image.push_back(ops.code(ops.mul(ops.mul(group[g], ops.decode(c)), inverses[g])));
      std::sort(image.begin(), image.end());
      conjugates.insert(std::move(image));
    }
    const long orbit = static_cast<long>(group.size()) / stabilizer;
    if (orbit * stabilizer != static_cast<long>(group.size()) || orbit != static_cast<long>(conjugates.size())) {
      throw IdentityViolation("brute_force_tori: orbit-stabilizer bookkeeping disagrees with distinct conjugates");
    }
    out[mu] = orbit;
  }
  return out;
}

}  // namespace repstab::tori
