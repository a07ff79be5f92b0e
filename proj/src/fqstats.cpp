#include "repstab/fqstats.hpp"

#include "repstab/errors.hpp"
#include "repstab/osconf.hpp"
#include "repstab/parallel.hpp"

#include <array>
#include <mutex>
#include <sstream>

namespace repstab::fqstats {

namespace {

constexpr int kCap = 2 * kMaxDegree + 2;

// Dense polynomial over F_q with a fixed capacity; deg = -1 for zero.
struct Poly {
  int deg = -1;
  std::array<int, kCap> c{};
};

class Field {
 public:
  explicit Field(int q) : q_(q), inv_(q, 0) {
    for (int a = 1; a < q; ++a) {
      for (int b = 1; b < q; ++b) {
        if (a * b % q == 1) inv_[a] = b;
      }
    }
  }

  int q() const { return q_; }
  int inv(int a) const { return inv_[a]; }

  static void normalize(Poly& p) {
    while (p.deg >= 0 && p.c[p.deg] == 0) --p.deg;
  }

  // a mod m, m monic of degree >= 1 (or any nonzero m: made monic first).
  void reduce(Poly& a, const Poly& m) const {
    const int lead_inv = inv(m.c[m.deg]);
    for (int i = a.deg; i >= m.deg; --i) {
      const int coef = a.c[i] * lead_inv % q_;
      if (coef == 0) continue;
      for (int j = 0; j <= m.deg; ++j) {
        int& x = a.c[i - m.deg + j];
        x = (x - coef * m.c[j]) % q_;
        if (x < 0) x += q_;
      }
    }
    a.deg = std::min(a.deg, m.deg - 1);
    normalize(a);
  }

  Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const {
    Poly out;
    if (a.deg < 0 || b.deg < 0) return out;
    out.deg = a.deg + b.deg;
    std::array<long, kCap> acc{};
    for (int i = 0; i <= a.deg; ++i) {
      if (!a.c[i]) continue;
      for (int j = 0; j <= b.deg; ++j) acc[i + j] += static_cast<long>(a.c[i]) * b.c[j];
    }
    for (int k = 0; k <= out.deg; ++k) out.c[k] = static_cast<int>(acc[k] % q_);
    normalize(out);
    reduce(out, m);
    return out;
  }

  Poly powmod(Poly base, long e, const Poly& m) const {
    Poly result;
    result.deg = 0;
    result.c[0] = 1;
    reduce(result, m);
    while (e > 0) {
      if (e & 1) result = mulmod(result, base, m);
      e >>= 1;
      if (e) base = mulmod(base, base, m);
    }
    return result;
  }

  // Monic gcd.
  Poly gcd(Poly a, Poly b) const {
    while (b.deg >= 0) {
      reduce(a, b);
      std::swap(a, b);
    }
    if (a.deg >= 0) {
      const int li = inv(a.c[a.deg]);
      for (int k = 0; k <= a.deg; ++k) a.c[k] = a.c[k] * li % q_;
    }
    return a;
  }

  // a / b for b monic dividing a.
  Poly divide(Poly a, const Poly& b) const {
    Poly quot;
    quot.deg = a.deg - b.deg;
    for (int i = a.deg; i >= b.deg; --i) {
      const int coef = a.c[i];
      quot.c[i - b.deg] = coef;
      if (!coef) continue;
      for (int j = 0; j <= b.deg; ++j) {
        int& x = a.c[i - b.deg + j];
        x = (x - coef * b.c[j]) % q_;
        if (x < 0) x += q_;
      }
    }
    normalize(quot);
    return quot;
  }

  Poly derivative(const Poly& a) const {
    Poly d;
    if (a.deg <= 0) return d;
    d.deg = a.deg - 1;
    for (int k = 1; k <= a.deg; ++k) d.c[k - 1] = static_cast<int>(static_cast<long>(k) * a.c[k] % q_);
    normalize(d);
    return d;
  }

  bool squarefree(const Poly& f) const { return gcd(f, derivative(f)).deg == 0; }

  // Distinct-degree factorization of a square-free monic f; d sized deg f + 1.
  void ddf(const Poly& f, std::vector<int>& d) const {
    d.assign(f.deg + 1, 0);
    Poly rem = f;
    Poly x;
    x.deg = 1;
    x.c[1] = 1;
    Poly h = x;
    if (rem.deg >= 1) reduce(h, rem);
    for (int i = 1; rem.deg > 0; ++i) {
      if (2 * i > rem.deg) {
        ++d[rem.deg];
        break;
      }
      h = powmod(h, q_, rem);
      Poly diff = h;
      if (diff.deg < 1) diff.deg = 1;
      diff.c[1] = (diff.c[1] - 1 + q_) % q_;
      normalize(diff);
      Poly g = gcd(rem, diff);
      if (g.deg > 0) {
        d[i] += g.deg / i;
        rem = divide(rem, g);
        if (rem.deg > 0) reduce(h, rem);
      }
    }
  }

 private:
  int q_;
  std::vector<int> inv_;
};

Poly to_poly(const FqPoly& f) {
  if (f.degree() > kMaxDegree) throw ArgumentError("fq: degree above " + std::to_string(kMaxDegree));
  Poly p;
  p.deg = f.degree();
  for (int k = 0; k <= p.deg; ++k) p.c[k] = f.coeffs[k];
  Field::normalize(p);
  return p;
}

void check_field(int n, int q) {
  if (!is_prime(q)) throw ArgumentError("q = " + std::to_string(q) + " is not prime (prime fields only)");
  if (n < 1 || n > kMaxDegree) throw ArgumentError("degree n must be in 1.." + std::to_string(kMaxDegree));
}

int prefix_length(int n, int q) {
  // Enough chunks to balance a few workers without tiny chunks.
  int k = 0;
  long chunks = 1;
  while (k < n && chunks < 64) {
    chunks *= q;
    ++k;
  }
  return k;
}

long ipow_long(long base, int e) {
  long r = 1;
  while (e-- > 0) r *= base;
  return r;
}

int mobius(int n) {
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

std::map<std::pair<int, int>, Census>& census_memo() {
  static std::map<std::pair<int, int>, Census> memo;
  return memo;
}

std::mutex& census_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

bool is_prime(long q) {
  if (q < 2) return false;
  for (long p = 2; p * p <= q; ++p) {
    if (q % p == 0) return false;
  }
  return true;
}

FqPoly::FqPoly(int q_, std::vector<int> coeffs_) : q(q_), coeffs(std::move(coeffs_)) {
  if (!is_prime(q)) throw ArgumentError("q = " + std::to_string(q) + " is not prime");
  if (coeffs.empty() || coeffs.back() != 1) throw ArgumentError("polynomial must be monic");
  for (int c : coeffs) {
    if (c < 0 || c >= q) throw ArgumentError("coefficient outside [0, q)");
  }
}

std::string FqPoly::to_string() const {
  std::string s;
  for (int k = degree(); k >= 0; --k) {
    const int c = coeffs[k];
    if (c == 0) continue;
    if (!s.empty()) s += " + ";
    if (k == 0 || c != 1) s += std::to_string(c);
    if (k >= 1) s += "x";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s;
}

std::size_t monic_chunk_count(int n, int q) {
  check_field(n, q);
  return static_cast<std::size_t>(ipow_long(q, prefix_length(n, q)));
}

void enumerate_monic_chunk(int n, int q, std::size_t chunk, const std::function<void(const FqPoly&)>& visit) {
  check_field(n, q);
  const int k = prefix_length(n, q);
  if (chunk >= static_cast<std::size_t>(ipow_long(q, k))) throw ArgumentError("enumerate: chunk out of range");
  FqPoly f;
  f.q = q;
  f.coeffs.assign(n + 1, 0);
  f.coeffs[n] = 1;
  // Prefix digits fill coefficients n-1 .. n-k.
  std::size_t rest = chunk;
  for (int j = 0; j < k; ++j) {
    f.coeffs[n - k + j] = static_cast<int>(rest % q);
    rest /= q;
  }
  const int free = n - k;
  for (;;) {
    visit(f);
    int j = 0;
    while (j < free && ++f.coeffs[j] == q) f.coeffs[j++] = 0;
    if (j == free) break;
  }
}

void enumerate_monic(int n, int q, const std::function<void(const FqPoly&)>& visit) {
  const std::size_t chunks = monic_chunk_count(n, q);
  for (std::size_t c = 0; c < chunks; ++c) enumerate_monic_chunk(n, q, c, visit);
}

bool is_squarefree(const FqPoly& f) {
  if (f.degree() <= 0) return true;
  return Field(f.q).squarefree(to_poly(f));
}

int FactorStats::degree() const {
  int n = 0;
  for (std::size_t i = 1; i < d.size(); ++i) n += static_cast<int>(i) * d[i];
  return n;
}

int FactorStats::factor_count() const {
  int c = 0;
  for (std::size_t i = 1; i < d.size(); ++i) c += d[i];
  return c;
}

CycleType FactorStats::cycle_type() const {
  std::vector<int> parts;
  for (std::size_t i = d.size(); i-- > 1;) parts.insert(parts.end(), d[i], static_cast<int>(i));
  return CycleType(Partition(parts));
}

int FactorStats::sign() const { return (degree() - factor_count()) % 2 == 0 ? 1 : -1; }

FactorStats factor_degree_stats(const FqPoly& f) {
  const Field field(f.q);
  const Poly p = to_poly(f);
  if (p.deg >= 1 && !field.squarefree(p)) throw ArgumentError("factor_degree_stats: " + f.to_string() + " is not square-free");
  FactorStats out;
  field.ddf(p, out.d);
  if (out.degree() != f.degree()) throw IdentityViolation("factor degrees do not add up for " + f.to_string());
  return out;
}

const Census& census(int n, int q, unsigned jobs) {
  check_field(n, q);
  std::lock_guard lock(census_mutex());
  auto& memo = census_memo();
  auto it = memo.find({n, q});
  if (it != memo.end()) return it->second;

  const std::size_t chunks = monic_chunk_count(n, q);
  std::vector<std::map<std::vector<int>, long>> partial(chunks);
  std::vector<long> monic(chunks, 0);
  parallel_chunks(chunks, jobs, [&](std::size_t begin, std::size_t end) {
    const Field field(q);
    std::vector<int> d;
    for (std::size_t c = begin; c < end; ++c) {
      auto& hist = partial[c];
      enumerate_monic_chunk(n, q, c, [&](const FqPoly& f) {
        ++monic[c];
        const Poly p = to_poly(f);
        if (!field.squarefree(p)) return;
        field.ddf(p, d);
        ++hist[d];
      });
    }
  });
  Census out;
  out.n = n;
  out.q = q;
  std::map<std::vector<int>, long> merged;
  for (std::size_t c = 0; c < chunks; ++c) {
    out.monic += monic[c];
    for (const auto& [d, count] : partial[c]) merged[d] += count;
  }
  for (const auto& [d, count] : merged) {
    FactorStats stats{d};
    if (stats.degree() != n) throw IdentityViolation("census: factor degrees do not add up to n");
    out.by_type[stats.cycle_type().partition()] += count;
    out.squarefree += count;
  }
  return memo.emplace(std::make_pair(n, q), std::move(out)).first->second;
}

TotalResult total_statistic(int n, int q, const Statistic& p, unsigned jobs) {
  const Census& c = census(n, q, jobs);
  TotalResult out;
  out.n = n;
  out.q = q;
  out.statistic = p.name();
  out.squarefree = c.squarefree;
  for (const auto& [mu, count] : c.by_type) out.total += Rational(count) * p(CycleType(mu));
  out.expectation = out.total / Rational(c.squarefree);
  return out;
}

Integer mobius_irreducible_count(int n, int q) {
  if (n < 1) throw ArgumentError("mobius_irreducible_count: n >= 1");
  Integer total = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) total += mobius(n / d) * ipow(Integer(q), static_cast<unsigned>(d));
  }
  if (total % n != 0) throw FormulaViolation("Mobius sum not divisible by n");
  return total / n;
}

Integer irreducible_count(int n, int q, unsigned jobs) {
  const Census& c = census(n, q, jobs);
  auto it = c.by_type.find(Partition({n}));
  const Integer counted = it == c.by_type.end() ? Integer(0) : it->second;
  const Integer formula = mobius_irreducible_count(n, q);
  if (counted != formula) {
    throw IdentityViolation("irreducible count for (n, q) = (" + std::to_string(n) + ", " + std::to_string(q) +
                            "): enumerated " + to_string(counted) + ", formula " + to_string(formula));
  }
  return counted;
}

int discriminant(const FqPoly& f) {
  const int n = f.degree();
  const int q = f.q;
  if (n < 1) throw ArgumentError("discriminant: degree >= 1");
  const Field field(q);
  // Sylvester matrix of f (degree n) and f' (formal degree n - 1).
  std::vector<int> a = f.coeffs;  // low to high
  std::vector<int> b(n, 0);
  for (int k = 1; k <= n; ++k) b[k - 1] = static_cast<int>(static_cast<long>(k) * a[k] % q);
  const int size = 2 * n - 1;
  std::vector<std::vector<int>> m(size, std::vector<int>(size, 0));
  for (int r = 0; r < n - 1; ++r) {
    for (int k = 0; k <= n; ++k) m[r][r + k] = a[n - k];
  }
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k <= n - 1; ++k) m[n - 1 + r][r + k] = b[n - 1 - k];
  }
  long det = 1;
  for (int col = 0; col < size; ++col) {
    int pivot = col;
    while (pivot < size && m[pivot][col] == 0) ++pivot;
    if (pivot == size) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = (q - det) % q;
    }
    det = det * m[col][col] % q;
    const int inv = field.inv(m[col][col]);
    for (int r = col + 1; r < size; ++r) {
      const int factor = m[r][col] * inv % q;
      if (!factor) continue;
      for (int k = col; k < size; ++k) m[r][k] = ((m[r][k] - factor * m[col][k]) % q + q) % q;
    }
  }
  const long sign = (static_cast<long>(n) * (n - 1) / 2) % 2 ? q - 1 : 1;
  return static_cast<int>(det * sign % q);
}

DiscriminantResult discriminant_statistic(int n, int q, unsigned jobs) {
  check_field(n, q);
  if (q == 2) throw ArgumentError("discriminant_statistic: q must be odd");
  if (n < 2) throw ArgumentError("discriminant_statistic: n >= 2");
  std::vector<bool> is_square(q, false);
  for (int x = 1; x < q; ++x) is_square[x * x % q] = true;
  const std::size_t chunks = monic_chunk_count(n, q);
  std::vector<std::array<long, 3>> partial(chunks, {0, 0, 0});
  parallel_chunks(chunks, jobs, [&](std::size_t begin, std::size_t end) {
    const Field field(q);
    std::vector<int> d;
    for (std::size_t c = begin; c < end; ++c) {
      enumerate_monic_chunk(n, q, c, [&](const FqPoly& f) {
        const Poly p = to_poly(f);
        if (!field.squarefree(p)) return;
        const int disc = discriminant(f);
        if (disc == 0) throw IdentityViolation("square-free polynomial with zero discriminant: " + f.to_string());
        ++partial[c][is_square[disc] ? 0 : 1];
        field.ddf(p, d);
        partial[c][2] += FactorStats{d}.sign();
      });
    }
  });
  DiscriminantResult out;
  for (const auto& p : partial) {
    out.squares += p[0];
    out.nonsquares += p[1];
    out.sign_sum += p[2];
  }
  out.square_iff_even = out.squares - out.nonsquares == out.sign_sum;
  return out;
}

std::string CrossCheck::to_string() const {
  std::ostringstream os;
  os << "n=" << n << " q=" << q << " statistic=" << statistic << "\n";
  for (std::size_t i = 0; i < inner_products.size(); ++i) {
    os << "  <P, H^" << i << "> = " << repstab::to_string(inner_products[i]) << "\n";
  }
  os << "  point count: " << repstab::to_string(point_count) << "\n";
  os << "  cohomology:  " << repstab::to_string(cohomology) << "\n";
  return os.str();
}

CrossCheck gl_crosscheck(int n, int q, const Statistic& p, Cache* cache, unsigned jobs) {
  check_field(n, q);
  CrossCheck out;
  out.n = n;
  out.q = q;
  out.statistic = p.name();
  out.point_count = total_statistic(n, q, p, jobs).total;
  const symcore::ClassFunction pn = p.restrict_to_n(n);
  for (int i = 0; i < n; ++i) {
    const Rational ip = symcore::inner_product(pn, osconf::character_conf(n, i, cache));
    out.inner_products.push_back(ip);
    const Rational term = ip * Rational(ipow(Integer(q), static_cast<unsigned>(n - i)));
    out.cohomology += i % 2 ? Rational(-term) : term;
  }
  if (!out.ok()) throw CrossCheckFailure("Grothendieck-Lefschetz cross-check failed\n" + out.to_string());
  return out;
}

Window default_series_window(int i, int degree) {
  const int centre = 2 * i + degree;
  const int lo = std::max(1, centre - 2);
  return Window{lo, lo + 4};
}

SeriesResult series_partial_sums(const Statistic& p, int i_max, std::optional<Window> window, Cache* cache) {
  if (!p.polynomial()) throw ArgumentError("series_partial_sums: statistic " + p.name() + " is not a character polynomial");
  if (i_max < 0) throw ArgumentError("series_partial_sums: i_max >= 0");
  const int degree = p.polynomial()->degree();
  SeriesResult out;
  out.statistic = p.name();
  Rational running = 0;
  for (int i = 0; i <= i_max; ++i) {
    const Window w = window ? *window : default_series_window(i, degree);
    if (w.empty() || w.lo < 0) throw ArgumentError("series_partial_sums: bad window " + w.to_string());
    std::vector<std::pair<int, Rational>> trace;
    for (int n = w.lo; n <= w.hi; ++n) {
      trace.emplace_back(n, symcore::inner_product(p.restrict_to_n(n), osconf::character_conf(n, i, cache)));
    }
    auto stable = detect_stable<Rational>(std::move(trace), [](const Rational& r) { return repstab::to_string(r); },
                                          "<" + p.name() + ", H^" + std::to_string(i) + ">");
    const Rational c = i % 2 ? Rational(-stable.value) : stable.value;
    running += c;
    out.total.push_back(c);
    out.expectation.push_back(running);
    out.onsets.push_back(stable.onset);
    out.windows.push_back(w);
  }
  return out;
}

std::string format_q_series(const std::vector<Rational>& coefficients) {
  std::string s;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    Rational c = coefficients[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (s.empty()) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    std::string num = repstab::to_string(Rational(c.get_num()));
    Integer den = c.get_den();
    if (i == 0) {
      s += repstab::to_string(c);
      continue;
    }
    s += num + "/";
    std::string qpart = i == 1 ? "q" : "q^" + std::to_string(i);
    s += den == 1 ? qpart : "(" + repstab::to_string(den) + qpart + ")";
  }
  return s.empty() ? "0" : s;
}

}  // namespace repstab::fqstats
