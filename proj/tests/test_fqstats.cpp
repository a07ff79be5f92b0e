#include <doctest.h>

#include "repstab/charpoly.hpp"
#include "repstab/errors.hpp"
#include "repstab/fqstats.hpp"
#include "repstab/qpoly.hpp"

#include <set>

#include "oracles.hpp"

using namespace repstab;
using namespace repstab::fqstats;
using charpoly::Statistic;

namespace {

// ---- naive polynomial arithmetic over F_q for the factorization oracle ----

using Coeffs = std::vector<int>;  // low to high, no trailing zeros

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a by monic b.
Coeffs naive_rem(Coeffs a, const Coeffs& b, int q) {
  trim(a);
  while (a.size() >= b.size()) {
    const int c = a.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] = ((a[shift + k] - c * b[k]) % q + q) % q;
    trim(a);
  }
  return a;
}

Coeffs naive_div(Coeffs a, const Coeffs& b, int q) {
  Coeffs quot(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size() && !a.empty()) {
    const int c = a.back();
    const std::size_t shift = a.size() - b.size();
    quot[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] = ((a[shift + k] - c * b[k]) % q + q) % q;
    trim(a);
  }
  return quot;
}

// All monic polynomials of the given degree, in the same coefficient order.
std::vector<Coeffs> all_monic(int degree, int q) {
  std::vector<Coeffs> out;
  Coeffs c(degree + 1, 0);
  c[degree] = 1;
  for (;;) {
    out.push_back(c);
    int j = 0;
    while (j < degree && ++c[j] == q) c[j++] = 0;
    if (j == degree) break;
  }
  return out;
}

// Factor degree multiset by trial division, repeated factors included.
std::map<int, int> trial_division(Coeffs f, int q) {
  std::map<int, int> degrees;
  for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1;) {
    bool divided = false;
    for (const auto& g : all_monic(d, q)) {
      if (naive_rem(f, g, q).empty()) {
        f = naive_div(f, g, q);
        ++degrees[d];
        divided = true;
        break;
      }
    }
    if (!divided) ++d;
  }
  if (f.size() > 1) ++degrees[static_cast<int>(f.size()) - 1];
  return degrees;
}

Integer choose(const Integer& n, int k) { return k < 0 || n < k ? Integer(0) : binomial(n, static_cast<unsigned>(k)); }

// Square-free polynomials of Frobenius type mu: prod_i binomial(N_i, m_i).
Integer type_count(const Partition& mu, int q) {
  std::map<int, int> mult;
  for (int part : mu.parts()) ++mult[part];
  Integer count = 1;
  for (const auto& [i, m] : mult) {
    Integer points = 0;
    const auto p = oracles::degree_j_points(i);
    for (std::size_t k = 0; k < p.size(); ++k) points += p[k] * ipow(Integer(q), static_cast<unsigned>(k));
    count *= choose(points / i, m);
  }
  return count;
}

Rational at(const QPoly& p, int q) { return p.evaluate(Rational(q)); }

}  // namespace

TEST_CASE("enumerate_monic examples") {
  std::vector<std::string> seen;
  enumerate_monic(1, 2, [&](const FqPoly& f) { seen.push_back(f.to_string()); });
  CHECK(seen == std::vector<std::string>{"x", "x + 1"});
  for (auto [n, q, expected] : std::vector<std::tuple<int, int, int>>{{2, 2, 4}, {3, 3, 27}, {4, 5, 625}}) {
    std::set<std::vector<int>> distinct;
    long count = 0;
    enumerate_monic(n, q, [&](const FqPoly& f) {
      ++count;
      distinct.insert(f.coeffs);
      CHECK(f.coeffs.back() == 1);
    });
    CHECK(count == expected);
    CHECK(distinct.size() == static_cast<std::size_t>(expected));
  }
  CHECK_THROWS_AS(enumerate_monic(3, 4, [](const FqPoly&) {}), ArgumentError);
  CHECK_THROWS_AS(enumerate_monic(0, 2, [](const FqPoly&) {}), ArgumentError);
  CHECK_THROWS_AS(FqPoly(3, {1, 2}), ArgumentError);
}

TEST_CASE("is_squarefree examples") {
  CHECK_FALSE(is_squarefree(FqPoly(2, {0, 0, 1})));
  CHECK(is_squarefree(FqPoly(2, {0, 1, 1})));
  // x^3 + 1 = (x + 1)(x^2 + x + 1) over F_2 but (x + 1)^3 over F_3.
  CHECK(is_squarefree(FqPoly(2, {1, 0, 0, 1})));
  CHECK_FALSE(is_squarefree(FqPoly(3, {1, 0, 0, 1})));
  long count = 0;
  enumerate_monic(3, 2, [&](const FqPoly& f) { count += is_squarefree(f); });
  CHECK(count == 4);
}

TEST_CASE("square-free count is q^n - q^(n-1)") {
  for (int q : {2, 3, 5}) {
    for (int n = 2; n <= (q == 5 ? 7 : 8); ++n) {
      CAPTURE(q);
      CAPTURE(n);
      CHECK(census(n, q).squarefree == ipow(Integer(q), n) - ipow(Integer(q), n - 1));
      CHECK(census(n, q).monic == ipow(Integer(q), n));
    }
  }
}

TEST_CASE("factor_degree_stats examples and trial-division oracle") {
  CHECK(factor_degree_stats(FqPoly(2, {0, 1, 1})).d == std::vector<int>{0, 2, 0});
  CHECK(factor_degree_stats(FqPoly(2, {1, 1, 1})).d == std::vector<int>{0, 0, 1});
  CHECK_THROWS_AS(factor_degree_stats(FqPoly(2, {0, 0, 1})), ArgumentError);
  for (int q : {2, 3}) {
    for (int n = 1; n <= 5; ++n) {
      enumerate_monic(n, q, [&](const FqPoly& f) {
        const auto degrees = trial_division(f.coeffs, q);
        int factors = 0;
        for (const auto& [d, m] : degrees) factors += d * m;
        REQUIRE(factors == n);
        if (!is_squarefree(f)) return;
        const auto stats = factor_degree_stats(f);
        CHECK(stats.degree() == n);
        for (int i = 1; i <= n; ++i) {
          auto it = degrees.find(i);
          CHECK(stats.d[i] == (it == degrees.end() ? 0 : it->second));
        }
        CHECK((stats.sign() == 1 || stats.sign() == -1));
      });
    }
  }
}

TEST_CASE("census by type matches products of binomials of irreducible counts") {
  for (int q : {2, 3, 5}) {
    for (int n = 1; n <= 6; ++n) {
      const auto& c = census(n, q);
      Integer sum = 0;
      for (const auto& mu : symcore::partitions_of(n)) {
        auto it = c.by_type.find(mu);
        const Integer got = it == c.by_type.end() ? Integer(0) : it->second;
        CHECK(got == type_count(mu, q));
        sum += got;
      }
      CHECK(sum == c.squarefree);
    }
  }
}

TEST_CASE("irreducible counts match the Mobius formula") {
  CHECK(irreducible_count(2, 2) == 1);
  CHECK(irreducible_count(3, 2) == 2);
  for (int q : {2, 3, 5, 7}) CHECK(irreducible_count(1, q) == q);
  for (int q : {2, 3}) {
    for (int n = 1; n <= 8; ++n) {
      Integer necklaces = 0;
      for (int d = 1; d <= n; ++d) {
        if (n % d == 0) necklaces += oracles::mobius(n / d) * ipow(Integer(q), d);
      }
      CHECK(irreducible_count(n, q) == necklaces / n);
    }
  }
}

TEST_CASE("total_statistic examples") {
  auto one = total_statistic(3, 2, Statistic::parse("one"));
  CHECK(one.total == 4);
  CHECK(one.expectation == 1);
  // Quadratic excess, by direct enumeration: the type counts give -q^3 + 3q^2 - 2q at n = 4.
  CHECK(total_statistic(4, 3, Statistic::parse("quadratic-excess")).total == -6);
  CHECK(total_statistic(6, 2, Statistic::parse("quadratic-excess")).total == -4);
  CHECK(total_statistic(3, 3, Statistic::parse("quadratic-excess")).total == -6);
  CHECK(total_statistic(2, 5, Statistic::parse("quadratic-excess")).total == 0);
  auto linear = total_statistic(1, 5, Statistic::parse("linear"));
  CHECK(linear.total == 5);
  CHECK(linear.squarefree == 5);
}

TEST_CASE("quadratic excess totals follow the enumerated polynomials") {
  // Frozen from exact type counts: sum over mu of prod binomial(N_i, m_i) * P(mu).
  const std::map<int, QPoly> rows{{3, QPoly::parse("-q^2 + q")},
                                  {4, QPoly::parse("-q^3 + 3q^2 - 2q")},
                                  {5, QPoly::parse("-q^4 + 4q^3 - 5q^2 + 2q")},
                                  {6, QPoly::parse("-q^5 + 4q^4 - 7q^3 + 6q^2 - 2q")},
                                  {7, QPoly::parse("-q^6 + 4q^5 - 7q^4 + 8q^3 - 7q^2 + 3q")},
                                  {8, QPoly::parse("-q^7 + 4q^6 - 7q^5 + 8q^4 - 9q^3 + 9q^2 - 4q")}};
  const Statistic qe = Statistic::parse("quadratic-excess");
  for (const auto& [n, row] : rows) {
    for (int q : {2, 3, 5}) {
      CAPTURE(n);
      CAPTURE(q);
      CHECK(total_statistic(n, q, qe).total == at(row, q));
      Rational from_types = 0;
      for (const auto& mu : symcore::partitions_of(n)) from_types += Rational(type_count(mu, q)) * qe(CycleType(mu));
      CHECK(from_types == at(row, q));
    }
  }
}

TEST_CASE("negated quadratic excess reproduces the reference rows for n = 3..5 only") {
  const Statistic neg = Statistic::parse("-1 * C(X1,2) + X2");
  const std::map<int, QPoly> reference{{3, QPoly::parse("q^2 - q")},
                                       {4, QPoly::parse("q^3 - 3q^2 + 2q")},
                                       {5, QPoly::parse("q^4 - 4q^3 + 5q^2 - 2q")},
                                       {6, QPoly::parse("q^5 - 4q^4 + 7q^3 - 7q^2 + 3q")},
                                       {7, QPoly::parse("q^6 - 4q^5 + 7q^4 - 8q^3 + 8q^2 - 4q")},
                                       {8, QPoly::parse("q^7 - 4q^6 + 7q^5 - 8q^4 + 9q^3 - 10q^2 + 4q")}};
  for (const auto& [n, row] : reference) {
    const bool agrees = total_statistic(n, 3, neg).total == at(row, 3);
    CAPTURE(n);
    CHECK(agrees == (n <= 5));
  }
}

TEST_CASE("discriminant statistic") {
  auto r23 = discriminant_statistic(2, 3);
  CHECK(r23.squares + r23.nonsquares == 6);
  CHECK(r23.square_iff_even);
  auto r33 = discriminant_statistic(3, 3);
  CHECK(r33.squares + r33.nonsquares == 18);
  auto r25 = discriminant_statistic(2, 5);
  CHECK(r25.squares + r25.nonsquares == 20);
  for (int q : {3, 5, 7}) {
    for (int n = 2; n <= 5; ++n) {
      CAPTURE(q);
      CAPTURE(n);
      auto r = discriminant_statistic(n, q);
      CHECK(r.square_iff_even);
      CHECK(r.squares + r.nonsquares == census(n, q).squarefree);
    }
  }
  // x^2 + 1 over F_3: disc = -4 = 2, a nonsquare; x^2 - 1: disc 4 = 1.
  CHECK(discriminant(FqPoly(3, {1, 0, 1})) == 2);
  CHECK(discriminant(FqPoly(3, {2, 0, 1})) == 1);
  CHECK_THROWS_AS(discriminant_statistic(3, 2), ArgumentError);
  CHECK_THROWS_AS(discriminant_statistic(1, 3), ArgumentError);
}

TEST_CASE("Grothendieck-Lefschetz cross-check for n <= 6") {
  const std::vector<std::string> stats{"one", "linear", "X2", "quadratic-excess"};
  for (int q : {2, 3, 5}) {
    for (int n = 1; n <= 6; ++n) {
      for (const auto& s : stats) {
        CAPTURE(q);
        CAPTURE(n);
        CAPTURE(s);
        auto r = gl_crosscheck(n, q, Statistic::parse(s));
        CHECK(r.ok());
        CHECK(r.inner_products.size() == static_cast<std::size_t>(n));
      }
    }
  }
  CHECK(gl_crosscheck(3, 2, Statistic::parse("one")).point_count == 4);
  CHECK(gl_crosscheck(4, 3, Statistic::parse("quadratic-excess")).cohomology == -6);
  CHECK(gl_crosscheck(5, 2, Statistic::parse("quadratic-excess")).cohomology == 0);
}

TEST_CASE("cross-check report shows both sides") {
  CrossCheck c;
  c.n = 3;
  c.q = 2;
  c.statistic = "one";
  c.point_count = 4;
  c.cohomology = 5;
  CHECK_FALSE(c.ok());
  const std::string text = c.to_string();
  CHECK(text.find('4') != std::string::npos);
  CHECK(text.find('5') != std::string::npos);
}

TEST_CASE("series partial sums") {
  auto one = series_partial_sums(Statistic::parse("one"), 3);
  CHECK(one.total == std::vector<Rational>{1, -1, 0, 0});
  CHECK(one.expectation == std::vector<Rational>{1, 0, 0, 0});
  CHECK(format_q_series(one.total) == "1 - 1/q");

  auto linear = series_partial_sums(Statistic::parse("linear"), 3);
  CHECK(linear.expectation == std::vector<Rational>{1, -1, 1, -1});

  auto qe = series_partial_sums(Statistic::parse("quadratic-excess"), 4);
  CHECK(qe.total == std::vector<Rational>{0, -1, 4, -7, 8});
  CHECK(qe.expectation == std::vector<Rational>{0, -1, 3, -4, 4});
  CHECK(format_q_series(qe.expectation) == "-1/q + 3/q^2 - 4/q^3 + 4/q^4");

  CHECK_THROWS_AS(series_partial_sums(Statistic::parse("sign"), 2), ArgumentError);
  CHECK_THROWS_AS(series_partial_sums(Statistic::parse("quadratic-excess"), 3, Window{3, 6}), StabilizationError);
  CHECK(format_q_series({0, make_rational(1, 2)}) == "1/(2q)");
}

TEST_CASE("expectations converge at a power-saving rate") {
  const Statistic qe = Statistic::parse("quadratic-excess");
  for (int q : {2, 3, 5}) {
    Rational prev = total_statistic(2, q, qe).expectation;
    for (int n = 3; n <= 8; ++n) {
      const Rational e = total_statistic(n, q, qe).expectation;
      const Rational d = e - prev;
      CAPTURE(q);
      CAPTURE(n);
      // |E_n - E_{n-1}| <= q^{deg P / 2} q^{-n/2}, squared to stay exact.
      CHECK(d * d * Rational(ipow(Integer(q), n)) <= Rational(q * q));
      prev = e;
    }
  }
}

TEST_CASE("q-polynomial helper") {
  const QPoly p = QPoly::parse("q^3 - 3q^2 + 2q");
  CHECK(p.to_string() == "q^3 - 3q^2 + 2q");
  CHECK(p.evaluate(3) == 6);
  CHECK(QPoly::parse("-q^2 + q") * QPoly::parse("q - 1") == QPoly::parse("-q^3 + 2q^2 - q"));
  CHECK(QPoly::parse("q^2 - 1").divide_exact(QPoly::parse("q - 1")) == QPoly::parse("q + 1"));
  CHECK_THROWS_AS(QPoly::parse("q^2 + 1").divide_exact(QPoly::parse("q - 1")), FormulaViolation);
  CHECK_THROWS_AS(QPoly::parse("q^"), ParseError);
}
