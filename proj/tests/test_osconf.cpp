#include <doctest.h>

#include "repstab/cache.hpp"
#include "repstab/charpoly.hpp"
#include "repstab/errors.hpp"
#include "repstab/linalg.hpp"
#include "repstab/osconf.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numeric>
#include <random>

#include "oracles.hpp"

using namespace repstab;
using namespace repstab::osconf;
using symcore::CycleType;
using symcore::partitions_of;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

OSElement single(int n, const OSMonomial& m) {
  OSElement x;
  x.n = n;
  x.degree = static_cast<int>(m.size());
  x.terms[m] = 1;
  return x;
}

Permutation compose(const Permutation& s, const Permutation& t) {
  Permutation out(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) out[k] = s[t[k] - 1];
  return out;
}

Partition cycle_type_of(const Permutation& s) {
  std::vector<bool> seen(s.size(), false);
  std::vector<int> lens;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (seen[k]) continue;
    int len = 0;
    for (std::size_t x = k; !seen[x]; x = s[x] - 1) {
      seen[x] = true;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return Partition(lens);
}

Permutation random_permutation(int n, std::mt19937& rng) {
  Permutation s(n);
  std::iota(s.begin(), s.end(), 1);
  std::shuffle(s.begin(), s.end(), rng);
  return s;
}

OSMonomial random_word(int n, int degree, std::mt19937& rng) {
  OSMonomial w;
  for (int k = 0; k < degree; ++k) {
    int a = 1 + static_cast<int>(rng() % n), b = 1 + static_cast<int>(rng() % n);
    while (b == a) b = 1 + static_cast<int>(rng() % n);
    w.emplace_back(a, b);
  }
  return w;
}

}  // namespace

TEST_CASE("nbc_basis examples and dimension law") {
  for (int n = 1; n <= 8; ++n) CHECK(nbc_basis(n, 0).size() == 1);
  CHECK(nbc_basis(4, 1).size() == 6);
  CHECK(nbc_basis(4, 2).size() == 11);
  CHECK(nbc_basis(3, 3).empty());
  for (int n = 1; n <= 12; ++n) {
    // Coefficients of prod_{k<n} (1 + k t), computed by expanding the product.
    std::vector<Integer> poly{1};
    for (int k = 1; k < n; ++k) {
      std::vector<Integer> next(poly.size() + 1, 0);
      for (std::size_t d = 0; d < poly.size(); ++d) {
        next[d] += poly[d];
        next[d + 1] += k * poly[d];
      }
      poly = next;
    }
    for (int i = 0; i < n; ++i) {
      CHECK(nbc_dimension(n, i) == poly[i]);
      if (n <= 10) CHECK(Integer(static_cast<long>(nbc_basis(n, i).size())) == poly[i]);
    }
  }
  for (const auto& m : nbc_basis(6, 3)) CHECK(is_normal_form(m));
  CHECK(nbc_dimension(16, 4) == 4899622);
}

TEST_CASE("straighten examples") {
  CHECK(straighten({{1, 2}, {1, 2}}, 3).is_zero());
  OSElement swapped = straighten({{1, 3}, {1, 2}}, 3);
  CHECK(swapped.terms.size() == 1);
  CHECK(swapped.coefficient({{1, 2}, {1, 3}}) == -1);
  OSElement chain = straighten({{1, 2}, {2, 3}}, 3);
  CHECK(chain == single(3, {{1, 2}, {2, 3}}));
  // The three-term relation read from the other side gives the same class.
  OSElement rhs = straighten_all({{{{1, 3}, {2, 3}}, Rational(1)}, {{{1, 3}, {1, 2}}, Rational(-1)}}, 3, 2);
  CHECK(rhs == chain);
  OSElement repeated = straighten({{1, 3}, {2, 3}}, 3);
  CHECK(repeated.to_string() == "-1*w[1,2]*w[1,3] + 1*w[1,2]*w[2,3]");
  CHECK(OSGenerator(3, 1) == OSGenerator(1, 3));
  CHECK_THROWS_AS(OSGenerator(2, 2), ArgumentError);
}

TEST_CASE("straightening agrees with the exterior-algebra presentation") {
  std::mt19937 rng(5);
  for (int n = 3; n <= 5; ++n) {
    oracles::OSPresentation os(n);
    for (int i = 1; i < n; ++i) {
      CHECK(os.quotient_dimension(i) == nbc_dimension(n, i));
      CHECK(os.spans_quotient(i, nbc_basis(n, i)));
      for (int trial = 0; trial < 25; ++trial) {
        OSMonomial w = random_word(n, i, rng);
        CHECK(os.congruent(w, straighten(w, n)));
      }
    }
  }
}

TEST_CASE("straightening is confluent under random rewrite order") {
  std::mt19937 rng(9);
  for (int n = 3; n <= 6; ++n) {
    for (int degree = 1; degree <= 3; ++degree) {
      for (int trial = 0; trial < 30; ++trial) {
        OSMonomial w = random_word(n, degree, rng);
        OSElement base = straighten(w, n);
        for (int rep = 0; rep < 3; ++rep) CHECK(straighten(w, n, &rng) == base);
      }
    }
  }
}

TEST_CASE("sn_action examples") {
  OSElement x = straighten({{1, 2}, {2, 3}}, 3);
  CHECK(sn_action({1, 2, 3}, x) == x);
  CHECK(sn_action({2, 1, 3}, single(3, {{1, 2}})) == single(3, {{1, 2}}));
  // (1 2 3) sends w12*w13 to w23*w12.
  OSElement img = sn_action({2, 3, 1}, single(3, {{1, 2}, {1, 3}}));
  CHECK(img == straighten({{2, 3}, {1, 2}}, 3));
  CHECK(img.coefficient({{1, 2}, {2, 3}}) == -1);
  CHECK(img.terms.size() == 1);
  // Brute force 3-cycle matrix on the two-dimensional degree-2 space.
  Integer tr = 0;
  for (const auto& b : nbc_basis(3, 2)) tr += Integer(sn_action({2, 3, 1}, single(3, b)).coefficient(b).get_num());
  CHECK(tr == -1);
  CHECK_THROWS_AS(sn_action({1, 1, 2}, x), ArgumentError);
}

TEST_CASE("action is a representation and the trace is a class function") {
  std::mt19937 rng(21);
  for (int n = 3; n <= 7; ++n) {
    for (int i = 1; i < std::min(n, 4); ++i) {
      const auto basis = nbc_basis(n, i);
      for (int trial = 0; trial < 6; ++trial) {
        Permutation s = random_permutation(n, rng), t = random_permutation(n, rng);
        OSElement x = single(n, basis[rng() % basis.size()]);
        CHECK(sn_action(s, sn_action(t, x)) == sn_action(compose(s, t), x));
      }
      const ClassFunction chi = character_conf(n, i);
      for (const auto& mu : partitions_of(n)) {
        for (int rep = 0; rep < 3; ++rep) {
          Permutation g = random_permutation(n, rng);
          Permutation conj = compose(compose(g, representative(mu)), oracles::inverse(g));
          REQUIRE(cycle_type_of(conj) == mu);
          CHECK(trace(conj, n, i) == chi.at(CycleType(mu)).get_num());
        }
      }
    }
  }
}

TEST_CASE("full action matrices over all permutations for n <= 5") {
  for (int n = 2; n <= 5; ++n) {
    for (int i = 0; i < n; ++i) {
      const auto basis = nbc_basis(n, i);
      const ClassFunction chi = character_conf(n, i);
      Permutation s(n);
      std::iota(s.begin(), s.end(), 1);
      do {
        Integer tr = 0;
        for (const auto& b : basis) tr += sn_action(s, single(n, b)).coefficient(b).get_num();
        CHECK(tr == chi.at(CycleType(cycle_type_of(s))).get_num());
      } while (std::next_permutation(s.begin(), s.end()));
    }
  }
}

TEST_CASE("characters agree with the twisted point-count oracle") {
  for (int n = 0; n <= 9; ++n) {
    for (int i = 0; i < std::max(n, 1); ++i) {
      const ClassFunction chi = character_conf(n, i);
      const auto& parts = partitions_of(n);
      for (std::size_t k = 0; k < parts.size(); ++k) {
        CHECK(chi[k] == oracles::conf_character_by_point_count(parts[k], i));
      }
    }
  }
}

TEST_CASE("character_conf examples") {
  for (int n = 1; n <= 7; ++n) {
    const ClassFunction chi = character_conf(n, 0);
    for (const auto& v : chi.values()) CHECK(v == 1);
  }
  CHECK(character_conf(4, 1).at(CycleType::identity(4)) == 6);
  CHECK(character_conf(3, 5).values() == std::vector<Rational>(3, Rational(0)));
  for (int n = 2; n <= 8; ++n) {
    CHECK(symcore::inner_product(symcore::ClassFunction(n, std::vector<Rational>(partitions_of(n).size(), 1)),
                                 character_conf(n, 1)) == 1);
  }
}

TEST_CASE("H^2 equals its character polynomial for 0 <= n <= 8") {
  const auto h2 = charpoly::h2_polynomial();
  for (int n = 0; n <= 8; ++n) CHECK(charpoly::restrict_to_n(h2, n) == character_conf(n, 2));
}

TEST_CASE("fit recovers the H^2 polynomial from cohomology characters") {
  std::vector<std::pair<int, ClassFunction>> data;
  for (int n = 0; n <= 8; ++n) data.emplace_back(n, character_conf(n, 2));
  auto r = charpoly::fit(data, 4);
  REQUIRE(r.ok());
  CHECK(r.polynomial == charpoly::h2_polynomial());
}

TEST_CASE("decompose_conf examples") {
  for (int n = 4; n <= 9; ++n) CHECK(decompose_conf(n, 1).to_string() == "V(0) + V(1) + V(2)");
  CHECK(decompose_conf(4, 2).to_string() == "V(1)^2 + V(1,1) + V(2)");
  CHECK(decompose_conf(7, 2).to_string() == "V(1)^2 + V(1,1)^2 + V(2)^2 + V(2,1)^2 + V(3) + V(3,1)");
}

TEST_CASE("verify_stability examples") {
  auto r1 = verify_stability(1, Window{2, 10});
  CHECK(r1.observed_onset == 4);
  CHECK(r1.stable.to_string() == "V(0) + V(1) + V(2)");
  auto r2 = verify_stability(2, Window{4, 10});
  CHECK(r2.observed_onset == 7);
  auto r0 = verify_stability(0, Window{1, 6});
  CHECK(r0.observed_onset == 1);
  CHECK(r0.stable.to_string() == "V(0)");
}

TEST_CASE("character cache round trip and corruption handling") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("repstab-os-cache-" + std::to_string(std::random_device{}()));
  {
    Cache cache(dir);
    const ClassFunction fresh = character_conf(6, 2, &cache);
    CHECK(cache.load("os_traces", "n6-i2").status == Cache::Status::hit);
    CHECK(character_conf(6, 2, &cache) == fresh);
    // Flip the payload on disk: the checksum no longer matches and the value is recomputed.
    auto file = cache.load("os_traces", "n6-i2").file;
    std::string text;
    {
      std::ifstream in(file);
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
    auto pos = text.find("\"values\":[\"");
    REQUIRE(pos != std::string::npos);
    text[pos + 11] = text[pos + 11] == '9' ? '8' : '9';
    {
      std::ofstream out(file);
      out << text;
    }
    CHECK(cache.load("os_traces", "n6-i2").status == Cache::Status::corrupt);
    CHECK(character_conf(6, 2, &cache) == fresh);
    CHECK(cache.load("os_traces", "n6-i2").status == Cache::Status::hit);
  }
  fs::remove_all(dir);
}
