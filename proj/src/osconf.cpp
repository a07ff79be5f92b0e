#include "repstab/osconf.hpp"

#include "repstab/cache.hpp"
#include "repstab/errors.hpp"
#include "repstab/parallel.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <iostream>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace repstab::osconf {

using symcore::CycleType;
using symcore::PaddedLabel;
using symcore::partitions_of;

namespace {

// Straightening works on fixed-size words of byte pairs; the rewrite rule for
// a repeated upper index j and lower indices a < b is
//   w_aj w_bj = w_ab w_bj - w_ab w_aj,
// which replaces one upper index j by b < j. The sorted vector of upper
// indices therefore decreases componentwise, so rewriting terminates.
struct Gen {
  std::uint8_t lo;
  std::uint8_t hi;
};

struct Word {
  std::array<Gen, kMaxPoints> g;
  int len = 0;
};

// Sorts by (hi, lo), returning the sign of the permutation, or 0 when a
// generator repeats (its square vanishes).
int sort_word(Word& w) {
  int sign = 1;
  for (int k = 1; k < w.len; ++k) {
    for (int m = k; m > 0; --m) {
      const Gen& x = w.g[m - 1];
      const Gen& y = w.g[m];
      if (x.hi < y.hi || (x.hi == y.hi && x.lo < y.lo)) break;
      if (x.hi == y.hi && x.lo == y.lo) return 0;
      std::swap(w.g[m - 1], w.g[m]);
      sign = -sign;
    }
  }
  return sign;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("straightening coefficient overflow");
  return r;
}

// radix[j] = (j-1)!, so a normal-form monomial with lower index l_j at upper
// j (0 when absent) has the code sum_j l_j * radix[j], unique below n!.
const std::array<std::uint64_t, kMaxPoints + 2>& radix() {
  static const auto table = [] {
    std::array<std::uint64_t, kMaxPoints + 2> r{};
    r[0] = r[1] = r[2] = 1;
    for (int j = 3; j < kMaxPoints + 2; ++j) r[j] = r[j - 1] * static_cast<std::uint64_t>(j - 1);
    return r;
  }();
  return table;
}

std::uint64_t encode_sorted(const Word& w) {
  std::uint64_t code = 0;
  for (int k = 0; k < w.len; ++k) code += w.g[k].lo * radix()[w.g[k].hi];
  return code;
}

OSMonomial decode(std::uint64_t code, int n) {
  OSMonomial m;
  for (int j = 2; j <= n; ++j) {
    const auto lower = static_cast<int>((code / radix()[j]) % static_cast<std::uint64_t>(j));
    if (lower) m.emplace_back(lower, j);
  }
  return m;
}

Word to_word(const OSMonomial& m) {
  if (m.size() > static_cast<std::size_t>(kMaxPoints)) throw ArgumentError("word too long");
  Word w;
  w.len = static_cast<int>(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k].i < 1 || m[k].j > kMaxPoints || m[k].i >= m[k].j) throw ArgumentError("bad generator");
    w.g[k] = Gen{static_cast<std::uint8_t>(m[k].i), static_cast<std::uint8_t>(m[k].j)};
  }
  return w;
}

void expand(Word w, std::int64_t coef, std::mt19937* rng, std::unordered_map<std::uint64_t, std::int64_t>& acc) {
  const int s = sort_word(w);
  if (s == 0) return;
  coef *= s;
  int pick = -1;
  if (rng == nullptr) {
    for (int k = 0; k + 1 < w.len; ++k) {
      if (w.g[k].hi == w.g[k + 1].hi) {
        pick = k;
        break;
      }
    }
  } else {
    std::array<int, kMaxPoints> options{};
    int count = 0;
    for (int k = 0; k + 1 < w.len; ++k) {
      if (w.g[k].hi == w.g[k + 1].hi) options[count++] = k;
    }
    if (count) pick = options[std::uniform_int_distribution<int>(0, count - 1)(*rng)];
  }
  if (pick < 0) {
    auto& slot = acc[encode_sorted(w)];
    slot = checked_add(slot, coef);
    return;
  }
  const std::uint8_t a = w.g[pick].lo, b = w.g[pick + 1].lo, j = w.g[pick].hi;
  Word first = w;
  first.g[pick] = Gen{a, b};
  first.g[pick + 1] = Gen{b, j};
  expand(first, coef, rng, acc);
  Word second = w;
  second.g[pick] = Gen{a, b};
  second.g[pick + 1] = Gen{a, j};
  expand(second, -coef, rng, acc);
}

// Coefficient of the sorted normal-form word `target` in the expansion of w.
std::int64_t diagonal(Word w, const Word& target) {
  const int s = sort_word(w);
  if (s == 0) return 0;
  int pick = -1;
  for (int k = 0; k < w.len; ++k) {
    // Upper indices only shrink, so a word already below the target is dead.
    if (w.g[k].hi < target.g[k].hi) return 0;
    if (pick < 0 && k + 1 < w.len && w.g[k].hi == w.g[k + 1].hi) pick = k;
  }
  if (pick < 0) {
    for (int k = 0; k < w.len; ++k) {
      if (w.g[k].lo != target.g[k].lo || w.g[k].hi != target.g[k].hi) return 0;
    }
    return s;
  }
  const std::uint8_t a = w.g[pick].lo, b = w.g[pick + 1].lo, j = w.g[pick].hi;
  Word first = w;
  first.g[pick] = Gen{a, b};
  first.g[pick + 1] = Gen{b, j};
  Word second = w;
  second.g[pick] = Gen{a, b};
  second.g[pick + 1] = Gen{a, j};
  const std::int64_t x = diagonal(first, target);
  const std::int64_t y = diagonal(second, target);
  return s * (x - y);
}

void basis_rec(int n, int i, int next_upper, OSMonomial& current, std::vector<OSMonomial>& out) {
  if (static_cast<int>(current.size()) == i) {
    out.push_back(current);
    return;
  }
  const int still = i - static_cast<int>(current.size());
  for (int j = next_upper; j <= n - still + 1; ++j) {
    for (int lo = 1; lo < j; ++lo) {
      current.emplace_back(lo, j);
      basis_rec(n, i, j + 1, current, out);
      current.pop_back();
    }
  }
}

std::vector<OSMonomial> basis_quiet(int n, int i) {
  if (n < 0 || i < 0) throw ArgumentError("nbc_basis: negative argument");
  if (n > kMaxPoints) throw ArgumentError("nbc_basis: n above " + std::to_string(kMaxPoints));
  std::vector<OSMonomial> out;
  if (i == 0) {
    out.emplace_back();
    return out;
  }
  if (i >= n) return out;
  OSMonomial current;
  basis_rec(n, i, 2, current, out);
  return out;
}

void check_permutation(const Permutation& sigma) {
  std::vector<bool> seen(sigma.size() + 1, false);
  for (int v : sigma) {
    if (v < 1 || v > static_cast<int>(sigma.size()) || seen[v]) throw ArgumentError("not a permutation");
    seen[v] = true;
  }
}

OSMonomial relabel(const Permutation& sigma, const OSMonomial& m) {
  OSMonomial out;
  out.reserve(m.size());
  for (const auto& g : m) out.emplace_back(sigma[g.i - 1], sigma[g.j - 1]);
  return out;
}

}  // namespace

// ---- generators, monomials, elements ----

OSGenerator::OSGenerator(int a, int b) : i(std::min(a, b)), j(std::max(a, b)) {
  if (a == b) throw ArgumentError("w_ii is not a generator");
}

bool is_normal_form(const OSMonomial& m) {
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k].i >= m[k].j || m[k].i < 1) return false;
    if (k > 0 && m[k].j <= m[k - 1].j) return false;
  }
  return true;
}

std::string to_string(const OSMonomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (k) s += "*";
    s += "w[" + std::to_string(m[k].i) + "," + std::to_string(m[k].j) + "]";
  }
  return s;
}

Rational OSElement::coefficient(const OSMonomial& m) const {
  auto it = terms.find(m);
  return it == terms.end() ? Rational(0) : it->second;
}

std::string OSElement::to_string() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms) {
    if (!s.empty()) s += " + ";
    s += repstab::to_string(c);
    if (!m.empty()) s += "*" + osconf::to_string(m);
  }
  return s;
}

// ---- basis ----

std::vector<OSMonomial> nbc_basis(int n, int i) {
  if (n >= 1 && i >= n) {
    std::cerr << "warning: degree " << i << " is outside 0.." << n - 1 << " for n = " << n
              << "; the basis is empty\n";
  }
  return basis_quiet(n, i);
}

Integer nbc_dimension(int n, int i) {
  if (i < 0) return 0;
  // e_i(1..n-1) by the recurrence over adding the value k.
  std::vector<Integer> e(std::max(i, 0) + 1, 0);
  e[0] = 1;
  for (int k = 1; k <= n - 1; ++k) {
    for (int d = std::min(i, k); d >= 1; --d) e[d] += k * e[d - 1];
  }
  return e[i];
}

// ---- straightening and action ----

OSElement straighten(const OSMonomial& word, int n, std::mt19937* rng) {
  for (const auto& g : word) {
    if (g.j > n) throw ArgumentError("generator index exceeds n");
  }
  std::unordered_map<std::uint64_t, std::int64_t> acc;
  expand(to_word(word), 1, rng, acc);
  OSElement out;
  out.n = n;
  out.degree = static_cast<int>(word.size());
  for (const auto& [code, c] : acc) {
    if (c != 0) out.terms.emplace(decode(code, n), Rational(c));
  }
  return out;
}

OSElement straighten_all(const std::map<OSMonomial, Rational>& words, int n, int degree) {
  OSElement out;
  out.n = n;
  out.degree = degree;
  for (const auto& [word, c] : words) {
    if (static_cast<int>(word.size()) != degree) throw ArgumentError("mixed degrees in straighten_all");
    for (const auto& [m, v] : straighten(word, n).terms) {
      auto& slot = out.terms[m];
      slot += c * v;
      if (slot == 0) out.terms.erase(m);
    }
  }
  return out;
}

OSElement sn_action(const Permutation& sigma, const OSElement& x) {
  if (static_cast<int>(sigma.size()) != x.n) throw ArgumentError("permutation size differs from n");
  check_permutation(sigma);
  std::map<OSMonomial, Rational> words;
  for (const auto& [m, c] : x.terms) words[relabel(sigma, m)] += c;
  return straighten_all(words, x.n, x.degree);
}

std::int64_t straightened_coefficient(const OSMonomial& word, const OSMonomial& target) {
  if (word.size() != target.size()) return 0;
  if (!is_normal_form(target)) throw ArgumentError("target monomial is not in normal form");
  return diagonal(to_word(word), to_word(target));
}

Permutation representative(const Partition& mu) {
  Permutation sigma;
  int start = 1;
  for (int len : mu.parts()) {
    for (int k = 0; k < len; ++k) sigma.push_back(start + (k + 1) % len);
    start += len;
  }
  return sigma;
}

Integer trace(const Permutation& sigma, int n, int i) {
  if (static_cast<int>(sigma.size()) != n) throw ArgumentError("permutation size differs from n");
  check_permutation(sigma);
  const auto basis = basis_quiet(n, i);
  std::mutex m;
  Integer total = 0;
  parallel_chunks(basis.size(), 0, [&](std::size_t begin, std::size_t end) {
    std::int64_t local = 0;
    for (std::size_t k = begin; k < end; ++k) {
      const Word target = to_word(basis[k]);
      Word image = target;
      for (int g = 0; g < image.len; ++g) {
        std::uint8_t a = static_cast<std::uint8_t>(sigma[image.g[g].lo - 1]);
        std::uint8_t b = static_cast<std::uint8_t>(sigma[image.g[g].hi - 1]);
        image.g[g] = a < b ? Gen{a, b} : Gen{b, a};
      }
      local = checked_add(local, diagonal(image, target));
    }
    std::lock_guard lock(m);
    total += Integer(static_cast<long>(local));
  });
  return total;
}

ClassFunction character_conf(int n, int i, Cache* cache) {
  if (n < 0 || i < 0) throw ArgumentError("character_conf: negative argument");
  const auto& parts = partitions_of(n);
  if (i > 0 && i >= n) return ClassFunction(n);
  const std::string key = "n" + std::to_string(n) + "-i" + std::to_string(i);
  if (cache != nullptr) {
    auto loaded = cache->load("os_traces", key);
    if (loaded.status == Cache::Status::hit) {
      try {
        const auto& values = loaded.payload.at("values");
        if (loaded.payload.at("n").get<int>() == n && loaded.payload.at("i").get<int>() == i &&
            values.size() == parts.size()) {
          std::vector<Rational> out;
          for (const auto& v : values) out.emplace_back(parse_integer(v.get<std::string>()));
          return ClassFunction(n, std::move(out));
        }
      } catch (const std::exception&) {
        // Recompute below.
      }
    }
  }
  std::vector<Rational> values;
  values.reserve(parts.size());
  for (const auto& mu : parts) values.emplace_back(trace(representative(mu), n, i));
  if (cache != nullptr) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : values) arr.push_back(repstab::to_string(v));
    cache->store("os_traces", key, nlohmann::json{{"n", n}, {"i", i}, {"values", std::move(arr)}});
  }
  return ClassFunction(n, std::move(values));
}

Decomposition decompose_conf(int n, int i, Cache* cache) {
  if (cache != nullptr) symcore::character_table(n, cache);
  return symcore::decompose(character_conf(n, i, cache));
}

// ---- stability ----

std::string StabilityReport::to_string() const {
  std::ostringstream os;
  for (const auto& [n, d] : per_n) os << "n=" << n << ": " << d.to_string() << "\n";
  for (const auto& [lambda, onset] : label_onset) {
    os << PaddedLabel{lambda, window.hi}.to_string() << " constant from n=" << onset << "\n";
  }
  os << "observed onset " << observed_onset << ", predicted bound " << predicted_onset << "\n";
  return os.str();
}

StabilityReport verify_stability(int i, const Window& window, Cache* cache) {
  if (window.empty() || window.lo < 0) throw ArgumentError("verify_stability: bad window");
  StabilityReport report;
  report.i = i;
  report.window = window;
  report.predicted_onset = 4 * i;
  std::map<Partition, std::vector<Integer>> series;
  for (int n = window.lo; n <= window.hi; ++n) {
    report.per_n.emplace_back(n, decompose_conf(n, i, cache));
    for (const auto& [lambda, mult] : report.per_n.back().second.multiplicities) series[lambda];
  }
  for (auto& [lambda, values] : series) {
    for (const auto& [n, d] : report.per_n) {
      auto it = d.multiplicities.find(lambda);
      values.push_back(it == d.multiplicities.end() ? Integer(0) : it->second);
    }
    std::size_t start = values.size() - 1;
    while (start > 0 && values[start - 1] == values.back()) --start;
    report.label_onset[lambda] = window.lo + static_cast<int>(start);
  }
  report.observed_onset = window.lo;
  for (const auto& [lambda, onset] : report.label_onset) report.observed_onset = std::max(report.observed_onset, onset);
  report.stable = report.per_n.back().second;

  const int guaranteed = std::max(report.predicted_onset, window.lo);
  for (const auto& [lambda, onset] : report.label_onset) {
    if (onset > guaranteed) {
      throw StabilityViolation("multiplicity of " + PaddedLabel{lambda, onset}.to_string() + " in H^" +
                               std::to_string(i) + " changes at n=" + std::to_string(onset) +
                               ", inside the range n >= " + std::to_string(report.predicted_onset) + "\n" +
                               report.to_string());
    }
  }
  return report;
}

}  // namespace repstab::osconf
