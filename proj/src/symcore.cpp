#include "repstab/symcore.hpp"

#include "repstab/cache.hpp"
#include "repstab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace repstab::symcore {

namespace {

constexpr int kMaxTableN = 30;

struct PartitionHash {
  std::size_t operator()(const Partition& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : p.parts()) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

struct Level {
  std::vector<Partition> partitions;
  std::unordered_map<Partition, std::size_t, PartitionHash> index;
  std::unique_ptr<std::vector<std::vector<std::int64_t>>> table;
};

std::shared_mutex g_mutex;
std::vector<std::unique_ptr<Level>> g_levels;

void generate(int remaining, int max_part, std::vector<int>& current, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    generate(remaining - part, part, current, out);
    current.pop_back();
  }
}

// Requires the unique lock.
Level& level_locked(int n) {
  if (static_cast<int>(g_levels.size()) <= n) g_levels.resize(n + 1);
  if (!g_levels[n]) {
    auto lvl = std::make_unique<Level>();
    std::vector<int> current;
    generate(n, n, current, lvl->partitions);
    for (std::size_t k = 0; k < lvl->partitions.size(); ++k) lvl->index.emplace(lvl->partitions[k], k);
    g_levels[n] = std::move(lvl);
  }
  return *g_levels[n];
}

const Level* find_level(int n) {
  std::shared_lock lock(g_mutex);
  if (n < static_cast<int>(g_levels.size()) && g_levels[n]) return g_levels[n].get();
  return nullptr;
}

const Level& level(int n) {
  if (n < 0) throw ArgumentError("negative partition size");
  if (const Level* l = find_level(n)) return *l;
  std::unique_lock lock(g_mutex);
  return level_locked(n);
}

// Beta-set of lambda with exactly `len` entries, decreasing.
std::vector<int> beta_set(const Partition& lambda, std::size_t len) {
  std::vector<int> beta(len);
  for (std::size_t i = 0; i < len; ++i) {
    int part = i < lambda.length() ? lambda[i] : 0;
    beta[i] = part + static_cast<int>(len - 1 - i);
  }
  return beta;
}

Partition from_beta(std::vector<int> beta) {
  std::sort(beta.rbegin(), beta.rend());
  std::vector<int> parts;
  const int len = static_cast<int>(beta.size());
  for (int i = 0; i < len; ++i) {
    int part = beta[i] - (len - 1 - i);
    if (part > 0) parts.push_back(part);
  }
  return Partition(std::move(parts));
}

// Builds the table for n assuming all smaller tables exist. Requires the unique lock.
void build_table_locked(int n) {
  Level& lvl = level_locked(n);
  if (lvl.table) return;
  auto table = std::make_unique<std::vector<std::vector<std::int64_t>>>(
      lvl.partitions.size(), std::vector<std::int64_t>(lvl.partitions.size(), 0));
  if (n == 0) {
    (*table)[0][0] = 1;
    lvl.table = std::move(table);
    return;
  }
  for (std::size_t c = 0; c < lvl.partitions.size(); ++c) {
    const Partition& mu = lvl.partitions[c];
    const int k = mu[0];
    Partition rest(std::vector<int>(mu.parts().begin() + 1, mu.parts().end()));
    const Level& sub = *g_levels[n - k];
    const std::size_t rest_col = sub.index.at(rest);
    for (std::size_t r = 0; r < lvl.partitions.size(); ++r) {
      const Partition& lambda = lvl.partitions[r];
      std::vector<int> beta = beta_set(lambda, lambda.length());
      std::int64_t value = 0;
      for (std::size_t b = 0; b < beta.size(); ++b) {
        const int target = beta[b] - k;
        if (target < 0) continue;
        if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        // Sign is (-1)^(number of beta entries strictly between target and beta[b]).
        int between = 0;
        for (int x : beta) between += (x > target && x < beta[b]) ? 1 : 0;
        std::vector<int> moved = beta;
        moved[b] = target;
        Partition smaller = from_beta(std::move(moved));
        std::int64_t chi = (*sub.table)[sub.index.at(smaller)][rest_col];
        value += (between % 2 == 0) ? chi : -chi;
      }
      (*table)[r][c] = value;
    }
  }
  lvl.table = std::move(table);
}

}  // namespace

// ---- Partition ----

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (parts_[k] < 1) throw ArgumentError("partition parts must be positive");
    if (k > 0 && parts_[k] > parts_[k - 1]) throw ArgumentError("partition parts must be weakly decreasing");
    size_ += parts_[k];
  }
}

Partition Partition::conjugate() const {
  std::vector<int> out;
  for (int col = 1; col <= first(); ++col) {
    int count = 0;
    for (int p : parts_) count += (p >= col) ? 1 : 0;
    out.push_back(count);
  }
  return Partition(std::move(out));
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(parts_[k]);
  }
  return s + ")";
}

Partition Partition::parse(std::string_view text) {
  std::string body;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) body += c;
  }
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') throw ParseError("unbalanced parenthesis in partition '" + std::string(text) + "'");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<int> parts;
  if (body.empty() || body == "0") return Partition();
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw ParseError("bad partition '" + std::string(text) + "'");
    }
    if (item.size() > 6) throw ParseError("partition part too large in '" + std::string(text) + "'");
    parts.push_back(std::stoi(item));
  }
  try {
    return Partition(std::move(parts));
  } catch (const ArgumentError& e) {
    throw ParseError(std::string(e.what()) + " in '" + std::string(text) + "'");
  }
}

// ---- CycleType ----

CycleType::CycleType(Partition cycles) : cycles_(std::move(cycles)) {
  mult_.assign(cycles_.first() + 1, 0);
  for (int p : cycles_.parts()) ++mult_[p];
}

CycleType CycleType::identity(int n) { return CycleType(Partition(std::vector<int>(n, 1))); }

// ---- PaddedLabel / pad ----

Partition pad(const Partition& lambda, int n) {
  if (n < lambda.size() + lambda.first()) {
    throw PaddingError("V" + lambda.to_string() + "_" + std::to_string(n) + " needs n >= " +
                       std::to_string(lambda.size() + lambda.first()));
  }
  std::vector<int> parts{n - lambda.size()};
  parts.insert(parts.end(), lambda.parts().begin(), lambda.parts().end());
  if (parts.front() == 0) parts.erase(parts.begin());
  return Partition(std::move(parts));
}

Partition unpad(const Partition& padded) {
  if (padded.empty()) return Partition();
  return Partition(std::vector<int>(padded.parts().begin() + 1, padded.parts().end()));
}

Partition PaddedLabel::padded() const { return pad(lambda, n); }

std::string PaddedLabel::to_string() const {
  if (lambda.empty()) return "V(0)";
  return "V" + lambda.to_string();
}

// ---- enumeration and class sizes ----

const std::vector<Partition>& partitions_of(int n) { return level(n).partitions; }

std::size_t partition_index(const Partition& p) {
  const Level& lvl = level(p.size());
  return lvl.index.at(p);
}

Integer centralizer_order(const CycleType& mu) {
  Integer z = 1;
  for (int i = 1; i <= mu.partition().first(); ++i) {
    const int m = mu.m(i);
    if (m == 0) continue;
    z *= ipow(Integer(i), m) * factorial(m);
  }
  return z;
}

Integer class_size(const CycleType& mu) { return factorial(mu.n()) / centralizer_order(mu); }

// ---- characters ----

const std::vector<std::vector<std::int64_t>>& character_table(int n) {
  if (n < 0 || n > kMaxTableN) {
    throw ArgumentError("character tables are limited to 0 <= n <= " + std::to_string(kMaxTableN));
  }
  {
    std::shared_lock lock(g_mutex);
    if (n < static_cast<int>(g_levels.size()) && g_levels[n] && g_levels[n]->table) return *g_levels[n]->table;
  }
  std::unique_lock lock(g_mutex);
  for (int m = 0; m <= n; ++m) level_locked(m);
  for (int m = 0; m <= n; ++m) build_table_locked(m);
  return *g_levels[n]->table;
}

void install_character_table(int n, std::vector<std::vector<std::int64_t>> table) {
  if (n < 0 || n > kMaxTableN) throw ArgumentError("character table size out of range");
  std::unique_lock lock(g_mutex);
  Level& lvl = level_locked(n);
  if (lvl.table) return;
  const std::size_t p = lvl.partitions.size();
  if (table.size() != p) throw DataError("character table has the wrong number of rows");
  for (const auto& row : table) {
    if (row.size() != p) throw DataError("character table has the wrong number of columns");
  }
  lvl.table = std::make_unique<std::vector<std::vector<std::int64_t>>>(std::move(table));
}

const std::vector<std::vector<std::int64_t>>& character_table(int n, Cache* cache) {
  if (cache == nullptr) return character_table(n);
  {
    std::shared_lock lock(g_mutex);
    if (n < static_cast<int>(g_levels.size()) && g_levels[n] && g_levels[n]->table) return *g_levels[n]->table;
  }
  const std::string key = "n" + std::to_string(n);
  auto loaded = cache->load("sn_chartable", key);
  if (loaded.status == Cache::Status::hit) {
    try {
      std::vector<std::vector<std::int64_t>> table;
      for (const auto& row : loaded.payload.at("rows")) {
        std::vector<std::int64_t> values;
        for (const auto& cell : row) values.push_back(std::stoll(cell.get<std::string>()));
        table.push_back(std::move(values));
      }
      if (loaded.payload.at("n").get<int>() != n) throw DataError("cached table is for another n");
      install_character_table(n, std::move(table));
      return character_table(n);
    } catch (const std::exception&) {
      // Malformed payload with a valid checksum: fall through and recompute.
    }
  }
  const auto& table = character_table(n);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table) {
    nlohmann::json cells = nlohmann::json::array();
    for (auto v : row) cells.push_back(std::to_string(v));
    rows.push_back(std::move(cells));
  }
  cache->store("sn_chartable", key, nlohmann::json{{"n", n}, {"rows", std::move(rows)}});
  return table;
}

std::int64_t mn_character(const Partition& lambda, const CycleType& mu) {
  if (lambda.size() != mu.n()) {
    throw ArgumentError("mn_character: |lambda| = " + std::to_string(lambda.size()) + " but mu has size " +
                        std::to_string(mu.n()));
  }
  const auto& table = character_table(lambda.size());
  return table[partition_index(lambda)][partition_index(mu.partition())];
}

Integer hook_dimension(const Partition& lambda) {
  Integer hooks = 1;
  const Partition conj = lambda.conjugate();
  for (std::size_t r = 0; r < lambda.length(); ++r) {
    for (int c = 0; c < lambda[r]; ++c) {
      const int arm = lambda[r] - c - 1;
      const int leg = conj[c] - static_cast<int>(r) - 1;
      hooks *= arm + leg + 1;
    }
  }
  return factorial(lambda.size()) / hooks;
}

Integer dim_irrep(const PaddedLabel& label) { return hook_dimension(label.padded()); }

// ---- ClassFunction ----

ClassFunction::ClassFunction(int n) : n_(n), values_(partitions_of(n).size(), Rational(0)) {}

ClassFunction::ClassFunction(int n, std::vector<Rational> values) : n_(n), values_(std::move(values)) {
  if (values_.size() != partitions_of(n).size()) {
    throw ArgumentError("class function on S_" + std::to_string(n) + " needs " +
                        std::to_string(partitions_of(n).size()) + " values");
  }
}

const Rational& ClassFunction::at(const CycleType& mu) const {
  if (mu.n() != n_) throw ArgumentError("class function evaluated on a class of the wrong size");
  return values_[partition_index(mu.partition())];
}

ClassFunction& ClassFunction::operator+=(const ClassFunction& other) {
  if (other.n_ != n_) throw ArgumentError("adding class functions on different symmetric groups");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

ClassFunction& ClassFunction::operator*=(const Rational& scale) {
  for (auto& v : values_) v *= scale;
  return *this;
}

ClassFunction operator*(const ClassFunction& a, const ClassFunction& b) {
  if (a.n_ != b.n_) throw ArgumentError("multiplying class functions on different symmetric groups");
  ClassFunction out(a.n_);
  for (std::size_t k = 0; k < a.values_.size(); ++k) out.values_[k] = a.values_[k] * b.values_[k];
  return out;
}

ClassFunction irreducible_character(const Partition& lambda) {
  const int n = lambda.size();
  const auto& table = character_table(n);
  const auto& row = table[partition_index(lambda)];
  std::vector<Rational> values(row.begin(), row.end());
  return ClassFunction(n, std::move(values));
}

Rational inner_product(const ClassFunction& f, const ClassFunction& g) {
  if (f.n() != g.n()) {
    throw ArgumentError("inner product of class functions on S_" + std::to_string(f.n()) + " and S_" +
                        std::to_string(g.n()));
  }
  const auto& parts = partitions_of(f.n());
  Rational sum = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (f[k] == 0 || g[k] == 0) continue;
    sum += Rational(class_size(CycleType(parts[k]))) * f[k] * g[k];
  }
  sum /= Rational(factorial(f.n()));
  return sum;
}

// ---- decomposition ----

std::vector<PaddedLabel> Decomposition::labels() const {
  std::vector<PaddedLabel> out;
  for (const auto& [lambda, mult] : multiplicities) out.push_back(PaddedLabel{lambda, n});
  return out;
}

Integer Decomposition::dimension() const {
  Integer total = 0;
  for (const auto& [lambda, mult] : multiplicities) total += mult * dim_irrep(PaddedLabel{lambda, n});
  return total;
}

std::string Decomposition::to_string() const {
  if (multiplicities.empty()) return "0";
  std::string s;
  for (const auto& [lambda, mult] : multiplicities) {
    if (!s.empty()) s += " + ";
    s += PaddedLabel{lambda, n}.to_string();
    if (mult != 1) s += "^" + repstab::to_string(mult);
  }
  return s;
}

Decomposition decompose(const ClassFunction& f) {
  const int n = f.n();
  const auto& parts = partitions_of(n);
  const auto& table = character_table(n);
  std::vector<Integer> sizes;
  sizes.reserve(parts.size());
  for (const auto& mu : parts) sizes.push_back(class_size(CycleType(mu)));
  const Integer order = factorial(n);

  Decomposition out;
  out.n = n;
  for (std::size_t r = 0; r < parts.size(); ++r) {
    Rational sum = 0;
    for (std::size_t c = 0; c < parts.size(); ++c) {
      if (f[c] == 0 || table[r][c] == 0) continue;
      sum += Rational(sizes[c] * table[r][c]) * f[c];
    }
    sum /= Rational(order);
    if (!is_integer(sum) || sum < 0) {
      throw NotACharacterError(PaddedLabel{unpad(parts[r]), n}.to_string(), repstab::to_string(sum));
    }
    if (sum != 0) out.multiplicities.emplace(unpad(parts[r]), sum.get_num());
  }

  if (character_of(out) != f) throw NotACharacterError("reconstruction", "mismatch");
  return out;
}

ClassFunction character_of(const Decomposition& d) {
  const auto& table = character_table(d.n);
  ClassFunction out(d.n);
  for (const auto& [lambda, mult] : d.multiplicities) {
    const auto& row = table[partition_index(pad(lambda, d.n))];
    for (std::size_t c = 0; c < row.size(); ++c) out[c] += Rational(mult * row[c]);
  }
  return out;
}

bool same_multiplicities(const Decomposition& a, const Decomposition& b) {
  return a.multiplicities == b.multiplicities;
}

}  // namespace repstab::symcore
