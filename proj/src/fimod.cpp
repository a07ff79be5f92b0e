#include "repstab/fimod.hpp"

#include "repstab/errors.hpp"
#include "repstab/osconf.hpp"
#include "repstab/parallel.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

namespace repstab::fimod {

namespace {

using Matrix = std::vector<SparseVec>;  // columns

Injection representative_of(const Partition& mu) { return Injection::permutation(osconf::representative(mu)); }

void check_level(const FIModule& v, int n) {
  if (n < 0 || n > v.n_max()) {
    throw ArgumentError(v.name() + ": level " + std::to_string(n) + " outside truncation 0.." +
                        std::to_string(v.n_max()));
  }
}

void check_vector(const FIModule& v, int n, const SparseVec& x) {
  check_level(v, n);
  if (!x.empty() && x.back().first >= v.dim(n)) {
    throw ArgumentError(v.name() + ": vector index out of range at level " + std::to_string(n));
  }
}

Matrix matrix_of(const FIModule& v, const Injection& f) {
  Matrix m;
  const std::size_t d = v.dim(f.m);
  m.reserve(d);
  for (std::size_t k = 0; k < d; ++k) m.push_back(v.apply_basis(f, k));
  return m;
}

SparseVec apply_matrix(const Matrix& m, const SparseVec& x) {
  SparseVec out;
  for (const auto& [k, c] : x) out = linalg::add_scaled(out, m.at(k), c);
  return out;
}

std::size_t checked_dim(const Integer& d, const std::string& what) {
  if (d > 50'000'000) throw CostGuardError(what + ": dimension " + to_string(d) + " too large");
  return d.get_ui();
}

// ---- homogeneous polynomials ----

class PolyHomogeneous : public FIModule {
 public:
  PolyHomogeneous(int d, int n_max) : d_(d), n_max_(n_max) {
    if (d < 0) throw ArgumentError("poly: negative degree");
    if (n_max < 0) throw ArgumentError("poly: negative n_max");
    dims_.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
      Integer count = n == 0 ? Integer(d == 0 ? 1 : 0) : binomial(Integer(d + n - 1), static_cast<unsigned>(n - 1));
      dims_[n] = checked_dim(count, name());
    }
    // cum_[j][s][t] = number of monomials in j-1 variables of degree s - t' summed over t' < t.
    cum_.assign(n_max + 1, std::vector<std::vector<std::size_t>>(d + 1, std::vector<std::size_t>(d + 2, 0)));
    for (int j = 2; j <= n_max; ++j) {
      for (int s = 0; s <= d; ++s) {
        for (int t = 0; t <= s; ++t) cum_[j][s][t + 1] = cum_[j][s][t] + count(j - 1, s - t);
      }
    }
  }

  std::string name() const override { return "poly(" + std::to_string(d_) + ")"; }
  int n_max() const override { return n_max_; }
  std::size_t dim(int n) const override { return dims_.at(n); }

  std::size_t rank(const std::vector<int>& e) const {
    const int n = static_cast<int>(e.size());
    std::size_t r = 0;
    int s = d_;
    for (int j = n; j >= 2; --j) {
      r += cum_[j][s][e[j - 1]];
      s -= e[j - 1];
    }
    return r;
  }

  std::vector<int> unrank(int n, std::size_t r) const {
    std::vector<int> e(n, 0);
    int s = d_;
    for (int j = n; j >= 2; --j) {
      int t = 0;
      while (t < s && cum_[j][s][t + 1] <= r) ++t;
      r -= cum_[j][s][t];
      e[j - 1] = t;
      s -= t;
    }
    if (n >= 1) e[0] = s;
    return e;
  }

  SparseVec apply(const Injection& f, const SparseVec& v) const override {
    check_vector(*this, f.m, v);
    check_level(*this, f.n);
    std::vector<std::pair<std::size_t, Rational>> out;
    for (const auto& [k, c] : v) out.emplace_back(image(f, unrank(f.m, k)), c);
    return linalg::from_entries(std::move(out));
  }

  bool monomial_images(const Injection& f, std::vector<std::pair<std::size_t, int>>& out) const override {
    check_level(*this, f.m);
    check_level(*this, f.n);
    out.clear();
    out.reserve(dims_[f.m]);
    std::vector<int> e(f.m, 0);
    // Enumerate exponent vectors in rank order: e_m slowest, e_2 fastest.
    std::function<void(int, int)> rec = [&](int j, int s) {
      if (j <= 1) {
        if (f.m >= 1) {
          e[0] = s;
        } else if (s != 0) {
          return;
        }
        out.emplace_back(image(f, e), 1);
        return;
      }
      for (int t = 0; t <= s; ++t) {
        e[j - 1] = t;
        rec(j - 1, s - t);
      }
    };
    rec(f.m, d_);
    return true;
  }

  std::string basis_label(int n, std::size_t k) const override {
    const auto e = unrank(n, k);
    std::string s;
    for (int j = 0; j < n; ++j) {
      if (e[j] == 0) continue;
      if (!s.empty()) s += "*";
      s += "x" + std::to_string(j + 1);
      if (e[j] > 1) s += "^" + std::to_string(e[j]);
    }
    return s.empty() ? "1" : s;
  }

  std::size_t index_of(const std::vector<int>& e) const { return rank(e); }

 private:
  static std::size_t count(int vars, int s) {
    if (vars == 0) return s == 0 ? 1 : 0;
    return binomial(Integer(s + vars - 1), static_cast<unsigned>(vars - 1)).get_ui();
  }

  std::size_t image(const Injection& f, const std::vector<int>& e) const {
    std::vector<int> g(f.n, 0);
    for (int j = 0; j < f.m; ++j) g[f.images[j] - 1] = e[j];
    return rank(g);
  }

  int d_;
  int n_max_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<std::vector<std::size_t>>> cum_;
};

// ---- configuration space cohomology ----

class ConfCohomology : public FIModule {
 public:
  ConfCohomology(int i, int n_max) : i_(i), n_max_(n_max) {
    if (i < 0) throw ArgumentError("conf: negative degree");
    if (n_max < 0 || n_max > osconf::kMaxPoints) throw ArgumentError("conf: n_max out of range");
    levels_.resize(n_max + 1);
  }

  std::string name() const override { return "conf(" + std::to_string(i_) + ")"; }
  int n_max() const override { return n_max_; }
  std::size_t dim(int n) const override { return level(n).basis.size(); }

  SparseVec apply(const Injection& f, const SparseVec& v) const override {
    check_vector(*this, f.m, v);
    check_level(*this, f.n);
    const Level& src = level(f.m);
    const Level& dst = level(f.n);
    std::map<osconf::OSMonomial, Rational> words;
    for (const auto& [k, c] : v) {
      osconf::OSMonomial w;
      for (const auto& g : src.basis[k]) w.emplace_back(f.images[g.i - 1], f.images[g.j - 1]);
      words[w] += c;
    }
    const osconf::OSElement x = osconf::straighten_all(words, f.n, i_);
    std::vector<std::pair<std::size_t, Rational>> out;
    for (const auto& [m, c] : x.terms) out.emplace_back(dst.index.at(m), c);
    return linalg::from_entries(std::move(out));
  }

  std::string basis_label(int n, std::size_t k) const override { return osconf::to_string(level(n).basis.at(k)); }

 private:
  struct Level {
    bool ready = false;
    std::vector<osconf::OSMonomial> basis;
    std::map<osconf::OSMonomial, std::size_t> index;
  };

  const Level& level(int n) const {
    check_level(*this, n);
    std::lock_guard lock(mutex_);
    Level& l = levels_[n];
    if (!l.ready) {
      const bool empty = (n == 0 && i_ > 0) || (n >= 1 && i_ >= n);
      if (!empty) l.basis = osconf::nbc_basis(n, i_);
      for (std::size_t k = 0; k < l.basis.size(); ++k) l.index[l.basis[k]] = k;
      l.ready = true;
    }
    return l;
  }

  int i_;
  int n_max_;
  mutable std::mutex mutex_;
  mutable std::vector<Level> levels_;
};

// ---- irreducible sequences via Specht modules ----

class IrrepSequence : public FIModule {
 public:
  IrrepSequence(Partition lambda, int n_max) : lambda_(std::move(lambda)), n_max_(n_max) {
    threshold_ = lambda_.size() + lambda_.first();
    if (n_max < threshold_) {
      throw ArgumentError("irrep" + lambda_.to_string() + ": n_max " + std::to_string(n_max) +
                          " below the minimal n " + std::to_string(threshold_));
    }
    if (n_max > 20 || lambda_.length() + 1 > 7) throw ArgumentError("irrep: shape too large for the tabloid encoding");
    levels_.resize(n_max + 1);
  }

  std::string name() const override { return "irrep" + lambda_.to_string(); }
  int n_max() const override { return n_max_; }
  std::size_t dim(int n) const override { return level(n).tableaux.size(); }

  SparseVec apply(const Injection& f, const SparseVec& v) const override {
    check_vector(*this, f.m, v);
    check_level(*this, f.n);
    if (v.empty()) return {};
    const Level& src = level(f.m);
    const Level& dst = level(f.n);
    std::vector<bool> hit(f.n + 1, false);
    for (int x : f.images) hit[x] = true;
    SparseVec image;
    for (const auto& [k, c] : v) {
      Tableau t = src.tableaux[k];
      for (auto& row : t) {
        for (auto& x : row) x = f.images[x - 1];
      }
      if (t.empty()) t.emplace_back();
      for (int x = 1; x <= f.n; ++x) {
        if (!hit[x]) t[0].push_back(x);
      }
      image = linalg::add_scaled(image, polytabloid(t), c);
    }
    return dst.solver.express(image);
  }

  std::string basis_label(int n, std::size_t k) const override {
    const Tableau& t = level(n).tableaux.at(k);
    std::string s = "[";
    for (std::size_t r = 0; r < t.size(); ++r) {
      s += r ? ",[" : "[";
      for (std::size_t c = 0; c < t[r].size(); ++c) s += (c ? "," : "") + std::to_string(t[r][c]);
      s += "]";
    }
    return s + "]";
  }

 private:
  using Tableau = std::vector<std::vector<int>>;

  struct Level {
    bool ready = false;
    std::vector<Tableau> tableaux;
    linalg::CoordinateSolver solver;
  };

  // Tabloid code: 3 bits per point holding its row.
  static SparseVec polytabloid(const Tableau& t) {
    std::vector<std::vector<int>> columns;
    for (const auto& row : t) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (columns.size() <= c) columns.emplace_back();
        columns[c].push_back(row[c]);
      }
    }
    std::vector<std::pair<std::size_t, Rational>> terms;
    std::vector<std::vector<int>> perms(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      perms[c].resize(columns[c].size());
      std::iota(perms[c].begin(), perms[c].end(), 0);
    }
    // Odometer over the product of column symmetric groups.
    for (;;) {
      std::size_t code = 0;
      int sign = 1;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        const auto& p = perms[c];
        for (std::size_t r = 0; r < p.size(); ++r) {
          code |= static_cast<std::size_t>(p[r]) << (3 * (columns[c][r] - 1));
          for (std::size_t s = r + 1; s < p.size(); ++s) {
            if (p[r] > p[s]) sign = -sign;
          }
        }
      }
      terms.emplace_back(code, Rational(sign));
      std::size_t c = 0;
      while (c < columns.size() && !std::next_permutation(perms[c].begin(), perms[c].end())) ++c;
      if (c == columns.size()) break;
    }
    return linalg::from_entries(std::move(terms));
  }

  static void standard_tableaux(const Partition& shape, int n, Tableau& current, int next, std::vector<Tableau>& out) {
    if (next > n) {
      out.push_back(current);
      return;
    }
    for (std::size_t r = 0; r < shape.length(); ++r) {
      const std::size_t len = current[r].size();
      if (static_cast<int>(len) >= shape[r]) continue;
      if (r > 0 && current[r - 1].size() <= len) continue;
      current[r].push_back(next);
      standard_tableaux(shape, n, current, next + 1, out);
      current[r].pop_back();
    }
  }

  const Level& level(int n) const {
    check_level(*this, n);
    std::lock_guard lock(mutex_);
    Level& l = levels_[n];
    if (!l.ready) {
      if (n >= threshold_) {
        const Partition shape = symcore::pad(lambda_, n);
        Tableau current(shape.length());
        standard_tableaux(shape, n, current, 1, l.tableaux);
        std::vector<SparseVec> vectors;
        for (const auto& t : l.tableaux) vectors.push_back(polytabloid(t));
        l.solver = linalg::CoordinateSolver(vectors);
      }
      l.ready = true;
    }
    return l;
  }

  Partition lambda_;
  int n_max_;
  int threshold_;
  mutable std::mutex mutex_;
  mutable std::vector<Level> levels_;
};

// ---- tensor product ----

class Tensor : public FIModule {
 public:
  Tensor(FIModulePtr a, FIModulePtr b) : a_(std::move(a)), b_(std::move(b)) {}

  std::string name() const override { return "tensor(" + a_->name() + "," + b_->name() + ")"; }
  int n_max() const override { return std::min(a_->n_max(), b_->n_max()); }
  std::size_t dim(int n) const override { return a_->dim(n) * b_->dim(n); }

  SparseVec apply(const Injection& f, const SparseVec& v) const override {
    check_vector(*this, f.m, v);
    check_level(*this, f.n);
    const std::size_t db_src = b_->dim(f.m), db_dst = b_->dim(f.n);
    std::map<std::size_t, SparseVec> a_img, b_img;
    std::vector<std::pair<std::size_t, Rational>> out;
    for (const auto& [k, c] : v) {
      const std::size_t a = k / db_src, b = k % db_src;
      auto ia = a_img.find(a);
      if (ia == a_img.end()) ia = a_img.emplace(a, a_->apply_basis(f, a)).first;
      auto ib = b_img.find(b);
      if (ib == b_img.end()) ib = b_img.emplace(b, b_->apply_basis(f, b)).first;
      for (const auto& [x, cx] : ia->second) {
        for (const auto& [y, cy] : ib->second) out.emplace_back(x * db_dst + y, c * cx * cy);
      }
    }
    return linalg::from_entries(std::move(out));
  }

  std::string basis_label(int n, std::size_t k) const override {
    const std::size_t db = b_->dim(n);
    return a_->basis_label(n, k / db) + "(x)" + b_->basis_label(n, k % db);
  }

 private:
  FIModulePtr a_, b_;
};

// ---- exterior algebra ----

class ExteriorAlgebra : public FIModule {
 public:
  explicit ExteriorAlgebra(int n_max) : n_max_(n_max) {
    if (n_max < 0 || n_max > 24) throw ArgumentError("exterior: n_max out of range");
  }

  std::string name() const override { return "exterior"; }
  int n_max() const override { return n_max_; }
  std::size_t dim(int n) const override { return std::size_t{1} << n; }

  SparseVec apply(const Injection& f, const SparseVec& v) const override {
    check_vector(*this, f.m, v);
    check_level(*this, f.n);
    std::vector<std::pair<std::size_t, Rational>> out;
    for (const auto& [k, c] : v) {
      const auto [index, sign] = image(f, k);
      out.emplace_back(index, sign * c);
    }
    return linalg::from_entries(std::move(out));
  }

  bool monomial_images(const Injection& f, std::vector<std::pair<std::size_t, int>>& out) const override {
    check_level(*this, f.m);
    check_level(*this, f.n);
    out.clear();
    for (std::size_t k = 0; k < dim(f.m); ++k) out.push_back(image(f, k));
    return true;
  }

  std::string basis_label(int n, std::size_t k) const override {
    std::string s;
    for (int x = 1; x <= n; ++x) {
      if (k >> (x - 1) & 1u) s += (s.empty() ? "e" : "^e") + std::to_string(x);
    }
    return s.empty() ? "1" : s;
  }

 private:
  static std::pair<std::size_t, int> image(const Injection& f, std::size_t mask) {
    std::vector<int> seq;
    for (int x = 1; x <= f.m; ++x) {
      if (mask >> (x - 1) & 1u) seq.push_back(f.images[x - 1]);
    }
    int sign = 1;
    std::size_t out = 0;
    for (std::size_t a = 0; a < seq.size(); ++a) {
      out |= std::size_t{1} << (seq[a] - 1);
      for (std::size_t b = a + 1; b < seq.size(); ++b) {
        if (seq[a] > seq[b]) sign = -sign;
      }
    }
    return {out, sign};
  }

  int n_max_;
};

// ---- kernels ----

class Kernel : public FIModule {
 public:
  explicit Kernel(FIMap map) : map_(std::move(map)) {
    if (map_.source->n_max() != map_.target->n_max()) throw ArgumentError("kernel: truncations differ");
    levels_.resize(map_.source->n_max() + 1);
    check_naturality();
  }

  std::string name() const override { return "ker(" + map_.name + ")"; }
  int n_max() const override { return map_.source->n_max(); }
  std::size_t dim(int n) const override { return level(n).basis.size(); }

  SparseVec apply(const Injection& f, const SparseVec& v) const override {
    check_vector(*this, f.m, v);
    check_level(*this, f.n);
    const Level& src = level(f.m);
    SparseVec x;
    for (const auto& [k, c] : v) x = linalg::add_scaled(x, src.basis[k], c);
    const SparseVec y = map_.source->apply(f, x);
    auto coords = level(f.n).solver.try_express(y);
    if (!coords) throw DataError(name() + ": image of a kernel vector left the kernel (map not natural)");
    return *coords;
  }

 private:
  struct Level {
    bool ready = false;
    std::vector<SparseVec> basis;
    linalg::CoordinateSolver solver;
  };

  void check_naturality() const {
    const int top = std::min(n_max(), 5);
    for (int n = 1; n <= top; ++n) {
      std::vector<Injection> maps;
      for (int t = 1; t <= n; ++t) maps.push_back(Injection::skip(n, t));
      for (int k = 1; k < n; ++k) maps.push_back(Injection::transposition(n, k));
      for (const auto& f : maps) {
        for (std::size_t k = 0; k < map_.source->dim(f.m); ++k) {
          const SparseVec lhs = map_.at(f.n, map_.source->apply_basis(f, k));
          const SparseVec rhs = map_.target->apply(f, map_.at(f.m, linalg::unit(k)));
          if (lhs != rhs) throw DataError("map " + map_.name + " is not natural at n=" + std::to_string(n));
        }
      }
    }
  }

  const Level& level(int n) const {
    check_level(*this, n);
    std::lock_guard lock(mutex_);
    Level& l = levels_[n];
    if (!l.ready) {
      const std::size_t ds = map_.source->dim(n), dt = map_.target->dim(n);
      linalg::DenseMatrix m(dt, std::vector<Rational>(ds, 0));
      for (std::size_t k = 0; k < ds; ++k) {
        for (const auto& [row, c] : map_.at(n, linalg::unit(k))) m.at(row)[k] = c;
      }
      for (const auto& z : linalg::nullspace(m, ds)) {
        std::vector<std::pair<std::size_t, Rational>> entries;
        for (std::size_t k = 0; k < z.size(); ++k) entries.emplace_back(k, z[k]);
        l.basis.push_back(linalg::from_entries(std::move(entries)));
      }
      l.solver = linalg::CoordinateSolver(l.basis);
      l.ready = true;
    }
    return l;
  }

  FIMap map_;
  mutable std::mutex mutex_;
  mutable std::vector<Level> levels_;
};

// ---- explicit data ----

class Explicit : public FIModule {
 public:
  Explicit(std::string name, std::vector<std::size_t> dims, std::vector<std::vector<Matrix>> skips,
           std::vector<std::vector<Matrix>> swaps)
      : name_(std::move(name)), dims_(std::move(dims)), skips_(std::move(skips)), swaps_(std::move(swaps)) {}

  std::string name() const override { return name_; }
  int n_max() const override { return static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int n) const override { return dims_.at(n); }

  SparseVec apply(const Injection& f, const SparseVec& v) const override {
    check_vector(*this, f.m, v);
    check_level(*this, f.n);
    // f = sigma o inc: inc order-preserving onto the image of f, then a permutation.
    std::vector<bool> hit(f.n + 1, false);
    for (int x : f.images) hit[x] = true;
    SparseVec x = v;
    int level = f.m;
    for (int t = 1; t <= f.n; ++t) {
      if (hit[t]) continue;
      ++level;
      x = apply_matrix(skips_[level][t - 1], x);
    }
    std::vector<int> sorted = f.images;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> sigma(f.n);
    std::iota(sigma.begin(), sigma.end(), 1);
    for (int k = 0; k < f.m; ++k) sigma[sorted[k] - 1] = f.images[k];
    // Peel adjacent transpositions off the right: sigma = s_{k_L} ... s_{k_0}.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int k = 1; k < f.n; ++k) {
        if (sigma[k - 1] > sigma[k]) {
          std::swap(sigma[k - 1], sigma[k]);
          x = apply_matrix(swaps_[f.n][k - 1], x);
          changed = true;
        }
      }
    }
    return x;
  }

 private:
  std::string name_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Matrix>> skips_;
  std::vector<std::vector<Matrix>> swaps_;
};

nlohmann::json matrix_json(const Matrix& m, std::size_t rows) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t col = 0; col < m.size(); ++col) {
    for (const auto& [row, c] : m[col]) entries.push_back({row, col, to_string(c)});
  }
  return {{"rows", rows}, {"cols", m.size()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (j.at("rows").get<std::size_t>() != rows || j.at("cols").get<std::size_t>() != cols) {
    throw DataError(where + ": matrix shape mismatch");
  }
  std::vector<std::vector<std::pair<std::size_t, Rational>>> columns(cols);
  for (const auto& e : j.at("entries")) {
    const std::size_t r = e.at(0).get<std::size_t>(), c = e.at(1).get<std::size_t>();
    if (r >= rows || c >= cols) throw DataError(where + ": entry out of range");
    columns[c].emplace_back(r, parse_rational(e.at(2).get<std::string>()));
  }
  Matrix m;
  for (auto& col : columns) m.push_back(linalg::from_entries(std::move(col)));
  return m;
}

std::size_t generator_count(const Decomposition& d) {
  std::size_t best = 0;
  for (const auto& [lambda, mult] : d.multiplicities) {
    const Integer dimension = symcore::dim_irrep(symcore::PaddedLabel{lambda, d.n});
    Integer need = (mult + dimension - 1) / dimension;
    best = std::max<std::size_t>(best, need.get_ui());
  }
  return best;
}

std::string split_args(const std::string& text, std::string& head) {
  const auto open = text.find('(');
  if (open == std::string::npos) {
    head = text;
    return "";
  }
  if (text.back() != ')') throw ArgumentError("builtin: unbalanced parentheses in " + text);
  head = text.substr(0, open);
  return text.substr(open + 1, text.size() - open - 2);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

int parse_small_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ArgumentError("builtin: bad parameter for " + what + ": '" + s + "'");
  }
}

}  // namespace

// ---- Injection ----

Injection::Injection(int n_, std::vector<int> images_) : m(static_cast<int>(images_.size())), n(n_), images(std::move(images_)) {
  if (n < 0) throw ArgumentError("injection: negative codomain");
  std::vector<bool> seen(n + 1, false);
  for (int x : images) {
    if (x < 1 || x > n || seen[x]) throw ArgumentError("injection: images must be distinct values in 1..n");
    seen[x] = true;
  }
}

Injection Injection::identity(int n) { return standard(n, n); }

Injection Injection::standard(int m, int n) {
  if (m < 0 || m > n) throw ArgumentError("injection: need 0 <= m <= n");
  std::vector<int> img(m);
  std::iota(img.begin(), img.end(), 1);
  return Injection(n, std::move(img));
}

Injection Injection::skip(int n, int t) {
  if (n < 1 || t < 1 || t > n) throw ArgumentError("injection: skip needs 1 <= t <= n");
  std::vector<int> img;
  for (int x = 1; x <= n; ++x) {
    if (x != t) img.push_back(x);
  }
  return Injection(n, std::move(img));
}

Injection Injection::permutation(std::vector<int> one_line) {
  const int n = static_cast<int>(one_line.size());
  return Injection(n, std::move(one_line));
}

Injection Injection::transposition(int n, int k) {
  if (k < 1 || k >= n) throw ArgumentError("injection: transposition needs 1 <= k < n");
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::swap(img[k - 1], img[k]);
  return Injection(n, std::move(img));
}

Injection compose(const Injection& g, const Injection& f) {
  if (f.n != g.m) throw ArgumentError("injection: cannot compose, codomain and domain differ");
  std::vector<int> img(f.m);
  for (int k = 0; k < f.m; ++k) img[k] = g.images[f.images[k] - 1];
  return Injection(g.n, std::move(img));
}

std::vector<Injection> all_injections(int m, int n) {
  std::vector<Injection> out;
  if (m < 0 || m > n) return out;
  std::vector<int> img(m);
  std::vector<bool> used(n + 1, false);
  std::function<void(int)> rec = [&](int k) {
    if (k == m) {
      out.emplace_back(n, img);
      return;
    }
    for (int x = 1; x <= n; ++x) {
      if (used[x]) continue;
      used[x] = true;
      img[k] = x;
      rec(k + 1);
      used[x] = false;
    }
  };
  rec(0);
  return out;
}

// ---- FIModule ----

std::string FIModule::basis_label(int, std::size_t k) const { return "b" + std::to_string(k); }

bool FIModule::monomial_images(const Injection&, std::vector<std::pair<std::size_t, int>>&) const { return false; }

ClassFunction FIModule::character(int n) const {
  check_level(*this, n);
  const auto& parts = symcore::partitions_of(n);
  std::vector<Rational> values;
  std::vector<std::pair<std::size_t, int>> images;
  for (const auto& mu : parts) {
    const Injection sigma = representative_of(mu);
    Rational tr = 0;
    if (monomial_images(sigma, images)) {
      for (std::size_t k = 0; k < images.size(); ++k) {
        if (images[k].first == k) tr += images[k].second;
      }
    } else {
      for (std::size_t k = 0; k < dim(n); ++k) tr += linalg::coefficient(apply_basis(sigma, k), k);
    }
    values.push_back(tr);
  }
  return ClassFunction(n, std::move(values));
}

// ---- built-ins ----

FIModulePtr poly_homogeneous(int d, int n_max) { return std::make_shared<PolyHomogeneous>(d, n_max); }
FIModulePtr conf_cohomology(int i, int n_max) { return std::make_shared<ConfCohomology>(i, n_max); }
FIModulePtr irrep_sequence(const Partition& lambda, int n_max) {
  return std::make_shared<IrrepSequence>(lambda, n_max);
}
FIModulePtr tensor(FIModulePtr a, FIModulePtr b) { return std::make_shared<Tensor>(std::move(a), std::move(b)); }
FIModulePtr exterior_algebra(int n_max) { return std::make_shared<ExteriorAlgebra>(n_max); }

FIMap augmentation(int n_max) {
  auto source = std::make_shared<PolyHomogeneous>(1, n_max);
  auto target = std::make_shared<PolyHomogeneous>(0, n_max);
  FIMap map{source, target, "poly(1)->poly(0)", nullptr};
  map.at = [](int, const SparseVec& v) {
    Rational total = 0;
    for (const auto& [k, c] : v) total += c;
    return total == 0 ? SparseVec{} : SparseVec{{0, total}};
  };
  return map;
}

FIMap conf1_to_linear(int n_max) {
  auto source = std::make_shared<ConfCohomology>(1, n_max);
  auto target = std::make_shared<PolyHomogeneous>(1, n_max);
  FIMap map{source, target, "conf(1)->poly(1)", nullptr};
  map.at = [target](int n, const SparseVec& v) {
    std::vector<std::pair<std::size_t, Rational>> out;
    const auto basis = n >= 2 ? osconf::nbc_basis(n, 1) : std::vector<osconf::OSMonomial>{};
    for (const auto& [k, c] : v) {
      const auto& g = basis.at(k).front();
      for (int x : {g.i, g.j}) {
        std::vector<int> e(n, 0);
        e[x - 1] = 1;
        out.emplace_back(target->index_of(e), c);
      }
    }
    return linalg::from_entries(std::move(out));
  };
  return map;
}

FIModulePtr kernel(const FIMap& map) { return std::make_shared<Kernel>(map); }

FIModulePtr builtin(const std::string& spec_text, int n_max) {
  const std::string spec = trim(spec_text);
  std::string head;
  const std::string args = split_args(spec, head);
  head = trim(head);
  if (head == "poly" || head == "poly_homogeneous") return poly_homogeneous(parse_small_int(trim(args), head), n_max);
  if (head == "conf" || head == "conf_cohomology") return conf_cohomology(parse_small_int(trim(args), head), n_max);
  if (head == "irrep" || head == "irrep_sequence") {
    try {
      return irrep_sequence(Partition::parse(trim(args)), n_max);
    } catch (const ParseError& e) {
      throw ArgumentError(std::string("builtin: ") + e.what());
    }
  }
  if ((head == "exterior" || head == "exterior_algebra") && trim(args).empty()) return exterior_algebra(n_max);
  if (head == "tensor") {
    int depth = 0;
    for (std::size_t k = 0; k < args.size(); ++k) {
      if (args[k] == '(') ++depth;
      if (args[k] == ')') --depth;
      if (args[k] == ',' && depth == 0) {
        return tensor(builtin(args.substr(0, k), n_max), builtin(args.substr(k + 1), n_max));
      }
    }
    throw ArgumentError("builtin: tensor needs two arguments");
  }
  throw ArgumentError("builtin: unknown module '" + spec + "'");
}

// ---- JSON ----

nlohmann::json export_json(const FIModule& v) {
  nlohmann::json dims = nlohmann::json::array();
  nlohmann::json levels = nlohmann::json::array();
  for (int n = 0; n <= v.n_max(); ++n) {
    dims.push_back(v.dim(n));
    nlohmann::json skips = nlohmann::json::array(), swaps = nlohmann::json::array();
    for (int t = 1; t <= n; ++t) skips.push_back(matrix_json(matrix_of(v, Injection::skip(n, t)), v.dim(n)));
    for (int k = 1; k < n; ++k) swaps.push_back(matrix_json(matrix_of(v, Injection::transposition(n, k)), v.dim(n)));
    levels.push_back({{"n", n}, {"skips", std::move(skips)}, {"swaps", std::move(swaps)}});
  }
  return {{"schema_version", kFIModuleSchema}, {"name", v.name()}, {"n_max", v.n_max()},
          {"dims", std::move(dims)}, {"levels", std::move(levels)}};
}

FIModulePtr import_json(const nlohmann::json& doc) {
  std::shared_ptr<Explicit> module;
  try {
    if (doc.at("schema_version").get<int>() != kFIModuleSchema) throw DataError("fimod json: unsupported schema_version");
    const int n_max = doc.at("n_max").get<int>();
    if (n_max < 0) throw DataError("fimod json: negative n_max");
    const auto dims = doc.at("dims").get<std::vector<std::size_t>>();
    if (static_cast<int>(dims.size()) != n_max + 1) throw DataError("fimod json: dims has the wrong length");
    const auto& levels = doc.at("levels");
    if (static_cast<int>(levels.size()) != n_max + 1) throw DataError("fimod json: levels has the wrong length");
    std::vector<std::vector<Matrix>> skips(n_max + 1), swaps(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
      const auto& level = levels.at(n);
      if (level.at("n").get<int>() != n) throw DataError("fimod json: levels out of order");
      const std::string where = "fimod json level " + std::to_string(n);
      if (static_cast<int>(level.at("skips").size()) != n || static_cast<int>(level.at("swaps").size()) != std::max(n - 1, 0)) {
        throw DataError(where + ": wrong number of maps");
      }
      for (int t = 1; t <= n; ++t) skips[n].push_back(matrix_from_json(level["skips"][t - 1], dims[n], dims[n - 1], where));
      for (int k = 1; k < n; ++k) swaps[n].push_back(matrix_from_json(level["swaps"][k - 1], dims[n], dims[n], where));
    }
    module = std::make_shared<Explicit>(doc.value("name", std::string("explicit")), dims, std::move(skips), std::move(swaps));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("fimod json: ") + e.what());
  } catch (const ParseError& e) {
    throw DataError(std::string("fimod json: ") + e.what());
  }
  check_functoriality(*module, 4, 200);
  return module;
}

// ---- functoriality ----

FunctorialityReport check_functoriality(const FIModule& v, int exhaustive_up_to, int random_samples, unsigned seed) {
  FunctorialityReport report;
  std::map<std::pair<int, std::vector<int>>, Matrix> memo;
  auto mat = [&](const Injection& f) -> const Matrix& {
    auto key = std::make_pair(f.n, f.images);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(std::move(key), matrix_of(v, f)).first;
    return it->second;
  };
  auto fail = [&](const Injection& g, const Injection& f) {
    std::ostringstream os;
    os << v.name() << ": V(g o f) != V(g) V(f) for f:" << f.m << "->" << f.n << " and g:" << g.m << "->" << g.n;
    throw DataError(os.str());
  };
  auto check_pair = [&](const Injection& g, const Injection& f) {
    const Matrix& mf = mat(f);
    const Matrix& mg = mat(g);
    const Matrix& mgf = mat(compose(g, f));
    for (std::size_t k = 0; k < mf.size(); ++k) {
      if (apply_matrix(mg, mf[k]) != mgf[k]) fail(g, f);
    }
    ++report.pairs_checked;
  };
  for (int n = 0; n <= v.n_max(); ++n) {
    const Matrix& id = mat(Injection::identity(n));
    for (std::size_t k = 0; k < id.size(); ++k) {
      if (id[k] != linalg::unit(k)) throw DataError(v.name() + ": V(id) is not the identity at n=" + std::to_string(n));
    }
    ++report.identities_checked;
  }
  const int top = std::min(exhaustive_up_to, v.n_max());
  for (int n = 0; n <= top; ++n) {
    for (int m = 0; m <= n; ++m) {
      const auto gs = all_injections(m, n);
      for (int l = 0; l <= m; ++l) {
        if (v.dim(l) == 0) continue;
        for (const auto& f : all_injections(l, m)) {
          for (const auto& g : gs) check_pair(g, f);
        }
      }
    }
  }
  std::mt19937 rng(seed);
  auto random_injection = [&](int m, int n) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(m);
    return Injection(n, pool);
  };
  for (int s = 0; s < random_samples && v.n_max() > top; ++s) {
    const int n = top + 1 + static_cast<int>(rng() % (v.n_max() - top));
    const int m = static_cast<int>(rng() % (n + 1));
    const int l = static_cast<int>(rng() % (m + 1));
    const Injection f = random_injection(l, m), g = random_injection(m, n);
    // Random pairs are not memoized: they rarely repeat.
    const std::size_t dl = v.dim(l);
    for (std::size_t k = 0; k < dl; ++k) {
      if (v.apply(g, v.apply_basis(f, k)) != v.apply_basis(compose(g, f), k)) fail(g, f);
    }
    ++report.pairs_checked;
  }
  return report;
}

// ---- generation profile ----

std::size_t GenerationProfile::total() const {
  return std::accumulate(new_generators.begin(), new_generators.end(), std::size_t{0});
}

int GenerationProfile::last_generator_degree() const {
  for (int n = static_cast<int>(new_generators.size()) - 1; n >= 0; --n) {
    if (new_generators[n]) return n;
  }
  return -1;
}

std::string GenerationProfile::to_string() const {
  std::ostringstream os;
  os << "n\tdim\tquotient_dim\tnew_generators\n";
  for (std::size_t n = 0; n < dims.size(); ++n) {
    os << n << "\t" << dims[n] << "\t" << quotient_dim[n] << "\t" << new_generators[n] << "\n";
  }
  return os.str();
}

GenerationProfile generation_profile(const FIModule& v) {
  GenerationProfile out;
  for (int n = 0; n <= v.n_max(); ++n) {
    const std::size_t d = v.dim(n);
    out.dims.push_back(d);
    const auto& parts = symcore::partitions_of(n);
    std::vector<Rational> values(parts.size(), 0);
    std::size_t qdim = 0;
    std::vector<std::pair<std::size_t, int>> images;
    if (n >= 1 && v.monomial_images(Injection::skip(n, 1), images)) {
      std::vector<bool> hit(d, false);
      for (int t = 1; t <= n; ++t) {
        v.monomial_images(Injection::skip(n, t), images);
        for (const auto& [k, sign] : images) {
          if (sign) hit[k] = true;
        }
      }
      for (int k = 1; k < n; ++k) {
        v.monomial_images(Injection::transposition(n, k), images);
        for (std::size_t x = 0; x < d; ++x) {
          if (hit[x] && images[x].second && !hit[images[x].first]) {
            throw DataError(v.name() + ": span of images is not S_n-stable at n=" + std::to_string(n));
          }
        }
      }
      qdim = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), false));
      if (qdim) {
        for (std::size_t c = 0; c < parts.size(); ++c) {
          v.monomial_images(representative_of(parts[c]), images);
          long tr = 0;
          for (std::size_t x = 0; x < d; ++x) {
            if (!hit[x] && images[x].first == x) tr += images[x].second;
          }
          values[c] = tr;
        }
      }
    } else {
      linalg::RowSpace span(d);
      std::vector<SparseVec> rows;
      if (n >= 1) {
        for (int t = 1; t <= n; ++t) {
          const Injection f = Injection::skip(n, t);
          for (std::size_t k = 0; k < v.dim(n - 1); ++k) {
            SparseVec img = v.apply_basis(f, k);
            if (span.insert(img)) rows.push_back(std::move(img));
          }
        }
        for (int k = 1; k < n && span.rank() > 0; ++k) {
          const Injection s = Injection::transposition(n, k);
          for (const auto& r : rows) {
            if (!span.contains(v.apply(s, r))) {
              throw DataError(v.name() + ": span of images is not S_n-stable at n=" + std::to_string(n));
            }
          }
        }
      }
      qdim = d - span.rank();
      if (qdim) {
        for (std::size_t c = 0; c < parts.size(); ++c) {
          const Injection sigma = representative_of(parts[c]);
          Rational tr = 0;
          for (std::size_t k = 0; k < d; ++k) {
            if (span.is_pivot(k)) continue;
            tr += linalg::coefficient(span.reduce(v.apply_basis(sigma, k)), k);
          }
          values[c] = tr;
        }
      }
    }
    out.quotient_dim.push_back(qdim);
    out.new_generators.push_back(qdim ? generator_count(symcore::decompose(ClassFunction(n, values))) : 0);
  }
  return out;
}

// ---- representation stability ----

std::string RepStabReport::to_string() const {
  std::ostringstream os;
  os << "n\tinjective\tsurjective\tmultiplicities\tdecomposition\n";
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  for (const auto& r : rows) {
    os << r.n << "\t" << yn(r.injective) << "\t" << yn(r.surjective) << "\t" << yn(r.multiplicities) << "\t"
       << r.decomposition.to_string() << "\n";
  }
  os << "onset\t" << (onset ? std::to_string(*onset) : std::string("none in window")) << "\n";
  return os.str();
}

RepStabReport check_repstab(const FIModule& v, const Window& window) {
  if (window.empty() || window.lo < 0) throw ArgumentError("check_repstab: empty window");
  if (window.hi + 1 > v.n_max()) {
    throw ArgumentError("check_repstab: window " + window.to_string() + " needs n_max >= " + std::to_string(window.hi + 1));
  }
  std::vector<Decomposition> decomps;
  for (int n = window.lo; n <= window.hi + 1; ++n) decomps.push_back(v.decompose(n));
  RepStabReport report;
  for (int n = window.lo; n <= window.hi; ++n) {
    RepStabRow row;
    row.n = n;
    row.decomposition = decomps[n - window.lo];
    const Injection phi = Injection::standard(n, n + 1);
    linalg::RowSpace span(v.dim(n + 1));
    std::vector<SparseVec> inserted;
    for (std::size_t k = 0; k < v.dim(n); ++k) {
      SparseVec img = v.apply_basis(phi, k);
      if (span.insert(img)) inserted.push_back(std::move(img));
    }
    row.injective = span.rank() == v.dim(n);
    const std::size_t target = v.dim(n + 1);
    if (n + 1 <= 6) {
      const std::vector<SparseVec> seeds = inserted;
      for (const auto& sigma : all_injections(n + 1, n + 1)) {
        if (span.rank() == target) break;
        for (const auto& s : seeds) span.insert(v.apply(sigma, s));
      }
    } else {
      // Closure under adjacent transpositions generates the same span.
      std::size_t next = 0;
      while (next < inserted.size() && span.rank() < target) {
        const SparseVec u = inserted[next++];
        for (int k = 1; k <= n; ++k) {
          SparseVec img = v.apply(Injection::transposition(n + 1, k), u);
          if (span.insert(img)) inserted.push_back(std::move(img));
        }
      }
    }
    row.surjective = span.rank() == target;
    row.multiplicities = true;
    for (std::size_t j = n - window.lo + 1; j < decomps.size(); ++j) {
      if (!symcore::same_multiplicities(decomps[j], row.decomposition)) row.multiplicities = false;
    }
    report.rows.push_back(std::move(row));
  }
  for (auto it = report.rows.rbegin(); it != report.rows.rend(); ++it) {
    if (!(it->injective && it->surjective && it->multiplicities)) break;
    report.onset = it->n;
  }
  std::set<Partition> labels;
  for (const auto& d : decomps) {
    for (const auto& [lambda, mult] : d.multiplicities) labels.insert(lambda);
  }
  auto mult_at = [&](std::size_t j, const Partition& lambda) {
    auto it = decomps[j].multiplicities.find(lambda);
    return it == decomps[j].multiplicities.end() ? Integer(0) : it->second;
  };
  for (const auto& lambda : labels) {
    std::size_t j = decomps.size() - 1;
    while (j > 0 && mult_at(j - 1, lambda) == mult_at(decomps.size() - 1, lambda)) --j;
    report.label_onset[lambda] = window.lo + static_cast<int>(j);
  }
  return report;
}

// ---- colimits ----

ColimitResult colimit_check(const FIModule& v, int N, int n) {
  if (N < 0) throw ArgumentError("colimit_check: need N >= 0");
  check_level(v, n);
  if (n > 24) throw ArgumentError("colimit_check: n too large for the subset encoding");
  // Summands: subsets of size <= N, each a copy of V_{|S|}.
  std::vector<unsigned> subsets;
  for (unsigned s = 0; s < (1u << n); ++s) {
    if (__builtin_popcount(s) <= N) subsets.push_back(s);
  }
  std::unordered_map<unsigned, std::size_t> offset;
  std::size_t total = 0;
  for (unsigned s : subsets) {
    offset[s] = total;
    total += v.dim(__builtin_popcount(s));
  }
  auto elements = [](unsigned s) {
    std::vector<int> out;
    for (int x = 1; s; ++x, s >>= 1) {
      if (s & 1u) out.push_back(x);
    }
    return out;
  };
  auto shift = [](const SparseVec& x, std::size_t by) {
    SparseVec out = x;
    for (auto& e : out) e.first += by;
    return out;
  };
  linalg::RowSpace relations(total);
  for (unsigned t : subsets) {
    const auto te = elements(t);
    const int size = static_cast<int>(te.size());
    for (int pos = 1; pos <= size; ++pos) {
      const unsigned s = t & ~(1u << (te[pos - 1] - 1));
      const Injection inc = Injection::skip(size, pos);
      for (std::size_t k = 0; k < v.dim(size - 1); ++k) {
        SparseVec rel = linalg::add_scaled(linalg::unit(offset[s] + k), shift(v.apply_basis(inc, k), offset[t]), -1);
        relations.insert(std::move(rel));
      }
    }
  }
  ColimitResult out;
  out.colim_dim = total - relations.rank();
  out.v_dim = v.dim(n);
  linalg::RowSpace image(out.v_dim);
  for (unsigned s : subsets) {
    const Injection inc(n, elements(s));
    for (std::size_t k = 0; k < v.dim(inc.m); ++k) image.insert(v.apply_basis(inc, k));
  }
  out.image_rank = image.rank();
  out.isomorphic = out.colim_dim == out.v_dim && out.image_rank == out.v_dim;
  return out;
}

// ---- Murnaghan ----

std::string format_table(const std::map<Partition, Integer>& table) {
  std::string s = "{";
  bool first = true;
  for (const auto& [lambda, mult] : table) {
    if (!first) s += ", ";
    first = false;
    s += lambda.to_string() + ":" + repstab::to_string(mult);
  }
  return s + "}";
}

StableValue<std::map<Partition, Integer>> murnaghan_check(const Partition& lambda, const Partition& mu,
                                                          const Window& window) {
  if (window.empty()) throw ArgumentError("murnaghan_check: empty window");
  const int need = std::max(lambda.size() + lambda.first(), mu.size() + mu.first());
  if (window.lo < need) {
    throw PaddingError("murnaghan_check: window starts below n=" + std::to_string(need) + " needed by both paddings");
  }
  using Table = std::map<Partition, Integer>;
  std::vector<std::pair<int, Table>> trace(window.size());
  for (int n = window.lo; n <= window.hi; ++n) symcore::character_table(n);
  parallel_chunks(trace.size(), 0, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const int n = window.lo + static_cast<int>(j);
      const ClassFunction product = symcore::irreducible_character(symcore::pad(lambda, n)) *
                                    symcore::irreducible_character(symcore::pad(mu, n));
      trace[j] = {n, symcore::decompose(product).multiplicities};
    }
  });
  return detect_stable<Table>(std::move(trace), format_table,
                              "murnaghan " + lambda.to_string() + " x " + mu.to_string());
}

}  // namespace repstab::fimod
