#include "repstab/charpoly.hpp"

#include "repstab/errors.hpp"
#include "repstab/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace repstab::charpoly {

using symcore::partitions_of;

int weighted_degree(const MultiIndex& a) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += static_cast<int>(i + 1) * a[i];
  return d;
}

bool TermOrder::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int da = weighted_degree(a), db = weighted_degree(b);
  if (da != db) return da < db;
  const std::size_t len = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    const int x = i < a.size() ? a[i] : 0;
    const int y = i < b.size() ? b[i] : 0;
    if (x != y) return x < y;
  }
  return false;
}

namespace {

MultiIndex trimmed(MultiIndex a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// C(x,a) C(x,b) = sum_k C(a+b-k, a) C(a, k) C(x, a+b-k).
std::vector<std::pair<int, Integer>> binomial_product(int a, int b) {
  std::vector<std::pair<int, Integer>> out;
  for (int k = 0; k <= std::min(a, b); ++k) {
    out.emplace_back(a + b - k, binomial(Integer(a + b - k), a) * binomial(Integer(a), k));
  }
  return out;
}

// Signed Stirling numbers of the first kind s(n,k), n <= limit.
std::vector<std::vector<Integer>> stirling1(int limit) {
  std::vector<std::vector<Integer>> s(limit + 1, std::vector<Integer>(limit + 1, 0));
  s[0][0] = 1;
  for (int n = 1; n <= limit; ++n) {
    for (int k = 1; k <= n; ++k) s[n][k] = s[n - 1][k - 1] - (n - 1) * s[n - 1][k];
  }
  return s;
}

// Stirling numbers of the second kind S(n,k).
std::vector<std::vector<Integer>> stirling2(int limit) {
  std::vector<std::vector<Integer>> S(limit + 1, std::vector<Integer>(limit + 1, 0));
  S[0][0] = 1;
  for (int n = 1; n <= limit; ++n) {
    for (int k = 1; k <= n; ++k) S[n][k] = k * S[n - 1][k] + S[n - 1][k - 1];
  }
  return S;
}

// Expands per-variable sums into a polynomial by taking all combinations.
template <class Keyed>
void expand_product(const std::vector<std::vector<std::pair<int, Keyed>>>& per_variable, const Rational& coef,
                    std::map<MultiIndex, Rational, TermOrder>& out) {
  MultiIndex current(per_variable.size(), 0);
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t v, Rational c) {
    if (v == per_variable.size()) {
      auto key = trimmed(current);
      auto& slot = out[key];
      slot += c;
      if (slot == 0) out.erase(key);
      return;
    }
    for (const auto& [exp, weight] : per_variable[v]) {
      current[v] = exp;
      rec(v + 1, c * Rational(weight));
    }
  };
  rec(0, coef);
}

// ---- text parser ----

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  CharacterPolynomial parse() {
    CharacterPolynomial p = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("character polynomial '" + std::string(text_) + "': " + msg + " at offset " +
                     std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  bool accept_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Integer number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return parse_integer(text_.substr(start, pos_ - start));
  }

  int small_number() {
    Integer v = number();
    if (v > 1000) fail("index too large");
    return static_cast<int>(v.get_si());
  }

  int variable() {
    skip_ws();
    if (pos_ < text_.size() && (text_[pos_] == 'X' || text_[pos_] == 'x')) {
      ++pos_;
      accept('_');
      int i = small_number();
      if (i < 1) fail("variable index must be positive");
      return i;
    }
    fail("expected a variable X<i>");
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'X' || c == 'x' || c == 'C' || c == 'b' ||
           c == '(';
  }

  CharacterPolynomial power(CharacterPolynomial base) {
    if (!accept('^')) return base;
    int e = small_number();
    CharacterPolynomial out = CharacterPolynomial::constant(1);
    for (int k = 0; k < e; ++k) out = out * base;
    return out;
  }

  CharacterPolynomial factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = number();
      Rational value(num);
      if (accept('/')) {
        Integer den = number();
        if (den == 0) fail("zero denominator");
        value = Rational(num, den);
        value.canonicalize();
      }
      return CharacterPolynomial::constant(value);
    }
    if (accept_word("C(") || accept_word("binom(")) {
      int i = variable();
      expect(',');
      int a = small_number();
      expect(')');
      return power(CharacterPolynomial::binom_X(i, a));
    }
    if (accept('(')) {
      CharacterPolynomial inner = expression();
      expect(')');
      return power(inner);
    }
    int i = variable();
    return power(CharacterPolynomial::X(i));
  }

  CharacterPolynomial term() {
    Rational sign = 1;
    while (true) {
      if (accept('-')) {
        sign = -sign;
      } else if (!accept('+')) {
        break;
      }
    }
    CharacterPolynomial p = factor();
    while (true) {
      if (accept('*')) {
        p = p * factor();
      } else if (starts_factor()) {
        p = p * factor();
      } else {
        break;
      }
    }
    return sign * p;
  }

  CharacterPolynomial expression() {
    CharacterPolynomial p = term();
    while (true) {
      if (accept('+')) {
        p += term();
      } else if (accept('-')) {
        p -= term();
      } else {
        break;
      }
    }
    return p;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

// ---- CharacterPolynomial ----

CharacterPolynomial::CharacterPolynomial(Terms terms) {
  for (const auto& [a, c] : terms) add_term(a, c);
}

void CharacterPolynomial::add_term(const MultiIndex& a, const Rational& c) {
  for (int x : a) {
    if (x < 0) throw ArgumentError("negative binomial index in character polynomial");
  }
  if (c == 0) return;
  auto key = trimmed(a);
  auto& slot = terms_[key];
  slot += c;
  if (slot == 0) terms_.erase(key);
}

CharacterPolynomial CharacterPolynomial::constant(const Rational& c) { return term({}, c); }

CharacterPolynomial CharacterPolynomial::X(int i) { return binom_X(i, 1); }

CharacterPolynomial CharacterPolynomial::binom_X(int i, int a) {
  if (i < 1) throw ArgumentError("variable index must be positive");
  MultiIndex idx(i, 0);
  idx[i - 1] = a;
  return term(idx);
}

CharacterPolynomial CharacterPolynomial::term(const MultiIndex& a, const Rational& c) {
  CharacterPolynomial p;
  p.add_term(a, c);
  return p;
}

int CharacterPolynomial::degree() const {
  int d = 0;
  for (const auto& [a, c] : terms_) d = std::max(d, weighted_degree(a));
  return d;
}

int CharacterPolynomial::max_variable() const {
  int r = 0;
  for (const auto& [a, c] : terms_) r = std::max(r, static_cast<int>(a.size()));
  return r;
}

Rational CharacterPolynomial::evaluate(const std::vector<int>& m) const {
  Rational sum = 0;
  for (const auto& [a, c] : terms_) {
    Integer prod = 1;
    for (std::size_t i = 0; i < a.size() && prod != 0; ++i) {
      if (a[i] == 0) continue;
      const int mi = i < m.size() ? m[i] : 0;
      prod *= binomial(Integer(mi), a[i]);
    }
    if (prod != 0) sum += c * Rational(prod);
  }
  return sum;
}

Rational CharacterPolynomial::evaluate(const CycleType& mu) const {
  std::vector<int> m(max_variable(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = mu.m(static_cast<int>(i + 1));
  return evaluate(m);
}

CharacterPolynomial& CharacterPolynomial::operator+=(const CharacterPolynomial& other) {
  for (const auto& [a, c] : other.terms_) add_term(a, c);
  return *this;
}

CharacterPolynomial& CharacterPolynomial::operator-=(const CharacterPolynomial& other) {
  for (const auto& [a, c] : other.terms_) add_term(a, -c);
  return *this;
}

CharacterPolynomial& CharacterPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, v] : terms_) v *= c;
  return *this;
}

CharacterPolynomial operator*(const CharacterPolynomial& x, const CharacterPolynomial& y) {
  std::map<MultiIndex, Rational, TermOrder> out;
  for (const auto& [a, ca] : x.terms_) {
    for (const auto& [b, cb] : y.terms_) {
      const std::size_t len = std::max(a.size(), b.size());
      std::vector<std::vector<std::pair<int, Integer>>> per_variable(len);
      for (std::size_t i = 0; i < len; ++i) {
        per_variable[i] = binomial_product(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
      }
      expand_product(per_variable, ca * cb, out);
    }
  }
  return CharacterPolynomial(std::move(out));
}

std::string CharacterPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [a, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += repstab::to_string(c);
    std::string factors;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += "C(X" + std::to_string(i + 1) + "," + std::to_string(a[i]) + ")";
    }
    if (!factors.empty()) s += " * " + factors;
  }
  return s;
}

CharacterPolynomial CharacterPolynomial::parse(std::string_view text) { return Parser(text).parse(); }

std::map<MultiIndex, Rational, TermOrder> CharacterPolynomial::to_monomials() const {
  int top = 0;
  for (const auto& [a, c] : terms_) {
    for (int x : a) top = std::max(top, x);
  }
  const auto s = stirling1(top);
  std::map<MultiIndex, Rational, TermOrder> out;
  for (const auto& [a, c] : terms_) {
    // C(x,k) = (1/k!) sum_j s(k,j) x^j.
    std::vector<std::vector<std::pair<int, Rational>>> per_variable(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int k = a[i];
      const Rational inv(Integer(1), factorial(k));
      for (int j = 0; j <= k; ++j) {
        if (s[k][j] != 0) per_variable[i].emplace_back(j, Rational(s[k][j]) * inv);
      }
    }
    expand_product(per_variable, c, out);
  }
  return out;
}

CharacterPolynomial CharacterPolynomial::from_monomials(const std::map<MultiIndex, Rational, TermOrder>& monomials) {
  int top = 0;
  for (const auto& [e, c] : monomials) {
    for (int x : e) top = std::max(top, x);
  }
  const auto S = stirling2(top);
  std::map<MultiIndex, Rational, TermOrder> out;
  for (const auto& [e, c] : monomials) {
    // x^k = sum_j S(k,j) j! C(x,j).
    std::vector<std::vector<std::pair<int, Integer>>> per_variable(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int j = 0; j <= e[i]; ++j) {
        if (S[e[i]][j] != 0) per_variable[i].emplace_back(j, S[e[i]][j] * factorial(j));
      }
    }
    expand_product(per_variable, c, out);
  }
  return CharacterPolynomial(std::move(out));
}

std::string CharacterPolynomial::to_monomial_string() const {
  auto monomials = to_monomials();
  if (monomials.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : monomials) {
    if (!s.empty()) s += " + ";
    s += repstab::to_string(c);
    std::string factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += "X" + std::to_string(i + 1);
      if (e[i] > 1) factors += "^" + std::to_string(e[i]);
    }
    if (!factors.empty()) s += " * " + factors;
  }
  return s;
}

// ---- restriction and fitting ----

ClassFunction restrict_to_n(const CharacterPolynomial& p, int n) {
  if (n < 0) throw ArgumentError("restrict_to_n: negative n");
  const auto& parts = partitions_of(n);
  std::vector<Rational> values;
  values.reserve(parts.size());
  for (const auto& mu : parts) values.push_back(p.evaluate(CycleType(mu)));
  return ClassFunction(n, std::move(values));
}

std::vector<MultiIndex> indices_up_to(int max_degree) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= max_degree; ++k) {
    for (const auto& lambda : partitions_of(k)) {
      MultiIndex a(lambda.first(), 0);
      for (int part : lambda.parts()) ++a[part - 1];
      out.push_back(std::move(a));
    }
  }
  std::sort(out.begin(), out.end(), TermOrder{});
  return out;
}

std::string FitResult::describe() const {
  std::ostringstream os;
  switch (status) {
    case Status::unique:
      os << "unique solution (rank " << rank << " of " << unknowns << "): " << polynomial.to_string();
      break;
    case Status::inconsistent:
      os << "no solution: constraint at n=" << witness->first << ", class " << witness->second.to_string()
         << " contradicts the previous ones";
      break;
    case Status::underdetermined:
      os << "underdetermined (rank " << rank << " of " << unknowns << "); free directions:";
      for (const auto& d : free_directions) os << "\n  " << d.to_string();
      break;
  }
  return os.str();
}

FitResult fit(const std::vector<std::pair<int, ClassFunction>>& data, int max_degree) {
  if (max_degree < 0) throw ArgumentError("fit: negative degree bound");
  std::vector<int> seen;
  for (const auto& [n, f] : data) {
    if (std::find(seen.begin(), seen.end(), n) != seen.end()) {
      throw ArgumentError("fit: repeated n = " + std::to_string(n));
    }
    if (f.n() != n) throw ArgumentError("fit: class function does not live on S_" + std::to_string(n));
    seen.push_back(n);
  }

  const auto indices = indices_up_to(max_degree);
  linalg::DenseMatrix a;
  std::vector<Rational> b;
  std::vector<std::pair<int, Partition>> origin;
  for (const auto& [n, f] : data) {
    const auto& parts = partitions_of(n);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      CycleType mu(parts[k]);
      std::vector<Rational> row;
      row.reserve(indices.size());
      for (const auto& idx : indices) row.push_back(CharacterPolynomial::term(idx).evaluate(mu));
      a.push_back(std::move(row));
      b.push_back(f[k]);
      origin.emplace_back(n, parts[k]);
    }
  }

  FitResult out;
  out.unknowns = indices.size();
  auto sol = linalg::solve(a, b, indices.size());
  out.rank = sol.rank;
  switch (sol.status) {
    case linalg::LinearSolution::Status::unique: {
      CharacterPolynomial::Terms terms;
      for (std::size_t j = 0; j < indices.size(); ++j) {
        if (sol.x[j] != 0) terms[indices[j]] = sol.x[j];
      }
      out.polynomial = CharacterPolynomial(std::move(terms));
      break;
    }
    case linalg::LinearSolution::Status::inconsistent:
      out.status = FitResult::Status::inconsistent;
      out.witness = origin[*sol.witness_row];
      break;
    case linalg::LinearSolution::Status::underdetermined:
      out.status = FitResult::Status::underdetermined;
      for (const auto& dir : sol.free_directions) {
        CharacterPolynomial::Terms terms;
        for (std::size_t j = 0; j < indices.size(); ++j) {
          if (dir[j] != 0) terms[indices[j]] = dir[j];
        }
        out.free_directions.emplace_back(std::move(terms));
      }
      break;
  }
  return out;
}

StableValue<Rational> stable_inner_product(const CharacterPolynomial& p, const Partition& lambda,
                                           const Window& window) {
  if (window.empty()) throw ArgumentError("stable_inner_product: empty window");
  std::vector<std::pair<int, Rational>> trace;
  for (int n = window.lo; n <= window.hi; ++n) {
    const Partition padded = symcore::pad(lambda, n);
    trace.emplace_back(n, symcore::inner_product(restrict_to_n(p, n), symcore::irreducible_character(padded)));
  }
  return detect_stable<Rational>(std::move(trace), [](const Rational& r) { return repstab::to_string(r); },
                                 "<P, V" + lambda.to_string() + ">");
}

// ---- statistics ----

Statistic::Statistic(std::string name, CharacterPolynomial p) : name_(std::move(name)), poly_(std::move(p)) {}

Statistic::Statistic(std::string name, std::function<Rational(const CycleType&)> rule)
    : name_(std::move(name)), rule_(std::move(rule)) {}

Statistic Statistic::parse(std::string_view text) {
  if (text == "one") return Statistic("one", CharacterPolynomial::constant(1));
  if (text == "linear") return Statistic("linear", CharacterPolynomial::X(1));
  if (text == "quadratic-excess") return Statistic("quadratic-excess", quadratic_excess());
  if (text == "sign") return Statistic("sign", [](const CycleType& mu) { return Rational(mu.sign()); });
  if (text == "ncycle") {
    return Statistic("ncycle", [](const CycleType& mu) { return Rational(mu.cycle_count() == 1 ? 1 : 0); });
  }
  return Statistic(std::string(text), CharacterPolynomial::parse(text));
}

Rational Statistic::operator()(const CycleType& mu) const { return poly_ ? poly_->evaluate(mu) : rule_(mu); }

ClassFunction Statistic::restrict_to_n(int n) const {
  if (poly_) return charpoly::restrict_to_n(*poly_, n);
  const auto& parts = partitions_of(n);
  std::vector<Rational> values;
  for (const auto& mu : parts) values.push_back(rule_(CycleType(mu)));
  return ClassFunction(n, std::move(values));
}

CharacterPolynomial quadratic_excess() { return CharacterPolynomial::binom_X(1, 2) - CharacterPolynomial::X(2); }

CharacterPolynomial h2_polynomial() {
  using CP = CharacterPolynomial;
  return Rational(2) * CP::binom_X(1, 3) + Rational(3) * CP::binom_X(1, 4) + CP::binom_X(1, 2) * CP::X(2) -
         CP::binom_X(2, 2) - CP::X(3) - CP::X(4);
}

}  // namespace repstab::charpoly
