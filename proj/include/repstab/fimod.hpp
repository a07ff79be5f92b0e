#pragma once

// Truncated FI-modules: functors from finite sets and injections to
// finite-dimensional rational vector spaces, known for n <= n_max.

#include "repstab/exact.hpp"
#include "repstab/linalg.hpp"
#include "repstab/stability.hpp"
#include "repstab/symcore.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace repstab::fimod {

using linalg::SparseVec;
using symcore::ClassFunction;
using symcore::Decomposition;
using symcore::Partition;

/// Injection {1..m} -> {1..n}; images[k-1] = f(k).
struct Injection {
  int m = 0;
  int n = 0;
  std::vector<int> images;

  Injection() = default;
  /// Throws ArgumentError unless the images are distinct values in 1..n.
  Injection(int n, std::vector<int> images);

  static Injection identity(int n);
  /// k -> k.
  static Injection standard(int m, int n);
  /// The order-preserving injection {1..n-1} -> {1..n} missing t.
  static Injection skip(int n, int t);
  /// Permutation of {1..n}, given in one-line notation.
  static Injection permutation(std::vector<int> one_line);
  /// Adjacent transposition (k k+1) in S_n.
  static Injection transposition(int n, int k);

  bool is_permutation() const { return m == n; }
  friend bool operator==(const Injection&, const Injection&) = default;
};

/// g o f. Throws ArgumentError when the codomain of f is not the domain of g.
Injection compose(const Injection& g, const Injection& f);

/// All injections {1..m} -> {1..n}.
std::vector<Injection> all_injections(int m, int n);

class FIModule {
 public:
  virtual ~FIModule() = default;

  virtual std::string name() const = 0;
  virtual int n_max() const = 0;
  virtual std::size_t dim(int n) const = 0;
  /// V(f) applied to v in V_{f.m}; the result lies in V_{f.n}.
  virtual SparseVec apply(const Injection& f, const SparseVec& v) const = 0;
  virtual std::string basis_label(int n, std::size_t k) const;

  /// For modules whose maps send basis vectors to signed basis vectors: fills
  /// out[k] = (index of the image of basis vector k, sign) and returns true.
  virtual bool monomial_images(const Injection& f, std::vector<std::pair<std::size_t, int>>& out) const;

  SparseVec apply_basis(const Injection& f, std::size_t k) const { return apply(f, linalg::unit(k)); }
  /// Character of V_n, by traces of one representative per class.
  ClassFunction character(int n) const;
  Decomposition decompose(int n) const { return symcore::decompose(character(n)); }
};

using FIModulePtr = std::shared_ptr<const FIModule>;

// ---- built-ins ----

/// Homogeneous polynomials of degree d in x_1..x_n; f relabels variables.
FIModulePtr poly_homogeneous(int d, int n_max);
/// H^i of the configuration space of n points, via the Orlik-Solomon model.
FIModulePtr conf_cohomology(int i, int n_max);
/// V(lambda)_n realized as the Specht module inside the tabloid space of the
/// padded shape; new points join the first row. Zero below the padding threshold.
FIModulePtr irrep_sequence(const Partition& lambda, int n_max);
/// Pointwise tensor product with diagonal maps.
FIModulePtr tensor(FIModulePtr a, FIModulePtr b);
/// The full exterior algebra on C^n (not representation stable).
FIModulePtr exterior_algebra(int n_max);

/// A natural map between two FI-modules given levelwise.
struct FIMap {
  FIModulePtr source;
  FIModulePtr target;
  std::string name;
  std::function<SparseVec(int n, const SparseVec&)> at;
};

/// x_i -> 1 from degree-one polynomials to constants.
FIMap augmentation(int n_max);
/// w_ij -> x_i + x_j from H^1 to degree-one polynomials.
FIMap conf1_to_linear(int n_max);

/// Kernel of a natural map, with an exact basis at each level. Throws
/// DataError if the map is not natural on the checked injections.
FIModulePtr kernel(const FIMap& map);

/// Parses "poly(3)", "conf(2)", "irrep(2,1)", "irrep()", "exterior" and
/// "tensor(A,B)"; the long names poly_homogeneous, conf_cohomology,
/// irrep_sequence and exterior_algebra are accepted too.
FIModulePtr builtin(const std::string& spec, int n_max);

// ---- explicit data and JSON ----

/// Schema version of the JSON export.
inline constexpr int kFIModuleSchema = 1;

/// Dimensions, skip maps V_{n-1} -> V_n for each missing point, and adjacent
/// transpositions on V_n, all as sparse rational matrices.
nlohmann::json export_json(const FIModule& v);
/// Validates shapes and functoriality on small n. Throws DataError.
FIModulePtr import_json(const nlohmann::json& doc);

// ---- checks ----

struct FunctorialityReport {
  std::size_t pairs_checked = 0;
  std::size_t identities_checked = 0;
};

/// V(g o f) = V(g) V(f) for every composable pair with target <= exhaustive_up_to,
/// plus `random_samples` random pairs up to n_max; V(id) = id throughout.
/// Throws DataError on the first violation.
FunctorialityReport check_functoriality(const FIModule& v, int exhaustive_up_to, int random_samples,
                                        unsigned seed = 1);

struct GenerationProfile {
  std::vector<std::size_t> new_generators;  // minimal S_n-generators of the quotient, per n
  std::vector<std::size_t> quotient_dim;    // dim V_n minus the span of images
  std::vector<std::size_t> dims;
  /// Sum of new_generators: a generating set size within the truncation.
  std::size_t total() const;
  /// Last n with a new generator (-1 if none).
  int last_generator_degree() const;
  std::string to_string() const;
};

/// For each n <= n_max: the quotient of V_n by the span of all images from
/// smaller sets, reported both as a dimension and as the minimal number of
/// S_n-generators. Throws DataError if the span is not S_n-stable.
GenerationProfile generation_profile(const FIModule& v);

struct RepStabRow {
  int n = 0;
  bool injective = false;
  bool surjective = false;   // S_{n+1}-orbit of the image spans V_{n+1}
  bool multiplicities = false;  // decomposition constant from n to the end
  Decomposition decomposition;
};

struct RepStabReport {
  std::vector<RepStabRow> rows;
  std::optional<int> onset;  // first n from which all three conditions hold
  /// Per label: first n from which its multiplicity is constant.
  std::map<Partition, int> label_onset;
  std::string to_string() const;
};

/// Window [lo, hi] needs hi + 1 <= n_max. Failures are reported, not thrown.
RepStabReport check_repstab(const FIModule& v, const Window& window);

struct ColimitResult {
  std::size_t colim_dim = 0;
  std::size_t v_dim = 0;
  std::size_t image_rank = 0;
  bool isomorphic = false;
};

/// Colimit of S -> V(S) over subsets of {1..n} with |S| <= N, compared with V_n.
/// N >= n is allowed (the full set is then terminal).
ColimitResult colimit_check(const FIModule& v, int N, int n);

/// Stable table of chi^{pad(lambda,n)} * chi^{pad(mu,n)} on the window tail.
StableValue<std::map<Partition, Integer>> murnaghan_check(const Partition& lambda, const Partition& mu,
                                                          const Window& window);

std::string format_table(const std::map<Partition, Integer>& table);

}  // namespace repstab::fimod
