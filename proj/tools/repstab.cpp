#include <CLI11.hpp>

#include "repstab/cache.hpp"
#include "repstab/charpoly.hpp"
#include "repstab/errors.hpp"
#include "repstab/fimod.hpp"
#include "repstab/format.hpp"
#include "repstab/fqstats.hpp"
#include "repstab/osconf.hpp"
#include "repstab/parallel.hpp"
#include "repstab/stability.hpp"
#include "repstab/symcore.hpp"
#include "repstab/tori.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

using namespace repstab;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::string format = "tsv";
  std::string cache_dir;
  unsigned jobs = 1;
  std::string window;
};

std::unique_ptr<Cache> open_cache(const Globals& g) {
  if (!g.cache_dir.empty()) return std::make_unique<Cache>(g.cache_dir);
  if (auto dir = Cache::default_dir()) return std::make_unique<Cache>(*dir);
  return nullptr;
}

std::optional<Window> window_of(const Globals& g) {
  if (g.window.empty()) return std::nullopt;
  Window w = Window::parse(g.window);
  if (w.empty() || w.lo < 0) throw ArgumentError("bad window " + g.window);
  return w;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string str(std::size_t v) { return std::to_string(v); }

int emit(const Table& t, const Globals& g) {
  std::cout << t.render(parse_format(g.format));
  return 0;
}

// n values from --n, or from --window when --n is absent.
std::vector<int> n_values(int n, const Globals& g) {
  std::vector<int> out;
  if (n > 0) {
    out.push_back(n);
  } else if (auto w = window_of(g)) {
    for (int k = w->lo; k <= w->hi; ++k) out.push_back(k);
  }
  if (out.empty()) throw ArgumentError("give --n or --window");
  return out;
}

// ---- chars ----

struct CharsArgs {
  int n = 0;
  std::string lambda;
};

int run_chars(const CharsArgs& a, const Globals& g) {
  if (a.n < 1) throw ArgumentError("chars: --n must be >= 1");
  std::optional<symcore::Partition> only;
  if (!a.lambda.empty()) {
    only = symcore::Partition::parse(a.lambda);
    if (only->size() != a.n) throw ArgumentError("chars: " + only->to_string() + " is not a partition of " + std::to_string(a.n));
  }
  auto cache = open_cache(g);
  const auto& table = symcore::character_table(a.n, cache.get());
  const auto& parts = symcore::partitions_of(a.n);
  Table t;
  t.columns.push_back("lambda");
  for (const auto& mu : parts) t.columns.push_back(mu.to_string());
  for (std::size_t r = 0; r < parts.size(); ++r) {
    if (only && parts[r] != *only) continue;
    std::vector<std::string> row{parts[r].to_string()};
    for (auto v : table[r]) row.push_back(std::to_string(v));
    t.add(std::move(row));
  }
  return emit(t, g);
}

// ---- decompose-conf ----

struct ConfArgs {
  int n = 0;
  int i = -1;
};

int run_decompose_conf(const ConfArgs& a, const Globals& g) {
  if (a.i < 0) throw ArgumentError("decompose-conf: --i must be >= 0");
  auto cache = open_cache(g);
  if (auto w = window_of(g)) {
    if (a.i >= w->lo) throw ArgumentError("decompose-conf: need I <= N - 1 for every N in the window");
    const auto report = osconf::verify_stability(a.i, *w, cache.get());
    Table t;
    t.columns = {"n", "i", "decomposition", "dimension", "stable", "onset", "predicted_onset"};
    for (const auto& [n, d] : report.per_n) {
      t.add({std::to_string(n), std::to_string(a.i), d.to_string(), to_string(d.dimension()),
             yes_no(n >= report.observed_onset), std::to_string(report.observed_onset),
             std::to_string(report.predicted_onset)});
    }
    return emit(t, g);
  }
  if (a.n < 1) throw ArgumentError("decompose-conf: --n must be >= 1");
  if (a.i >= a.n) throw ArgumentError("decompose-conf: need 0 <= I <= N - 1");
  const auto d = osconf::decompose_conf(a.n, a.i, cache.get());
  Table t;
  t.columns = {"label", "padded", "multiplicity", "dimension"};
  for (const auto& [lambda, mult] : d.multiplicities) {
    const symcore::PaddedLabel label{lambda, a.n};
    t.add({label.to_string(), label.padded().to_string(), to_string(mult), to_string(symcore::dim_irrep(label))});
  }
  return emit(t, g);
}

// ---- verify-gl ----

struct GlArgs {
  int n = 0;
  int q = 0;
  std::string stat = "one";
};

int run_verify_gl(const GlArgs& a, const Globals& g) {
  if (a.n < 1) throw ArgumentError("verify-gl: --n must be >= 1");
  if (!fqstats::is_prime(a.q)) throw ArgumentError("verify-gl: q = " + std::to_string(a.q) + " is not prime");
  const auto stat = charpoly::Statistic::parse(a.stat);
  auto cache = open_cache(g);
  Table t;
  t.columns = {"n", "q", "statistic", "point_count", "cohomology", "result"};
  try {
    const auto r = fqstats::gl_crosscheck(a.n, a.q, stat, cache.get(), g.jobs);
    t.add({std::to_string(a.n), std::to_string(a.q), stat.name(), to_string(r.point_count), to_string(r.cohomology),
           "PASS"});
    return emit(t, g);
  } catch (const CrossCheckFailure& e) {
    std::cerr << e.what() << "\n";
    std::cout << "FAIL\n";
    return kExitFail;
  }
}

// ---- fit ----

struct FitArgs {
  int i = -1;
  std::string module;
  int degree = -1;
};

int run_fit(const FitArgs& a, const Globals& g) {
  const auto w = window_of(g);
  if (!w) throw ArgumentError("fit: --window A..B is required");
  if ((a.i >= 0) == !a.module.empty()) throw ArgumentError("fit: give exactly one of --i and --module");
  std::vector<std::pair<int, symcore::ClassFunction>> data;
  std::string source;
  int degree = a.degree;
  if (a.i >= 0) {
    auto cache = open_cache(g);
    for (int n = w->lo; n <= w->hi; ++n) data.emplace_back(n, osconf::character_conf(n, a.i, cache.get()));
    source = "H^" + std::to_string(a.i);
    if (degree < 0) degree = 2 * a.i;
  } else {
    auto v = fimod::builtin(a.module, w->hi);
    for (int n = w->lo; n <= w->hi; ++n) data.emplace_back(n, v->character(n));
    source = v->name();
    if (degree < 0) throw ArgumentError("fit: --degree is required with --module");
  }
  const auto r = charpoly::fit(data, degree);
  Table t;
  t.columns = {"source", "window", "degree", "status", "polynomial", "monomials"};
  t.add({source, w->to_string(), std::to_string(degree), r.ok() ? "unique" : r.describe(),
         r.ok() ? r.polynomial.to_string() : "", r.ok() ? r.polynomial.to_monomial_string() : ""});
  emit(t, g);
  return r.ok() ? 0 : kExitFail;
}

// ---- fq ----

struct FqArgs {
  int n = 0;
  int q = 0;
  std::string stat = "one";
  int series = -1;
  bool irreducible = false;
  bool discriminant = false;
};

int run_fq(const FqArgs& a, const Globals& g) {
  const auto stat = charpoly::Statistic::parse(a.stat);
  if (a.series >= 0) {
    auto cache = open_cache(g);
    const auto r = fqstats::series_partial_sums(stat, a.series, window_of(g), cache.get());
    Table t;
    t.columns = {"statistic", "i", "total_coefficient", "expectation_coefficient", "onset", "window"};
    for (int i = 0; i <= a.series; ++i) {
      t.add({stat.name(), std::to_string(i), to_string(r.total[i]), to_string(r.expectation[i]),
             std::to_string(r.onsets[i]), r.windows[i].to_string()});
    }
    t.add({stat.name(), "series", fqstats::format_q_series(r.total), fqstats::format_q_series(r.expectation), "", ""});
    return emit(t, g);
  }
  if (!fqstats::is_prime(a.q)) throw ArgumentError("fq: q = " + std::to_string(a.q) + " is not prime");
  const auto ns = n_values(a.n, g);
  Table t;
  if (a.irreducible) {
    t.columns = {"n", "q", "irreducible", "mobius"};
    for (int n : ns) {
      t.add({std::to_string(n), std::to_string(a.q), to_string(fqstats::irreducible_count(n, a.q, g.jobs)),
             to_string(fqstats::mobius_irreducible_count(n, a.q))});
    }
  } else if (a.discriminant) {
    t.columns = {"n", "q", "squares", "nonsquares", "sign_sum", "square_iff_even"};
    bool all = true;
    for (int n : ns) {
      const auto r = fqstats::discriminant_statistic(n, a.q, g.jobs);
      all = all && r.square_iff_even;
      t.add({std::to_string(n), std::to_string(a.q), to_string(r.squares), to_string(r.nonsquares),
             to_string(r.sign_sum), yes_no(r.square_iff_even)});
    }
    emit(t, g);
    return all ? 0 : kExitFail;
  } else {
    t.columns = {"n", "q", "statistic", "total", "expectation"};
    for (int n : ns) {
      const auto r = fqstats::total_statistic(n, a.q, stat, g.jobs);
      t.add({std::to_string(n), std::to_string(a.q), stat.name(), to_string(r.total), to_string(r.expectation)});
    }
  }
  return emit(t, g);
}

// ---- tori ----

struct ToriArgs {
  int n = 0;
  int q = 0;
  std::string stat = "one";
  bool brute = false;
  bool symbolic = false;
};

int run_tori(const ToriArgs& a, const Globals& g) {
  const auto stat = charpoly::Statistic::parse(a.stat);
  const auto ns = n_values(a.n, g);
  Table t;
  if (a.symbolic) {
    t.columns = {"n", "type", "count_polynomial"};
    for (int n : ns) {
      for (const auto& mu : symcore::partitions_of(n)) {
        t.add({std::to_string(n), mu.to_string(), tori::tori_count_polynomial(mu).to_string()});
      }
    }
    return emit(t, g);
  }
  t.columns = {"n", "q", "statistic", "type", "count", "total", "expectation"};
  bool agree = true;
  for (int n : ns) {
    const auto counts = tori::tori_count_by_type(n, a.q);
    std::optional<std::map<symcore::Partition, Integer>> brute;
    if (a.brute) {
      brute = tori::brute_force_tori(n, a.q);
      agree = agree && *brute == counts;
    }
    const Rational scale = Rational(ipow(Integer(a.q), static_cast<unsigned>(n * n - n)));
    for (const auto& [mu, count] : counts) {
      const Rational total = Rational(count) * stat(symcore::CycleType(mu));
      t.add({std::to_string(n), std::to_string(a.q), stat.name(), mu.to_string(), to_string(count), to_string(total),
             to_string(Rational(total / scale))});
    }
    const auto r = tori::tori_statistic(n, a.q, stat);
    t.add({std::to_string(n), std::to_string(a.q), stat.name(), "all", to_string(ipow(Integer(a.q), n * n - n)),
           to_string(r.total), to_string(r.expectation)});
  }
  emit(t, g);
  if (!agree) {
    std::cerr << "brute-force tori disagree with the count formula\n";
    return kExitFail;
  }
  return 0;
}

// ---- fimod ----

struct FimodArgs {
  std::string module;
  std::string import_file;
  std::string output;
  int n_max = 6;
  std::string action = "dims";
  int big_n = 3;
  int at = 0;
};

int run_fimod(const FimodArgs& a, const Globals& g) {
  fimod::FIModulePtr v;
  if (!a.import_file.empty()) {
    std::ifstream in(a.import_file);
    if (!in) throw ArgumentError("fimod: cannot read " + a.import_file);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("fimod: bad JSON: ") + e.what());
    }
    v = fimod::import_json(doc);
  } else if (!a.module.empty()) {
    v = fimod::builtin(a.module, a.n_max);
  } else {
    throw ArgumentError("fimod: give --module or --import");
  }
  Table t;
  if (a.action == "dims") {
    t.columns = {"n", "dim", "decomposition"};
    for (int n = 0; n <= v->n_max(); ++n) t.add({std::to_string(n), str(v->dim(n)), v->decompose(n).to_string()});
  } else if (a.action == "profile") {
    const auto p = fimod::generation_profile(*v);
    t.columns = {"n", "dim", "quotient_dim", "new_generators"};
    for (std::size_t n = 0; n < p.dims.size(); ++n) {
      t.add({str(n), str(p.dims[n]), str(p.quotient_dim[n]), str(p.new_generators[n])});
    }
  } else if (a.action == "repstab") {
    const auto w = window_of(g);
    if (!w) throw ArgumentError("fimod repstab: --window A..B is required");
    const auto r = fimod::check_repstab(*v, *w);
    t.columns = {"n", "injective", "surjective", "multiplicities", "decomposition", "onset"};
    const std::string onset = r.onset ? std::to_string(*r.onset) : "none";
    for (const auto& row : r.rows) {
      t.add({std::to_string(row.n), yes_no(row.injective), yes_no(row.surjective), yes_no(row.multiplicities),
             row.decomposition.to_string(), onset});
    }
    emit(t, g);
    return r.onset ? 0 : kExitFail;
  } else if (a.action == "colimit") {
    const int n = a.at > 0 ? a.at : v->n_max();
    const auto r = fimod::colimit_check(*v, a.big_n, n);
    t.columns = {"N", "n", "colim_dim", "v_dim", "image_rank", "isomorphic"};
    t.add({std::to_string(a.big_n), std::to_string(n), str(r.colim_dim), str(r.v_dim), str(r.image_rank),
           yes_no(r.isomorphic)});
    emit(t, g);
    return r.isomorphic ? 0 : kExitFail;
  } else if (a.action == "functoriality") {
    const auto r = fimod::check_functoriality(*v, std::min(v->n_max(), 4), 200);
    t.columns = {"module", "pairs_checked", "identities_checked", "result"};
    t.add({v->name(), str(r.pairs_checked), str(r.identities_checked), "PASS"});
  } else if (a.action == "export") {
    const std::string text = fimod::export_json(*v).dump(1) + "\n";
    if (a.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(a.output);
      if (!(out << text)) throw ArgumentError("fimod: cannot write " + a.output);
    }
    return 0;
  } else {
    throw ArgumentError("fimod: unknown action " + a.action);
  }
  return emit(t, g);
}

// ---- murnaghan ----

struct MurnaghanArgs {
  std::string lambda;
  std::string mu;
};

int run_murnaghan(const MurnaghanArgs& a, const Globals& g) {
  const auto lambda = symcore::Partition::parse(a.lambda);
  const auto mu = symcore::Partition::parse(a.mu);
  const Window w = window_of(g).value_or(Window{8, 12});
  const auto r = fimod::murnaghan_check(lambda, mu, w);
  Table t;
  t.columns = {"n", "lambda", "mu", "table", "stable"};
  for (const auto& [n, table] : r.trace) {
    t.add({std::to_string(n), lambda.to_string(), mu.to_string(), fimod::format_table(table), yes_no(n >= r.onset)});
  }
  return emit(t, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representation stability computations: characters, configuration spaces, FI-modules, F_q statistics"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format: tsv, json, md")->check(CLI::IsMember({"tsv", "json", "md"}));
  app.add_option("--cache-dir", g.cache_dir, std::string("Cache directory (default: $") + Cache::kEnvVar + ")");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--window", g.window, "Range of n, A..B");

  CharsArgs chars;
  auto* c_chars = app.add_subcommand("chars", "Character table of S_n");
  c_chars->add_option("--n", chars.n, "n")->required();
  c_chars->add_option("--lambda", chars.lambda, "Only this row, e.g. 4,1");

  ConfArgs conf;
  auto* c_conf = app.add_subcommand("decompose-conf", "Irreducible decomposition of H^i of the configuration space");
  c_conf->add_option("--n", conf.n, "n (ignored with --window)");
  c_conf->add_option("--i", conf.i, "Cohomological degree")->required();

  GlArgs gl;
  auto* c_gl = app.add_subcommand("verify-gl", "Point count versus cohomology for square-free polynomials");
  c_gl->add_option("--n", gl.n, "Degree")->required();
  c_gl->add_option("--q", gl.q, "Prime field size")->required();
  c_gl->add_option("--stat", gl.stat, "one, linear, quadratic-excess, sign, ncycle or a polynomial");

  FitArgs fit;
  auto* c_fit = app.add_subcommand("fit", "Fit a character polynomial over --window");
  c_fit->add_option("--i", fit.i, "Fit H^i of the configuration space");
  c_fit->add_option("--module", fit.module, "Fit a built-in FI-module");
  c_fit->add_option("--degree", fit.degree, "Maximal weighted degree (default 2i)");

  FqArgs fq;
  auto* c_fq = app.add_subcommand("fq", "Statistics over square-free polynomials in F_q[x]");
  c_fq->add_option("--n", fq.n, "Degree (or use --window)");
  c_fq->add_option("--q", fq.q, "Prime field size");
  c_fq->add_option("--stat", fq.stat, "Statistic");
  c_fq->add_option("--series", fq.series, "Print the stable series up to q^-I instead");
  c_fq->add_flag("--irreducible", fq.irreducible, "Count irreducibles");
  c_fq->add_flag("--discriminant", fq.discriminant, "Discriminant residue classes against Frobenius sign");

  ToriArgs tori_args;
  auto* c_tori = app.add_subcommand("tori", "Maximal tori of GL_n(F_q) by type");
  c_tori->add_option("--n", tori_args.n, "n (or use --window)");
  c_tori->add_option("--q", tori_args.q, "Prime field size");
  c_tori->add_option("--stat", tori_args.stat, "Statistic");
  c_tori->add_flag("--brute", tori_args.brute, "Cross-check by enumerating GL_n(F_q) (n, q <= 3)");
  c_tori->add_flag("--symbolic", tori_args.symbolic, "Counts as polynomials in q");

  FimodArgs fm;
  auto* c_fm = app.add_subcommand("fimod", "FI-module checks");
  c_fm->add_option("--module", fm.module, "poly(d), conf(i), irrep(2,1), exterior, tensor(A,B)");
  c_fm->add_option("--import", fm.import_file, "Explicit module as JSON");
  c_fm->add_option("--output", fm.output, "File for --action export");
  c_fm->add_option("--n-max", fm.n_max, "Truncation");
  c_fm->add_option("--action", fm.action, "dims, profile, repstab, colimit, functoriality, export")
      ->check(CLI::IsMember({"dims", "profile", "repstab", "colimit", "functoriality", "export"}));
  c_fm->add_option("--N", fm.big_n, "Colimit subset size bound");
  c_fm->add_option("--at", fm.at, "Colimit level n (default n-max)");

  MurnaghanArgs mg;
  auto* c_mg = app.add_subcommand("murnaghan", "Stable tensor product multiplicities");
  c_mg->add_option("--lambda", mg.lambda, "Unpadded partition, e.g. 1 or 1,1 or ()")->required();
  c_mg->add_option("--mu", mg.mu, "Unpadded partition")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    set_default_jobs(g.jobs);
    if (c_chars->parsed()) return run_chars(chars, g);
    if (c_conf->parsed()) return run_decompose_conf(conf, g);
    if (c_gl->parsed()) return run_verify_gl(gl, g);
    if (c_fit->parsed()) return run_fit(fit, g);
    if (c_fq->parsed()) return run_fq(fq, g);
    if (c_tori->parsed()) return run_tori(tori_args, g);
    if (c_fm->parsed()) return run_fimod(fm, g);
    if (c_mg->parsed()) return run_murnaghan(mg, g);
  } catch (const ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CostGuardError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
