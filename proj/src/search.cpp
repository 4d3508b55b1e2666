#include "thnorm/search.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "thnorm/error.hpp"
#include "thnorm/hash.hpp"
#include "thnorm/random.hpp"

namespace thnorm {

std::string to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::paper_fast:
      return "paper-fast";
    case SearchMode::exhaustive:
      return "exhaustive";
    case SearchMode::regular_only:
      return "regular-only";
    case SearchMode::sample:
      return "sample";
  }
  return "unknown";
}

SearchMode parse_search_mode(std::string_view text) {
  if (text == "paper-fast") return SearchMode::paper_fast;
  if (text == "exhaustive") return SearchMode::exhaustive;
  if (text == "regular-only") return SearchMode::regular_only;
  if (text == "sample") return SearchMode::sample;
  throw ParseError("unknown search mode '" + std::string(text) + "'");
}

std::string to_string(ClassTableKind kind) {
  switch (kind) {
    case ClassTableKind::dihedral:
      return "dihedral";
    case ClassTableKind::rotation:
      return "rotation";
    case ClassTableKind::paper_distinct:
      return "paper-distinct";
    case ClassTableKind::paper_stacked:
      return "paper-stacked";
  }
  return "unknown";
}

ClassTableKind parse_class_table_kind(std::string_view text) {
  if (text == "dihedral") return ClassTableKind::dihedral;
  if (text == "rotation") return ClassTableKind::rotation;
  if (text == "paper-distinct") return ClassTableKind::paper_distinct;
  if (text == "paper-stacked") return ClassTableKind::paper_stacked;
  throw ParseError("unknown class table kind '" + std::string(text) + "'");
}

// --- Class tables -----------------------------------------------------------

std::vector<RankVector> class_table(int n, bool use_reflection) {
  if (n < 1 || n > 3) throw SizeLimitError("class tables are built for n in {1, 2, 3}");
  std::unordered_set<RankVector> seen;
  for_each_weak_order(2 * n + 1, [&](const RankVector& rv) { seen.insert(canonicalize_cyclic(rv, use_reflection)); });
  std::vector<RankVector> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void append_multiset_permutations(std::vector<int> multiset, std::vector<RankVector>& out) {
  std::sort(multiset.begin(), multiset.end());
  do out.emplace_back(std::span<const int>(multiset));
  while (std::next_permutation(multiset.begin(), multiset.end()));
}

}  // namespace

std::vector<RankVector> paper_class_table(ClassTableKind kind) {
  if (kind != ClassTableKind::paper_distinct && kind != ClassTableKind::paper_stacked) {
    throw ValidationError("not a compatibility table kind: " + to_string(kind));
  }
  std::vector<RankVector> out;
  // Distinct orders normalized by the dihedral action: point 0 takes the
  // smallest value, and point 1 precedes point 2.
  std::vector<int> ranks{1, 2, 3, 4, 5, 6, 7};
  do {
    if (ranks[0] == 1 && ranks[1] < ranks[2]) out.emplace_back(std::span<const int>(ranks));
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  if (kind == ClassTableKind::paper_stacked) {
    for (const auto& block : std::vector<std::vector<int>>{{1, 1, 2, 3, 4, 5, 6},
                                                           {1, 1, 2, 2, 3, 4, 5},
                                                           {1, 1, 2, 3, 3, 4, 5},
                                                           {1, 1, 1, 2, 3, 4, 5},
                                                           {1, 1, 2, 2, 3, 3, 4},
                                                           {1, 1, 1, 2, 2, 3, 4},
                                                           {1, 1, 1, 2, 3, 3, 4}}) {
      append_multiset_permutations(block, out);
    }
  }
  return out;
}

std::vector<RankVector> build_class_table(int n, ClassTableKind kind) {
  switch (kind) {
    case ClassTableKind::dihedral:
      return class_table(n, true);
    case ClassTableKind::rotation:
      return class_table(n, false);
    case ClassTableKind::paper_distinct:
    case ClassTableKind::paper_stacked:
      if (n != 3) throw CapabilityError("compatibility tables exist for n = 3 only");
      return paper_class_table(kind);
  }
  throw ValidationError("unknown class table kind");
}

namespace {

std::vector<RankVector> fetch_table(int n, ClassTableKind kind, const SearchOptions& options) {
  return options.store ? options.store->class_table(n, kind) : build_class_table(n, kind);
}

}  // namespace

SearchTables SearchTables::exhaustive(int n, const SearchOptions& options) {
  if (n < 1 || n > 3) throw SizeLimitError("exhaustive tables are built for n in {1, 2, 3}");
  SearchTables t;
  t.n_ = n;
  t.kind_ = ClassTableKind::dihedral;
  if (n == 1) return t;  // Theta_1 is Or itself; only the x pattern varies.
  t.classes_ = fetch_table(n, ClassTableKind::dihedral, options);
  t.raw_size_ = t.classes_.size();
  if (n == 3) {
    t.basis_.emplace(t.classes_);
  } else {
    t.middle_.emplace(build_sign_matrix(SignRole::middle_factor, reduced_perm_table(2), t.classes_));
  }
  return t;
}

SearchTables SearchTables::paper(ClassTableKind kind, const SearchOptions& options) {
  SearchTables t;
  t.n_ = 3;
  t.kind_ = kind;
  const std::vector<RankVector> raw = fetch_table(3, kind, options);
  t.raw_size_ = raw.size();
  // Columns in one dihedral class produce identical value rows; keep the first.
  std::set<RankVector> seen;
  for (const auto& rv : raw) {
    if (seen.insert(canonicalize_cyclic(rv, true)).second) t.classes_.push_back(rv);
  }
  const PermTable& table = reduced_perm_table(3);
  t.middle_.emplace(build_sign_matrix(SignRole::middle_factor, table, t.classes_));
  t.last_.emplace(build_sign_matrix(SignRole::last_factor, table, t.classes_));
  return t;
}

std::string SearchTables::fingerprint() const {
  Fnv1a64 h;
  for (const auto& rv : classes_) h.update(rv.ranks());
  return h.hex();
}

// --- Per-pattern maxima -----------------------------------------------------

PatternMax max_for_x_pattern(const XPattern& xp, const SearchTables& tables, const SearchOptions& options) {
  const int n = tables.n();
  if (xp.ranks().size() != static_cast<std::size_t>(2 * n + 1)) throw ShapeError("x pattern length does not match tables");

  KernelOptions ko;
  ko.threads = options.threads;
  ko.tile = options.tile;
  ko.cell_cap = options.witness_cap;
  ko.symmetric = true;

  MaxResult result;
  std::vector<std::vector<RankVector>> witness_factors;
  const auto& classes = tables.classes();
  if (n == 1) {
    const std::int64_t sum = theta_direct_sum(Configuration({xp.ranks()}));
    result.numerator = sum < 0 ? -sum : sum;
    result.denominator = factorial(3);
    result.cell_count = 1;
    witness_factors.push_back({xp.ranks()});
  } else if (n == 2) {
    const auto sign = combined_sign_vector(reduced_perm_table(2), xp);
    result = linear_max(sign, *tables.middle(), ko);
    for (const Cell& c : result.cells) witness_factors.push_back({xp.ranks(), classes[c.row]});
  } else {
    if (const TripleBasis* basis = tables.triple_basis()) {
      result = triple_bilinear_max(PatternKernel::build(reduced_perm_table(3), xp), *basis, ko);
    } else {
      const auto sign = combined_sign_vector(reduced_perm_table(3), xp);
      result = bilinear_max(sign, *tables.middle(), *tables.last(), ko);
    }
    for (const Cell& c : result.cells) witness_factors.push_back({xp.ranks(), classes[c.row], classes[c.col]});
  }

  PatternMax out{xp, result.value(), {}, result.cell_count, to_string(tables.kind())};
  for (auto& factors : witness_factors) {
    Configuration cfg(std::move(factors));
    Rational theta = theta_direct(cfg);
    if (theta.abs() != out.max) {
      throw std::logic_error("witness " + cfg.to_string() + " evaluates to " + theta.to_string() +
                             ", kernel reported " + out.max.to_string());
    }
    out.witnesses.push_back({std::move(cfg), theta});
  }
  if (xp.distinct() < 3 && !out.max.is_zero()) {
    throw std::logic_error("pattern " + xp.to_string() + " with fewer than 3 distinct ranks gave a nonzero maximum");
  }
  return out;
}

// --- Norm -------------------------------------------------------------------

namespace {

std::string perm_table_fingerprint(int n) {
  Fnv1a64 h;
  for (const PermRow& row : reduced_perm_table(n).rows()) {
    h.update(std::span<const std::uint8_t>(row.perm.data(), static_cast<std::size_t>(2 * n + 1)));
    h.update(std::span<const std::int8_t>(&row.sign, 1));
  }
  return h.hex();
}

void collect_norm(NormReport& rep, std::size_t cap) {
  rep.norm = Rational(0);
  for (const auto& pm : rep.per_pattern) rep.norm = std::max(rep.norm, pm.max);
  rep.witnesses.clear();
  rep.witness_count = 0;
  for (const auto& pm : rep.per_pattern) {
    if (pm.max != rep.norm) continue;
    rep.witness_count += pm.witness_count;
    for (const auto& w : pm.witnesses) {
      if (rep.witnesses.size() < cap) rep.witnesses.push_back(w);
    }
  }
}

void run_exhaustive(NormReport& rep, const SearchOptions& options) {
  const SearchTables tables = SearchTables::exhaustive(rep.n, options);
  for (const XPattern& xp : enumerate_x_patterns(rep.n)) rep.per_pattern.push_back(max_for_x_pattern(xp, tables, options));
  if (rep.n >= 2) {
    rep.class_counts.push_back({"dihedral", static_cast<std::size_t>(fubini_number(2 * rep.n + 1)), tables.classes().size()});
    rep.fingerprints["classes:dihedral"] = tables.fingerprint();
    rep.fingerprints["perm_table"] = perm_table_fingerprint(rep.n);
  }
  collect_norm(rep, options.witness_cap);
}

void run_paper_fast(NormReport& rep, const SearchOptions& options) {
  const SearchTables distinct = SearchTables::paper(ClassTableKind::paper_distinct, options);
  const SearchTables stacked = SearchTables::paper(ClassTableKind::paper_stacked, options);
  for (const auto& [xp, kind] : paper_fast_cases()) {
    rep.per_pattern.push_back(max_for_x_pattern(xp, kind == ClassTableKind::paper_distinct ? distinct : stacked, options));
  }
  rep.class_counts.push_back({"paper-distinct", distinct.raw_size(), distinct.classes().size()});
  rep.class_counts.push_back({"paper-stacked", stacked.raw_size(), stacked.classes().size()});
  rep.fingerprints["classes:paper-distinct"] = distinct.fingerprint();
  rep.fingerprints["classes:paper-stacked"] = stacked.fingerprint();
  rep.fingerprints["perm_table"] = perm_table_fingerprint(3);
  collect_norm(rep, options.witness_cap);
}

void run_sample(NormReport& rep, const SearchOptions& options) {
  const int n = rep.n;
  const int m = 2 * n + 1;
  if (n < 1 || n > kMaxDirectFactors) throw BudgetError("sampling is limited to n <= " + std::to_string(kMaxDirectFactors));
  Rng rng(options.seed);
  const auto patterns = enumerate_x_patterns(std::min(n, 5));
  MaxTracker tracker(options.witness_cap);
  std::vector<Configuration> configs;
  auto consider = [&](Configuration cfg) {
    const std::int64_t sum = theta_direct_sum(cfg);
    const auto index = static_cast<std::uint32_t>(configs.size());
    configs.push_back(std::move(cfg));
    tracker.offer(sum < 0 ? -sum : sum, {index, 0});
  };
  consider(regular_configuration(n));
  for (std::uint64_t s = 0; s < options.sample_budget; ++s) {
    std::vector<RankVector> factors;
    // Alternation lets the first factor be sorted without loss.
    if (n <= 5) {
      factors.push_back(patterns[rng.below(patterns.size())].ranks());
    } else {
      auto first = rng.weak_order(m);
      std::vector<std::int64_t> sorted(first.ranks().begin(), first.ranks().end());
      std::sort(sorted.begin(), sorted.end());
      factors.push_back(RankVector::from_values(sorted));
    }
    for (int i = 1; i < n; ++i) factors.push_back(rng.weak_order(m));
    consider(Configuration(std::move(factors)));
  }
  const MaxResult r = tracker.finish(factorial(m));
  rep.norm = r.value();
  rep.samples = configs.size();
  rep.witness_count = r.cell_count;
  for (const Cell& c : r.cells) rep.witnesses.push_back({configs[c.row], theta_direct(configs[c.row])});
  rep.complete = false;
}

}  // namespace

std::vector<std::pair<XPattern, ClassTableKind>> paper_fast_cases() {
  using K = ClassTableKind;
  return {
      {XPattern{1, 2, 3, 4, 5, 6, 7}, K::paper_distinct}, {XPattern{1, 1, 1, 1, 2, 3, 4}, K::paper_distinct},
      {XPattern{1, 1, 1, 2, 2, 3, 4}, K::paper_stacked},  {XPattern{1, 1, 1, 2, 3, 3, 4}, K::paper_stacked},
      {XPattern{1, 1, 2, 2, 3, 3, 4}, K::paper_stacked},  {XPattern{1, 1, 1, 2, 3, 4, 5}, K::paper_stacked},
      {XPattern{1, 1, 2, 2, 3, 4, 5}, K::paper_stacked},  {XPattern{1, 1, 2, 3, 4, 5, 6}, K::paper_stacked},
  };
}

NormReport norm(int n, SearchMode mode, const SearchOptions& options) {
  if (n < 1) throw ValidationError("n must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  NormReport rep;
  rep.n = n;
  rep.mode = mode;
  rep.threads = options.threads;
  switch (mode) {
    case SearchMode::exhaustive:
      if (n >= 4) {
        rep.budget_exceeded = true;
        rep.notes.push_back("exhaustive search is limited to n <= 3; reporting a budgeted random sample instead");
        run_sample(rep, options);
      } else {
        run_exhaustive(rep, options);
      }
      break;
    case SearchMode::paper_fast:
      if (n > 3) throw ValidationError("paper-fast mode supports n <= 3");
      if (n < 3) {
        rep.notes.push_back("no compatibility tables below n = 3; paper-fast runs the exhaustive search");
        run_exhaustive(rep, options);
      } else {
        run_paper_fast(rep, options);
      }
      break;
    case SearchMode::regular_only: {
      Configuration cfg = regular_configuration(n);
      const Rational theta = theta_direct(cfg);
      rep.norm = theta.abs();
      rep.witnesses.push_back({std::move(cfg), theta});
      rep.witness_count = 1;
      rep.complete = false;
      rep.notes.push_back("value at the regular configuration only; a lower bound for the norm");
      break;
    }
    case SearchMode::sample:
      rep.notes.push_back("random sample plus the regular configuration; a lower bound for the norm");
      run_sample(rep, options);
      break;
  }
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Configuration regular_configuration(int n) {
  if (n < 1 || 2 * n + 1 > static_cast<int>(RankVector::kMaxPoints)) throw SizeLimitError("unsupported n for the regular configuration");
  const int m = 2 * n + 1;
  Configuration::Angles angles;
  for (int k = 1; k <= n; ++k) {
    std::vector<Rational> circle;
    for (int i = 0; i < m; ++i) circle.emplace_back((k * i) % m, m);
    angles.push_back(std::move(circle));
  }
  return Configuration::from_angles(std::move(angles));
}

Rational eval_regular(int n) {
  if (n > kMaxDirectFactors) throw BudgetError("regular evaluation is limited to n <= " + std::to_string(kMaxDirectFactors));
  return theta_direct(regular_configuration(n));
}

bool same_dihedral_classes(const Configuration& a, const Configuration& b) {
  if (a.n() != b.n()) return false;
  for (std::size_t i = 0; i < static_cast<std::size_t>(a.n()); ++i) {
    if (canonicalize_cyclic(a.factor(i), true) != canonicalize_cyclic(b.factor(i), true)) return false;
  }
  return true;
}

}  // namespace thnorm
