#pragma once

// Symmetry-reduced computation of the sup-norm of Theta_n.
//
// The first factor is sorted into an XPattern (Theta is alternating), the
// remaining factors range over circular classes of weak orders (|Theta| is
// invariant under rotating or reflecting one circle), and the y <-> z factor
// swap makes every n = 3 value table symmetric.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thnorm/cocycle.hpp"
#include "thnorm/kernel.hpp"
#include "thnorm/ordercomb.hpp"
#include "thnorm/rational.hpp"

namespace thnorm {

inline constexpr std::string_view kVersion = "thnorm 1.0.0";

enum class SearchMode { paper_fast, exhaustive, regular_only, sample };

std::string to_string(SearchMode mode);
/// "paper-fast", "exhaustive", "regular-only", "sample"; throws ParseError otherwise.
SearchMode parse_search_mode(std::string_view text);

/// Class tables the search can run on. Values are the on-disk cache kinds.
enum class ClassTableKind : std::uint8_t {
  dihedral = 1,        // weak orders up to rotation and reflection
  rotation = 2,        // weak orders up to rotation
  paper_distinct = 3,  // n = 3: 360 distinct orders, point 0 first, rank(1) < rank(2)
  paper_stacked = 4,   // n = 3: the 360 above plus seven tie-pattern permutation blocks (7710)
};

std::string to_string(ClassTableKind kind);
ClassTableKind parse_class_table_kind(std::string_view text);

/// Canonical weak-order classes of 2n+1 points, sorted. n in {1, 2, 3}.
std::vector<RankVector> class_table(int n, bool use_reflection);

/// Compatibility tables with the column order of the published computation. n = 3 only.
std::vector<RankVector> paper_class_table(ClassTableKind kind);

std::vector<RankVector> build_class_table(int n, ClassTableKind kind);

/// Supplies class tables; the CLI plugs in a disk cache.
class TableStore {
 public:
  virtual ~TableStore() = default;
  virtual std::vector<RankVector> class_table(int n, ClassTableKind kind) = 0;
};

struct SearchOptions {
  int threads = 1;
  std::size_t witness_cap = 16;
  std::size_t tile = 256;
  std::uint64_t sample_budget = 100;
  std::uint64_t seed = 1;
  TableStore* store = nullptr;
};

struct Witness {
  Configuration config;
  Rational theta;  // signed value; |theta| equals the reported maximum

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Class tables prepared for one factor count.
class SearchTables {
 public:
  /// All dihedral classes with the triple-regrouped kernel (n = 3) or sign matrices (n = 2).
  static SearchTables exhaustive(int n, const SearchOptions& options = {});
  /// One of the n = 3 compatibility tables, duplicate classes removed, with
  /// middle/last sign matrices for the 1260-row kernel.
  static SearchTables paper(ClassTableKind kind, const SearchOptions& options = {});

  int n() const noexcept { return n_; }
  ClassTableKind kind() const noexcept { return kind_; }
  const std::vector<RankVector>& classes() const noexcept { return classes_; }
  std::size_t raw_size() const noexcept { return raw_size_; }
  std::string fingerprint() const;

  const TripleBasis* triple_basis() const noexcept { return basis_ ? &*basis_ : nullptr; }
  const SignMatrix* middle() const noexcept { return middle_ ? &*middle_ : nullptr; }
  const SignMatrix* last() const noexcept { return last_ ? &*last_ : nullptr; }

 private:
  int n_ = 0;
  ClassTableKind kind_ = ClassTableKind::dihedral;
  std::vector<RankVector> classes_;
  std::size_t raw_size_ = 0;
  std::optional<TripleBasis> basis_;
  std::optional<SignMatrix> middle_;
  std::optional<SignMatrix> last_;
};

struct PatternMax {
  XPattern pattern;
  Rational max;
  std::vector<Witness> witnesses;
  std::uint64_t witness_count = 0;
  std::string table;

  friend bool operator==(const PatternMax&, const PatternMax&) = default;
};

/// max over every class pair of |Theta| with the first factor fixed to xp.
/// Witnesses are re-evaluated with theta_direct before return.
PatternMax max_for_x_pattern(const XPattern& xp, const SearchTables& tables, const SearchOptions& options = {});

struct TableCount {
  std::string name;
  std::size_t raw = 0;
  std::size_t unique = 0;

  friend bool operator==(const TableCount&, const TableCount&) = default;
};

struct NormReport {
  int n = 0;
  SearchMode mode = SearchMode::exhaustive;
  Rational norm;
  bool complete = true;
  bool budget_exceeded = false;
  std::vector<Witness> witnesses;
  std::uint64_t witness_count = 0;
  std::vector<PatternMax> per_pattern;
  std::vector<TableCount> class_counts;
  std::uint64_t samples = 0;
  std::map<std::string, std::string> fingerprints;
  std::string version{kVersion};
  std::vector<std::string> notes;
  // Not part of the deterministic report body, and ignored by ==.
  double elapsed_seconds = 0.0;
  int threads = 1;

  friend bool operator==(const NormReport& a, const NormReport& b) {
    return a.n == b.n && a.mode == b.mode && a.norm == b.norm && a.complete == b.complete &&
           a.budget_exceeded == b.budget_exceeded && a.witnesses == b.witnesses && a.witness_count == b.witness_count &&
           a.per_pattern == b.per_pattern && a.class_counts == b.class_counts && a.samples == b.samples &&
           a.fingerprints == b.fingerprints && a.version == b.version && a.notes == b.notes;
  }
};

/// The eight x patterns evaluated by paper-fast mode and the table each runs on.
std::vector<std::pair<XPattern, ClassTableKind>> paper_fast_cases();

/// Computes the norm in the given mode. exhaustive/paper-fast: n in {1, 2, 3};
/// n >= 4 exhaustive falls back to a budgeted sample flagged incomplete.
NormReport norm(int n, SearchMode mode, const SearchOptions& options = {});

/// Factor k (1-based) holds the points (k*i mod (2n+1)) / (2n+1), i = 0..2n.
Configuration regular_configuration(int n);

/// theta_direct at the regular configuration.
Rational eval_regular(int n);

/// True when each factor of a lies in the same dihedral class as in b.
bool same_dihedral_classes(const Configuration& a, const Configuration& b);

}  // namespace thnorm
