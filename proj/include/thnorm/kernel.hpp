#pragma once

// Integer max-kernels shared by the sign-matrix route and the exhaustive
// search, and the deterministic tile scheduler both run on.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "thnorm/ordercomb.hpp"
#include "thnorm/rational.hpp"

namespace thnorm {

struct Cell {
  std::uint32_t row = 0;
  std::uint32_t col = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct KernelOptions {
  int threads = 1;
  std::size_t tile = 256;
  std::size_t cell_cap = std::numeric_limits<std::size_t>::max();
  bool symmetric = false;
};

/// Exact maximum of |numerator| over a grid, with the lexicographically
/// first `cell_cap` argmax cells and the total argmax count.
struct MaxResult {
  std::int64_t numerator = 0;  // max |sum|, before division by the denominator
  std::int64_t denominator = 1;
  std::vector<Cell> cells;
  std::uint64_t cell_count = 0;

  Rational value() const { return Rational(numerator, denominator); }
};

/// Running argmax over absolute integer values. Merging is associative and
/// commutative, so tiles may finish in any order.
class MaxTracker {
 public:
  explicit MaxTracker(std::size_t cap)
      : cap_(cap), trim_at_(cap > (kNoCap - 64) / 2 ? kNoCap : 2 * cap + 64) {}

  std::int64_t best() const noexcept { return best_; }

  void offer(std::int64_t abs_value, Cell cell) {
    if (abs_value < best_) return;
    if (abs_value > best_) {
      best_ = abs_value;
      cells_.clear();
      count_ = 0;
    }
    ++count_;
    cells_.push_back(cell);
    if (cells_.size() > trim_at_) trim();
  }

  void merge(const MaxTracker& other);

  MaxResult finish(std::int64_t denominator);

 private:
  void trim();

  static constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max();

  std::size_t cap_;
  std::size_t trim_at_;
  std::int64_t best_ = -1;
  std::vector<Cell> cells_;
  std::uint64_t count_ = 0;
};

/// Runs body(task) for task in [0, tasks) on `threads` workers. Tasks are
/// claimed dynamically; callers store per-task results and merge in task
/// order to stay schedule-independent.
void parallel_for(std::size_t tasks, int threads, const std::function<void(std::size_t)>& body);

/// Or values of each class on every sorted point triple a < b < c,
/// laid out both class-major and triple-major (int16, padded).
class TripleBasis {
 public:
  explicit TripleBasis(std::span<const RankVector> classes);

  std::size_t classes() const noexcept { return classes_; }
  std::size_t points() const noexcept { return points_; }
  std::size_t triples() const noexcept { return triples_; }
  std::size_t padded_classes() const noexcept { return padded_; }

  /// Or value of class c on triple t.
  int at(std::size_t c, std::size_t t) const noexcept { return by_class_[c * triples_ + t]; }
  std::span<const std::int16_t> triple_row(std::size_t t) const noexcept {
    return {by_triple_.data() + t * padded_, padded_};
  }

 private:
  std::size_t classes_;
  std::size_t points_;
  std::size_t triples_;
  std::size_t padded_;
  std::vector<std::int8_t> by_class_;
  std::vector<std::int16_t> by_triple_;
};

/// Index of the sorted triple {a, b, c} among the C(m, 3) triples of m points,
/// and the orientation sign of (a, b, c) relative to sorted order.
struct TripleIndex {
  std::size_t index;
  int sign;
};
TripleIndex triple_index(int a, int b, int c, int points);

/// The reduced 1260-term sum for a fixed first factor, regrouped by the
/// middle-factor triple {s0, s3, s4} and last-factor triple {s4, s5, s6}:
///   O_ij = sum_{s,t} U_i(s) * K(s, t) * U_j(t),
/// where U_i are Or values of class i on sorted triples. Exact: the same
/// integers as the sign-matrix route, 35 instead of 1260 terms per cell.
class PatternKernel {
 public:
  /// n = 3 tables only.
  static PatternKernel build(const PermTable& table, const XPattern& xp);

  std::size_t triples() const noexcept { return triples_; }
  std::int32_t at(std::size_t s, std::size_t t) const noexcept { return k_[s * triples_ + t]; }
  std::int64_t denominator() const noexcept { return denominator_; }
  bool is_zero() const noexcept;

 private:
  std::size_t triples_ = 0;
  std::int64_t denominator_ = 1;
  std::vector<std::int32_t> k_;
};

/// max |O_ij| over all class pairs of `basis` through the triple regrouping.
/// options.symmetric evaluates the upper triangle only and mirrors argmax cells.
MaxResult triple_bilinear_max(const PatternKernel& kernel, const TripleBasis& basis, const KernelOptions& options = {});

}  // namespace thnorm
