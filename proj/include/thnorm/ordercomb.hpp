#pragma once

// Circular weak orders and reduced permutation tables.
//
// A configuration of m labeled points on a circle is encoded by its ranks
// with ties: cut the circle just below the smallest value, then rank the
// distinct values 1..k. The orientation cocycle only sees this encoding.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace thnorm {

/// Ranks of m labeled circle points; a surjection onto {1..k}.
class RankVector {
 public:
  static constexpr std::size_t kMaxPoints = 13;

  RankVector() = default;

  /// Validating constructor; throws ValidationError on gaps or bad sizes.
  explicit RankVector(std::span<const int> ranks);
  RankVector(std::initializer_list<int> ranks);

  /// Caller guarantees surjectivity onto {1..k}.
  static RankVector unchecked(std::span<const std::uint8_t> ranks);

  /// Re-ranks arbitrary integer values (ties allowed), removing gaps.
  static RankVector from_values(std::span<const std::int64_t> values);

  std::size_t size() const noexcept { return size_; }
  int distinct() const noexcept { return distinct_; }
  int operator[](std::size_t i) const noexcept { return ranks_[i]; }
  std::span<const std::uint8_t> ranks() const noexcept { return {ranks_.data(), size_}; }

  /// Rotates circle values by `shift` steps: rank r -> ((r - 1 + shift) mod k) + 1.
  RankVector rotated(int shift) const;
  /// Reverses circular orientation: rank r -> k + 1 - r.
  RankVector reflected() const;
  /// Point p of the result is point perm[p] of this vector.
  RankVector permuted(std::span<const int> perm) const;
  /// Drops point `index` and closes any rank gap.
  RankVector without_point(std::size_t index) const;

  bool is_weakly_increasing() const noexcept;

  /// "1,2,3"
  std::string to_string() const;

  friend bool operator==(const RankVector& a, const RankVector& b) noexcept {
    return a.size_ == b.size_ && a.ranks_ == b.ranks_;
  }
  friend std::strong_ordering operator<=>(const RankVector& a, const RankVector& b) noexcept;

 private:
  std::array<std::uint8_t, kMaxPoints> ranks_{};
  std::uint8_t size_ = 0;
  std::uint8_t distinct_ = 0;
};

/// Weakly increasing rank vector: a sorted tie pattern of the first factor.
class XPattern {
 public:
  explicit XPattern(RankVector ranks);
  XPattern(std::initializer_list<int> ranks) : XPattern(RankVector(ranks)) {}

  const RankVector& ranks() const noexcept { return ranks_; }
  int distinct() const noexcept { return ranks_.distinct(); }
  std::string to_string() const { return ranks_.to_string(); }

  friend bool operator==(const XPattern&, const XPattern&) = default;
  friend auto operator<=>(const XPattern&, const XPattern&) = default;

 private:
  RankVector ranks_;
};

/// Largest m accepted by enumerate_weak_orders.
inline constexpr int kMaxWeakOrderPoints = 11;

/// Every surjective rank assignment of m points, lexicographic. Count = Fubini(m).
std::vector<RankVector> enumerate_weak_orders(int m);

/// Streaming form of enumerate_weak_orders, same order.
void for_each_weak_order(int m, const std::function<void(const RankVector&)>& visit);

/// Fubini (ordered Bell) number via the binomial recurrence.
std::uint64_t fubini_number(int m);

/// Lexicographically least element of rv's orbit under circular rotation,
/// plus orientation reversal when `use_reflection` is set.
RankVector canonicalize_cyclic(const RankVector& rv, bool use_reflection);

/// All weakly increasing surjective sequences of length 2n+1 (2^(2n) of them), lexicographic.
std::vector<XPattern> enumerate_x_patterns(int n);

/// Sign of a permutation of {0..m-1} computed by cycle decomposition.
int permutation_sign(std::span<const std::uint8_t> perm);

/// perm[lo] < perm[hi] must hold on every table row.
struct OrderConstraint {
  std::uint8_t lo;
  std::uint8_t hi;
};

struct PermRow {
  std::array<std::uint8_t, 7> perm{};
  std::int8_t sign = 1;
};

/// Permutations of {0..2n} satisfying adjacent ordering constraints, with signs.
class PermTable {
 public:
  PermTable(int n, std::vector<PermRow> rows, std::vector<OrderConstraint> constraints)
      : n_(n), rows_(std::move(rows)), constraints_(std::move(constraints)) {}

  int n() const noexcept { return n_; }
  int points() const noexcept { return 2 * n_ + 1; }
  std::size_t size() const noexcept { return rows_.size(); }
  const PermRow& operator[](std::size_t i) const noexcept { return rows_[i]; }
  std::span<const PermRow> rows() const noexcept { return rows_; }
  std::span<const OrderConstraint> constraints() const noexcept { return constraints_; }

 private:
  int n_;
  std::vector<PermRow> rows_;
  std::vector<OrderConstraint> constraints_;
};

/// n = 3: the 1260 permutations with perm[1] < perm[2], perm[5] < perm[6].
/// n = 2: the 30 permutations with perm[1] < perm[2], perm[3] < perm[4].
/// Other n throw CapabilityError. Tables are built once and shared.
const PermTable& reduced_perm_table(int n);

}  // namespace thnorm

template <>
struct std::hash<thnorm::RankVector> {
  std::size_t operator()(const thnorm::RankVector& rv) const noexcept {
    std::size_t h = rv.size();
    for (auto r : rv.ranks()) h = h * 31 + r;
    return h;
  }
};
