#include "thnorm/ordercomb.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "thnorm/error.hpp"

namespace thnorm {

namespace {

void check_size(std::size_t m) {
  if (m == 0 || m > RankVector::kMaxPoints) {
    throw ValidationError("rank vector length " + std::to_string(m) + " outside 1.." +
                          std::to_string(RankVector::kMaxPoints));
  }
}

}  // namespace

RankVector::RankVector(std::span<const int> ranks) {
  check_size(ranks.size());
  unsigned seen = 0;
  int k = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    const int r = ranks[i];
    if (r < 1 || r > static_cast<int>(ranks.size())) {
      throw ValidationError("rank " + std::to_string(r) + " outside 1.." + std::to_string(ranks.size()));
    }
    seen |= 1u << (r - 1);
    k = std::max(k, r);
    ranks_[i] = static_cast<std::uint8_t>(r);
  }
  if (seen != (1u << k) - 1) throw ValidationError("rank vector has a gap: not surjective onto 1..k");
  size_ = static_cast<std::uint8_t>(ranks.size());
  distinct_ = static_cast<std::uint8_t>(k);
}

RankVector::RankVector(std::initializer_list<int> ranks)
    : RankVector(std::span<const int>(ranks.begin(), ranks.size())) {}

RankVector RankVector::unchecked(std::span<const std::uint8_t> ranks) {
  RankVector out;
  std::copy(ranks.begin(), ranks.end(), out.ranks_.begin());
  out.size_ = static_cast<std::uint8_t>(ranks.size());
  out.distinct_ = ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end());
  return out;
}

RankVector RankVector::from_values(std::span<const std::int64_t> values) {
  check_size(values.size());
  std::vector<std::int64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  RankVector out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), values[i]);
    out.ranks_[i] = static_cast<std::uint8_t>(it - sorted.begin() + 1);
  }
  out.size_ = static_cast<std::uint8_t>(values.size());
  out.distinct_ = static_cast<std::uint8_t>(sorted.size());
  return out;
}

RankVector RankVector::rotated(int shift) const {
  RankVector out = *this;
  const int k = distinct_;
  if (k == 0) return out;
  shift = ((shift % k) + k) % k;
  for (std::size_t i = 0; i < size_; ++i) {
    out.ranks_[i] = static_cast<std::uint8_t>((ranks_[i] - 1 + shift) % k + 1);
  }
  return out;
}

RankVector RankVector::reflected() const {
  RankVector out = *this;
  for (std::size_t i = 0; i < size_; ++i) out.ranks_[i] = static_cast<std::uint8_t>(distinct_ + 1 - ranks_[i]);
  return out;
}

RankVector RankVector::permuted(std::span<const int> perm) const {
  if (perm.size() != size_) throw ShapeError("permutation length does not match rank vector");
  RankVector out = *this;
  for (std::size_t i = 0; i < size_; ++i) out.ranks_[i] = ranks_[static_cast<std::size_t>(perm[i])];
  return out;
}

RankVector RankVector::without_point(std::size_t index) const {
  if (index >= size_ || size_ < 2) throw ShapeError("cannot drop point from rank vector");
  std::vector<std::int64_t> values;
  values.reserve(size_ - 1);
  for (std::size_t i = 0; i < size_; ++i) {
    if (i != index) values.push_back(ranks_[i]);
  }
  return from_values(values);
}

bool RankVector::is_weakly_increasing() const noexcept {
  return std::is_sorted(ranks_.begin(), ranks_.begin() + size_);
}

std::string RankVector::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < size_; ++i) {
    if (i != 0) out += ',';
    out += std::to_string(ranks_[i]);
  }
  return out;
}

std::strong_ordering operator<=>(const RankVector& a, const RankVector& b) noexcept {
  return std::lexicographical_compare_three_way(a.ranks_.begin(), a.ranks_.begin() + a.size_, b.ranks_.begin(),
                                                b.ranks_.begin() + b.size_);
}

XPattern::XPattern(RankVector ranks) : ranks_(ranks) {
  if (!ranks_.is_weakly_increasing()) throw ValidationError("x pattern must be weakly increasing");
}

void for_each_weak_order(int m, const std::function<void(const RankVector&)>& visit) {
  if (m < 1 || m > kMaxWeakOrderPoints) {
    throw SizeLimitError("weak order enumeration supports 1.." + std::to_string(kMaxWeakOrderPoints) +
                         " points, got " + std::to_string(m));
  }
  std::array<std::uint8_t, RankVector::kMaxPoints> ranks{};
  const auto span = std::span<const std::uint8_t>(ranks.data(), static_cast<std::size_t>(m));

  // Depth-first in lexicographic order. A prefix is extendable iff the ranks
  // missing below its maximum fit into the remaining positions.
  auto recurse = [&](auto&& self, int pos, unsigned used, int max_rank) -> void {
    if (pos == m) {
      visit(RankVector::unchecked(span));
      return;
    }
    const int remaining = m - pos - 1;
    for (int v = 1; v <= m; ++v) {
      const unsigned next_used = used | (1u << (v - 1));
      const int next_max = std::max(max_rank, v);
      const int missing = next_max - std::popcount(next_used);
      if (missing > remaining) {
        if (v > max_rank) break;  // larger v only opens more gaps
        continue;
      }
      ranks[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(v);
      self(self, pos + 1, next_used, next_max);
    }
  };
  recurse(recurse, 0, 0u, 0);
}

std::vector<RankVector> enumerate_weak_orders(int m) {
  std::vector<RankVector> out;
  if (m >= 1 && m <= kMaxWeakOrderPoints) out.reserve(fubini_number(m));
  for_each_weak_order(m, [&](const RankVector& rv) { out.push_back(rv); });
  return out;
}

std::uint64_t fubini_number(int m) {
  if (m < 0 || m > 20) throw SizeLimitError("Fubini number argument out of range");
  std::vector<std::uint64_t> a(static_cast<std::size_t>(m) + 1, 0);
  a[0] = 1;
  for (int n = 1; n <= m; ++n) {
    std::uint64_t binom = 1;  // C(n, k)
    for (int k = 1; k <= n; ++k) {
      binom = binom * static_cast<std::uint64_t>(n - k + 1) / static_cast<std::uint64_t>(k);
      a[static_cast<std::size_t>(n)] += binom * a[static_cast<std::size_t>(n - k)];
    }
  }
  return a[static_cast<std::size_t>(m)];
}

RankVector canonicalize_cyclic(const RankVector& rv, bool use_reflection) {
  RankVector best = rv;
  const int k = rv.distinct();
  for (int shift = 0; shift < k; ++shift) {
    const RankVector r = rv.rotated(shift);
    if (r < best) best = r;
    if (use_reflection) {
      const RankVector f = r.reflected();
      if (f < best) best = f;
    }
  }
  return best;
}

std::vector<XPattern> enumerate_x_patterns(int n) {
  if (n < 1 || n > 5) throw SizeLimitError("x patterns supported for 1 <= n <= 5");
  const int m = 2 * n + 1;
  const unsigned steps = 1u << (m - 1);
  // Each set bit of `mask` is one rank step between neighbouring positions.
  std::vector<RankVector> ranks;
  ranks.reserve(steps);
  for (unsigned mask = 0; mask < steps; ++mask) {
    std::array<std::uint8_t, RankVector::kMaxPoints> r{};
    r[0] = 1;
    for (int i = 1; i < m; ++i) {
      r[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(r[static_cast<std::size_t>(i - 1)] + ((mask >> (m - 1 - i)) & 1u));
    }
    ranks.push_back(RankVector::unchecked({r.data(), static_cast<std::size_t>(m)}));
  }
  std::sort(ranks.begin(), ranks.end());
  std::vector<XPattern> out;
  out.reserve(ranks.size());
  for (const auto& r : ranks) out.emplace_back(r);
  return out;
}

int permutation_sign(std::span<const std::uint8_t> perm) {
  std::array<bool, 32> visited{};
  int sign = 1;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (visited[start]) continue;
    std::size_t length = 0;
    for (std::size_t i = start; !visited[i]; i = perm[i]) {
      visited[i] = true;
      ++length;
    }
    if (length % 2 == 0) sign = -sign;
  }
  return sign;
}

namespace {

PermTable build_reduced_table(int n) {
  std::vector<OrderConstraint> constraints;
  if (n == 3) {
    constraints = {{1, 2}, {5, 6}};
  } else {
    constraints = {{1, 2}, {3, 4}};
  }
  const int m = 2 * n + 1;
  std::array<std::uint8_t, 7> perm{};
  std::iota(perm.begin(), perm.begin() + m, std::uint8_t{0});
  std::vector<PermRow> rows;
  do {
    const bool ok = std::all_of(constraints.begin(), constraints.end(),
                                [&](const OrderConstraint& c) { return perm[c.lo] < perm[c.hi]; });
    if (ok) {
      PermRow row;
      row.perm = perm;
      row.sign = static_cast<std::int8_t>(permutation_sign({perm.data(), static_cast<std::size_t>(m)}));
      rows.push_back(row);
    }
  } while (std::next_permutation(perm.begin(), perm.begin() + m));
  return PermTable(n, std::move(rows), std::move(constraints));
}

}  // namespace

const PermTable& reduced_perm_table(int n) {
  if (n == 3) {
    static const PermTable table3 = build_reduced_table(3);
    return table3;
  }
  if (n == 2) {
    static const PermTable table2 = build_reduced_table(2);
    return table2;
  }
  throw CapabilityError("no reduced permutation table for n = " + std::to_string(n) +
                        "; use the direct evaluation");
}

}  // namespace thnorm
