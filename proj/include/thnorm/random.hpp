#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "thnorm/ordercomb.hpp"

namespace thnorm {

/// Seeded generator with platform-independent draws: std::mt19937_64's
/// output sequence is fixed by the standard, the distributions are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do v = engine_();
    while (v >= limit);
    return v % bound;
  }

  int below(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

  /// Random point permutation of {0..m-1} (Fisher-Yates).
  std::vector<int> permutation(int m) {
    std::vector<int> p(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i;
    for (int i = m - 1; i > 0; --i) std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(below(i + 1))]);
    return p;
  }

  /// Weak order on m points: independent values in [0, levels), re-ranked.
  /// levels defaults to m, which makes ties common enough to exercise them.
  RankVector weak_order(int m, int levels = 0) {
    if (levels <= 0) levels = m;
    std::vector<std::int64_t> values(static_cast<std::size_t>(m));
    for (auto& v : values) v = below(levels);
    return RankVector::from_values(values);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace thnorm
