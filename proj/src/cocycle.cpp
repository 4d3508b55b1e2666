#include "thnorm/cocycle.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "thnorm/error.hpp"

#ifdef __AVX2__
#include <immintrin.h>
#endif

namespace thnorm {

// --- Configuration ----------------------------------------------------------

Configuration::Configuration(std::vector<RankVector> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw ValidationError("configuration needs at least one factor");
  const std::size_t m = 2 * factors_.size() + 1;
  if (m > RankVector::kMaxPoints) throw SizeLimitError("too many factors for a configuration");
  for (const auto& f : factors_) {
    if (f.size() != m) {
      throw ValidationError("factor has " + std::to_string(f.size()) + " points; expected " + std::to_string(m));
    }
  }
}

Configuration::Configuration(std::vector<RankVector> factors, Angles angles) : Configuration(std::move(factors)) {
  if (angles.size() != factors_.size()) throw ValidationError("angle list count does not match factor count");
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (ranks_from_angles(angles[i]) != factors_[i]) {
      throw ValidationError("angles of factor " + std::to_string(i + 1) + " do not rank to the stored ranks");
    }
  }
  angles_ = std::move(angles);
}

Configuration Configuration::from_angles(Angles angles) {
  std::vector<RankVector> factors;
  factors.reserve(angles.size());
  for (const auto& a : angles) factors.push_back(ranks_from_angles(a));
  return Configuration(std::move(factors), std::move(angles));
}

Configuration Configuration::permuted_points(std::span<const int> perm) const {
  std::vector<RankVector> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.permuted(perm));
  return Configuration(std::move(out));
}

Configuration Configuration::permuted_factors(std::span<const int> order) const {
  if (order.size() != factors_.size()) throw ShapeError("factor order length mismatch");
  std::vector<RankVector> out;
  out.reserve(factors_.size());
  for (int i : order) out.push_back(factors_.at(static_cast<std::size_t>(i)));
  return Configuration(std::move(out));
}

Configuration Configuration::with_factor(std::size_t i, const RankVector& factor) const {
  std::vector<RankVector> out = factors_;
  out.at(i) = factor;
  return Configuration(std::move(out));
}

std::string Configuration::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i != 0) out += '|';
    out += factors_[i].to_string();
  }
  return out;
}

RankVector ranks_from_angles(std::span<const Rational> angles) {
  for (const auto& a : angles) {
    if (a < Rational(0) || a >= Rational(1)) {
      throw ValidationError("angle " + a.to_string() + " outside [0, 1)");
    }
  }
  std::vector<Rational> sorted(angles.begin(), angles.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::int64_t> ranks;
  ranks.reserve(angles.size());
  for (const auto& a : angles) ranks.push_back(std::lower_bound(sorted.begin(), sorted.end(), a) - sorted.begin());
  return RankVector::from_values(ranks);
}

// --- Direct and reduced sums ------------------------------------------------

std::int64_t theta_direct_sum(const Configuration& cfg) {
  const int n = cfg.n();
  if (n > kMaxDirectFactors) {
    throw BudgetError("direct evaluation is limited to n <= " + std::to_string(kMaxDirectFactors));
  }
  static_assert(RankVector::kMaxPoints <= 20, "(2n+1)! must fit in int64");
  const int m = 2 * n + 1;
  std::array<std::array<std::uint8_t, RankVector::kMaxPoints>, kMaxDirectFactors> ranks{};
  for (int i = 0; i < n; ++i) {
    const auto r = cfg.factor(static_cast<std::size_t>(i)).ranks();
    std::copy(r.begin(), r.end(), ranks[static_cast<std::size_t>(i)].begin());
  }

  // Depth-first over permutations sigma, position by position. The sign is
  // tracked through inversion counts; once a factor's triple is complete a
  // zero Or prunes the whole subtree.
  std::array<std::uint8_t, RankVector::kMaxPoints> sigma{};
  std::int64_t total = 0;
  auto recurse = [&](auto&& self, int pos, unsigned used, int signed_product) -> void {
    if (pos == m) {
      total += signed_product;
      return;
    }
    for (int v = 0; v < m; ++v) {
      const unsigned bit = 1u << v;
      if (used & bit) continue;
      const int larger_before = std::popcount(used & ~((bit << 1) - 1));
      int next = (larger_before & 1) ? -signed_product : signed_product;
      sigma[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(v);
      if (pos >= 2 && pos % 2 == 0) {
        const auto& f = ranks[static_cast<std::size_t>(pos / 2 - 1)];
        next *= or3(f[sigma[static_cast<std::size_t>(pos - 2)]], f[sigma[static_cast<std::size_t>(pos - 1)]], f[static_cast<std::size_t>(v)]);
        if (next == 0) continue;
      }
      self(self, pos + 1, used | bit, next);
    }
  };
  recurse(recurse, 0, 0u, 1);
  return total;
}

Rational theta_direct(const Configuration& cfg) {
  const std::int64_t sum = theta_direct_sum(cfg);
  return Rational(sum, factorial(2 * cfg.n() + 1));
}

namespace {

using Triple = std::array<std::uint8_t, 3>;

std::span<const Triple> reduced_positions(int n) {
  static constexpr std::array<Triple, 3> kThree{{{0, 1, 2}, {0, 3, 4}, {4, 5, 6}}};
  static constexpr std::array<Triple, 2> kTwo{{{0, 1, 2}, {0, 3, 4}}};
  if (n == 3) return kThree;
  if (n == 2) return kTwo;
  throw CapabilityError("reduced evaluation is defined for n = 2 and n = 3 only");
}

Triple role_positions(SignRole role, int n) {
  switch (role) {
    case SignRole::first_factor:
    case SignRole::combined_sign:
      return {0, 1, 2};
    case SignRole::middle_factor:
      return {0, 3, 4};
    case SignRole::last_factor:
      if (n != 3) throw ShapeError("last-factor sign matrix requires n = 3");
      return {4, 5, 6};
  }
  throw ShapeError("unknown sign role");
}

}  // namespace

Rational theta_reduced(const Configuration& cfg) {
  const int n = cfg.n();
  const auto positions = reduced_positions(n);
  const PermTable& table = reduced_perm_table(n);
  std::int64_t sum = 0;
  for (const PermRow& row : table.rows()) {
    int term = row.sign;
    for (std::size_t i = 0; i < positions.size() && term != 0; ++i) {
      const RankVector& f = cfg.factor(i);
      const Triple& pos = positions[i];
      term *= or3(f[row.perm[pos[0]]], f[row.perm[pos[1]]], f[row.perm[pos[2]]]);
    }
    sum += term;
  }
  return Rational(checked::mul(4, sum), factorial(2 * n + 1));
}

// --- Sign matrices and Algorithm-1 kernels ---------------------------------

std::string to_string(SignRole role) {
  switch (role) {
    case SignRole::first_factor:
      return "first-factor";
    case SignRole::middle_factor:
      return "middle-factor";
    case SignRole::last_factor:
      return "last-factor";
    case SignRole::combined_sign:
      return "combined-sign";
  }
  return "unknown";
}

SignMatrix::SignMatrix(SignRole role, std::size_t rows, std::size_t cols, std::vector<std::int8_t> data)
    : role_(role), rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw ShapeError("sign matrix payload size mismatch");
}

SignMatrix build_sign_matrix(SignRole role, const PermTable& table, std::span<const RankVector> classes) {
  const Triple pos = role_positions(role, table.n());
  const auto m = static_cast<std::size_t>(table.points());
  const std::size_t rows = table.size();
  std::vector<std::int8_t> data(rows * classes.size());
  for (std::size_t j = 0; j < classes.size(); ++j) {
    const RankVector& c = classes[j];
    if (c.size() != m) throw ShapeError("class " + c.to_string() + " does not have " + std::to_string(m) + " points");
    for (std::size_t l = 0; l < rows; ++l) {
      const PermRow& row = table[l];
      int v = or3(c[row.perm[pos[0]]], c[row.perm[pos[1]]], c[row.perm[pos[2]]]);
      if (role == SignRole::combined_sign) v *= row.sign;
      data[j * rows + l] = static_cast<std::int8_t>(v);
    }
  }
  return SignMatrix(role, rows, classes.size(), std::move(data));
}

std::vector<std::int8_t> combined_sign_vector(const PermTable& table, const XPattern& xp) {
  const RankVector& x = xp.ranks();
  const SignMatrix column = build_sign_matrix(SignRole::combined_sign, table, std::span<const RankVector>(&x, 1));
  return {column.data().begin(), column.data().end()};
}

namespace {

std::int32_t dot_i8(const std::int8_t* a, const std::int8_t* b, std::size_t n) {
  std::int32_t acc = 0;
  for (std::size_t k = 0; k < n; ++k) acc += static_cast<std::int16_t>(a[k]) * static_cast<std::int16_t>(b[k]);
  return acc;
}

constexpr std::size_t kLanes = 64;

// Dot product of sign vectors padded to a multiple of kLanes. Each lane sums
// at most n / kLanes products in {-1, 0, +1}, so int8 lanes are exact while
// n / kLanes <= 127 (checked by the caller).
std::int32_t dot_sign(const std::int8_t* a, const std::int8_t* b, std::size_t n) {
#ifdef __AVX2__
  // sign_epi8(b, a) is b * a exactly when a is in {-1, 0, +1}.
  __m256i lo = _mm256_setzero_si256(), hi = _mm256_setzero_si256();
  for (std::size_t c = 0; c < n; c += kLanes) {
    const __m256i a0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + c));
    const __m256i a1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + c + 32));
    const __m256i b0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + c));
    const __m256i b1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + c + 32));
    lo = _mm256_add_epi8(lo, _mm256_sign_epi8(b0, a0));
    hi = _mm256_add_epi8(hi, _mm256_sign_epi8(b1, a1));
  }
  alignas(32) std::int8_t lanes[kLanes];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), lo);
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes + 32), hi);
#else
  std::int8_t lanes[kLanes] = {};
  for (std::size_t c = 0; c < n; c += kLanes) {
    for (std::size_t k = 0; k < kLanes; ++k) lanes[k] = static_cast<std::int8_t>(lanes[k] + a[c + k] * b[c + k]);
  }
#endif
  std::int32_t acc = 0;
  for (std::size_t k = 0; k < kLanes; ++k) acc += lanes[k];
  return acc;
}

bool all_signs(std::span<const std::int8_t> v) {
  return std::all_of(v.begin(), v.end(), [](std::int8_t e) { return e >= -1 && e <= 1; });
}

}  // namespace

MaxResult bilinear_max(std::span<const std::int8_t> sign_vec, const SignMatrix& py, const SignMatrix& pz,
                       const KernelOptions& options) {
  const std::size_t L = sign_vec.size();
  if (py.rows() != L || pz.rows() != L) throw ShapeError("sign vector and sign matrices disagree on row count");
  if (options.symmetric && py.cols() != pz.cols()) throw ShapeError("symmetric kernel needs square class tables");
  if (options.tile == 0) throw ShapeError("tile size must be positive");
  if (L == 0) throw ShapeError("empty permutation table");

  if (!all_signs(sign_vec) || !all_signs(py.data()) || !all_signs(pz.data())) {
    throw ValidationError("sign entries must lie in {-1, 0, +1}");
  }
  // Fold the sign vector into Py once; pad rows to a multiple of kLanes.
  const std::size_t padded = (L + kLanes - 1) / kLanes * kLanes;
  if (padded / kLanes > 127) throw ShapeError("permutation table too long for the 8-bit lane kernel");
  const std::size_t p = py.cols(), q = pz.cols();
  std::vector<std::int8_t> a(p * padded, 0), b(q * padded, 0);
  for (std::size_t i = 0; i < p; ++i) {
    const auto col = py.column(i);
    for (std::size_t l = 0; l < L; ++l) a[i * padded + l] = static_cast<std::int8_t>(sign_vec[l] * col[l]);
  }
  for (std::size_t j = 0; j < q; ++j) std::copy_n(pz.column(j).data(), L, b.begin() + static_cast<std::ptrdiff_t>(j * padded));

  const std::size_t tile = options.tile;
  const std::size_t ti_count = (p + tile - 1) / tile, tj_count = (q + tile - 1) / tile;
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t ti = 0; ti < ti_count; ++ti) {
    for (std::size_t tj = options.symmetric ? ti : 0; tj < tj_count; ++tj) tasks.emplace_back(ti, tj);
  }
  std::vector<MaxTracker> partial(tasks.size(), MaxTracker(options.cell_cap));
  parallel_for(tasks.size(), options.threads, [&](std::size_t task) {
    const auto [ti, tj] = tasks[task];
    MaxTracker& tracker = partial[task];
    for (std::size_t i = ti * tile; i < std::min(p, (ti + 1) * tile); ++i) {
      const std::size_t j0 = options.symmetric ? std::max(i, tj * tile) : tj * tile;
      for (std::size_t j = j0; j < std::min(q, (tj + 1) * tile); ++j) {
        const std::int64_t v = std::abs(dot_sign(&a[i * padded], &b[j * padded], padded));
        if (v < tracker.best()) continue;
        tracker.offer(v, {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
        if (options.symmetric && i != j) tracker.offer(v, {static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(i)});
      }
    }
  });
  MaxTracker merged(options.cell_cap);
  for (const auto& t : partial) merged.merge(t);
  return merged.finish(static_cast<std::int64_t>(L));
}

MaxResult linear_max(std::span<const std::int8_t> sign_vec, const SignMatrix& py, const KernelOptions& options) {
  const std::size_t L = sign_vec.size();
  if (py.rows() != L) throw ShapeError("sign vector and sign matrix disagree on row count");
  if (L == 0) throw ShapeError("empty permutation table");
  MaxTracker tracker(options.cell_cap);
  for (std::size_t i = 0; i < py.cols(); ++i) {
    const std::int64_t v = std::abs(dot_i8(sign_vec.data(), py.column(i).data(), L));
    tracker.offer(v, {static_cast<std::uint32_t>(i), 0});
  }
  return tracker.finish(static_cast<std::int64_t>(L));
}

}  // namespace thnorm
