#include "thnorm/kernel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "thnorm/cocycle.hpp"
#include "thnorm/error.hpp"

namespace thnorm {

void MaxTracker::trim() {
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  if (cells_.size() > cap_) cells_.resize(cap_);
}

void MaxTracker::merge(const MaxTracker& other) {
  if (other.best_ < best_) return;
  if (other.best_ > best_) {
    best_ = other.best_;
    cells_ = other.cells_;
    count_ = other.count_;
  } else {
    cells_.insert(cells_.end(), other.cells_.begin(), other.cells_.end());
    count_ += other.count_;
  }
  trim();
}

MaxResult MaxTracker::finish(std::int64_t denominator) {
  trim();
  MaxResult out;
  out.denominator = denominator;
  if (best_ >= 0) {
    out.numerator = best_;
    out.cells = cells_;
    out.cell_count = count_;
  }
  return out;
}

void parallel_for(std::size_t tasks, int threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), tasks);
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) body(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next.fetch_add(1); t < tasks; t = next.fetch_add(1)) {
          try {
            body(t);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(tasks);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

TripleIndex triple_index(int a, int b, int c, int points) {
  int sign = 1;
  if (a > b) std::swap(a, b), sign = -sign;
  if (b > c) std::swap(b, c), sign = -sign;
  if (a > b) std::swap(a, b), sign = -sign;
  if (a == b || b == c || a < 0 || c >= points) throw ShapeError("invalid point triple");
  // Lexicographic rank of (a, b, c) among sorted triples of `points` points.
  std::size_t index = 0;
  for (int x = 0; x < a; ++x) index += static_cast<std::size_t>((points - 1 - x) * (points - 2 - x) / 2);
  for (int y = a + 1; y < b; ++y) index += static_cast<std::size_t>(points - 1 - y);
  index += static_cast<std::size_t>(c - b - 1);
  return {index, sign};
}

TripleBasis::TripleBasis(std::span<const RankVector> classes)
    : classes_(classes.size()), points_(classes.empty() ? 0 : classes.front().size()) {
  const std::size_t m = points_;
  triples_ = m < 3 ? 0 : m * (m - 1) * (m - 2) / 6;
  padded_ = (classes_ + 63) / 64 * 64;
  by_class_.assign(classes_ * triples_, 0);
  by_triple_.assign(triples_ * padded_, 0);
  for (std::size_t c = 0; c < classes_; ++c) {
    const RankVector& rv = classes[c];
    if (rv.size() != m) throw ShapeError("classes of a triple basis must share one point count");
    std::size_t t = 0;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        for (std::size_t d = b + 1; d < m; ++d, ++t) {
          const int s = or3(rv[a], rv[b], rv[d]);
          by_class_[c * triples_ + t] = static_cast<std::int8_t>(s);
          by_triple_[t * padded_ + c] = static_cast<std::int16_t>(s);
        }
      }
    }
  }
}

PatternKernel PatternKernel::build(const PermTable& table, const XPattern& xp) {
  if (table.n() != 3) throw CapabilityError("triple regrouping is defined for n = 3 tables");
  const RankVector& x = xp.ranks();
  if (x.size() != static_cast<std::size_t>(table.points())) throw ShapeError("x pattern length does not match table");
  const int m = table.points();
  PatternKernel out;
  out.triples_ = static_cast<std::size_t>(m * (m - 1) * (m - 2) / 6);
  out.denominator_ = static_cast<std::int64_t>(table.size());
  out.k_.assign(out.triples_ * out.triples_, 0);
  for (const PermRow& row : table.rows()) {
    const auto& p = row.perm;
    const int s = row.sign * or3(x[p[0]], x[p[1]], x[p[2]]);
    if (s == 0) continue;
    const TripleIndex mid = triple_index(p[0], p[3], p[4], m);
    const TripleIndex last = triple_index(p[4], p[5], p[6], m);
    out.k_[mid.index * out.triples_ + last.index] += s * mid.sign * last.sign;
  }
  return out;
}

bool PatternKernel::is_zero() const noexcept {
  return std::all_of(k_.begin(), k_.end(), [](std::int32_t v) { return v == 0; });
}

MaxResult triple_bilinear_max(const PatternKernel& kernel, const TripleBasis& basis, const KernelOptions& options) {
  const std::size_t T = basis.triples();
  const std::size_t C = basis.classes();
  if (kernel.triples() != T) throw ShapeError("pattern kernel and triple basis disagree on triple count");
  if (options.tile == 0) throw ShapeError("tile size must be positive");

  // |O numerator| <= sum |K|; int16 accumulation is exact below this bound.
  std::int64_t total = 0;
  for (std::size_t s = 0; s < T; ++s) {
    for (std::size_t t = 0; t < T; ++t) total += std::abs(kernel.at(s, t));
  }
  if (total > INT16_MAX) throw OverflowError("pattern kernel too large for 16-bit accumulation");

  // A_i = U_i * K, one row per class.
  std::vector<std::int16_t> a(C * T, 0);
  for (std::size_t i = 0; i < C; ++i) {
    for (std::size_t s = 0; s < T; ++s) {
      const int u = basis.at(i, s);
      if (u == 0) continue;
      for (std::size_t t = 0; t < T; ++t) a[i * T + t] = static_cast<std::int16_t>(a[i * T + t] + u * kernel.at(s, t));
    }
  }

  const std::size_t tile = options.tile;
  const std::size_t tiles = (C + tile - 1) / tile;
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t ti = 0; ti < tiles; ++ti) {
    for (std::size_t tj = options.symmetric ? ti : 0; tj < tiles; ++tj) tasks.emplace_back(ti, tj);
  }

  std::vector<MaxTracker> partial(tasks.size(), MaxTracker(options.cell_cap));
  parallel_for(tasks.size(), options.threads, [&](std::size_t task) {
    const auto [ti, tj] = tasks[task];
    const std::size_t i0 = ti * tile, i1 = std::min(C, i0 + tile);
    const std::size_t j0 = tj * tile, j1 = std::min(C, j0 + tile);
    const std::size_t width = j1 - j0;
    MaxTracker& tracker = partial[task];
    std::vector<std::int16_t> acc(width);
    for (std::size_t i = i0; i < i1; ++i) {
      const std::size_t first = options.symmetric ? std::max(i, j0) : j0;
      if (first >= j1) continue;
      std::fill(acc.begin(), acc.end(), std::int16_t{0});
      const std::int16_t* ai = a.data() + i * T;
      for (std::size_t t = 0; t < T; ++t) {
        const std::int16_t coef = ai[t];
        if (coef == 0) continue;
        const std::int16_t* row = basis.triple_row(t).data() + j0;
        std::int16_t* out = acc.data();
        for (std::size_t jj = 0; jj < width; ++jj) out[jj] = static_cast<std::int16_t>(out[jj] + coef * row[jj]);
      }
      const std::size_t lo = first - j0;
      std::int16_t row_max = 0;
      for (std::size_t jj = lo; jj < width; ++jj) {
        const std::int16_t v = acc[jj] < 0 ? static_cast<std::int16_t>(-acc[jj]) : acc[jj];
        row_max = std::max(row_max, v);
      }
      if (row_max < tracker.best()) continue;
      for (std::size_t jj = lo; jj < width; ++jj) {
        const std::int64_t v = std::abs(static_cast<std::int64_t>(acc[jj]));
        if (v != row_max) continue;
        const auto j = static_cast<std::uint32_t>(j0 + jj);
        tracker.offer(v, {static_cast<std::uint32_t>(i), j});
        if (options.symmetric && j != i) tracker.offer(v, {j, static_cast<std::uint32_t>(i)});
      }
    }
  });

  MaxTracker merged(options.cell_cap);
  for (const auto& p : partial) merged.merge(p);
  return merged.finish(kernel.denominator());
}

}  // namespace thnorm
