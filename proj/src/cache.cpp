#include "thnorm/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>

#include "thnorm/error.hpp"
#include "thnorm/hash.hpp"

namespace thnorm {

namespace {

constexpr char kMagic[7] = {'T', 'H', 'N', 'O', 'R', 'M', '1'};
constexpr std::size_t kHeaderSize = 7 + 2 + 1 + 1 + 4 + 4;

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

template <typename T>
T get_le(const std::uint8_t* p) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(static_cast<T>(p[i]) << (8 * i));
  return value;
}

std::uint64_t checksum(const std::vector<std::int8_t>& payload) {
  Fnv1a64 h;
  h.update(payload);
  return h.digest();
}

// Exclusive flock on <dir>/.thnorm.lock for the lifetime of the object.
class DirLock {
 public:
  explicit DirLock(const std::filesystem::path& dir) {
    fd_ = ::open((dir / ".thnorm.lock").c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw Error("cannot open cache lock in " + dir.string() + ": " + std::strerror(errno));
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw Error("cannot lock cache directory " + dir.string());
    }
  }
  ~DirLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  int fd_ = -1;
};

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

std::vector<std::uint8_t> encode_cache_file(const CacheFile& file) {
  if (file.payload.size() != static_cast<std::size_t>(file.rows) * file.cols) {
    throw ShapeError("cache payload size does not match rows * cols");
  }
  std::vector<std::uint8_t> out(kMagic, kMagic + 7);
  put_le(out, file.version);
  put_le(out, file.n);
  put_le(out, file.kind);
  put_le(out, file.rows);
  put_le(out, file.cols);
  for (auto b : file.payload) out.push_back(static_cast<std::uint8_t>(b));
  put_le(out, checksum(file.payload));
  return out;
}

CacheFile decode_cache_file(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kHeaderSize + 8) throw ValidationError("cache file truncated");
  if (std::memcmp(bytes.data(), kMagic, 7) != 0) throw ValidationError("cache file has bad magic");
  CacheFile f;
  const std::uint8_t* p = bytes.data() + 7;
  f.version = get_le<std::uint16_t>(p);
  f.n = p[2];
  f.kind = p[3];
  f.rows = get_le<std::uint32_t>(p + 4);
  f.cols = get_le<std::uint32_t>(p + 8);
  const std::uint64_t size = static_cast<std::uint64_t>(f.rows) * f.cols;
  if (bytes.size() != kHeaderSize + size + 8) throw ValidationError("cache file size does not match its header");
  f.payload.assign(bytes.begin() + kHeaderSize, bytes.begin() + static_cast<std::ptrdiff_t>(kHeaderSize + size));
  if (get_le<std::uint64_t>(bytes.data() + kHeaderSize + size) != checksum(f.payload)) {
    throw ValidationError("cache file checksum mismatch");
  }
  return f;
}

DiskCache::DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path DiskCache::default_dir() {
  if (const char* env = std::getenv("THNORM_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "thnorm";
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "thnorm";
  return ".thnorm-cache";
}

std::filesystem::path DiskCache::path_for(int n, ClassTableKind kind) const {
  return dir_ / ("classes-n" + std::to_string(n) + "-" + to_string(kind) + ".bin");
}

std::vector<RankVector> DiskCache::class_table(int n, ClassTableKind kind) {
  const auto path = path_for(n, kind);
  const std::size_t m = static_cast<std::size_t>(2 * n + 1);
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    try {
      const CacheFile f = decode_cache_file(read_bytes(path));
      if (f.version != kCacheVersion) throw ValidationError("cache version mismatch");
      if (f.n != n || f.kind != static_cast<std::uint8_t>(kind) || f.rows != m) {
        throw ValidationError("cache file describes a different table");
      }
      std::vector<RankVector> out;
      out.reserve(f.cols);
      std::vector<int> ranks(m);
      for (std::size_t c = 0; c < f.cols; ++c) {
        for (std::size_t r = 0; r < m; ++r) ranks[r] = f.payload[c * m + r];
        out.emplace_back(std::span<const int>(ranks));
      }
      ++stats_.hits;
      return out;
    } catch (const Error&) {
      ++stats_.regenerated;
    }
  }
  ++stats_.misses;
  std::vector<RankVector> table = build_class_table(n, kind);

  CacheFile f;
  f.n = static_cast<std::uint8_t>(n);
  f.kind = static_cast<std::uint8_t>(kind);
  f.rows = static_cast<std::uint32_t>(m);
  f.cols = static_cast<std::uint32_t>(table.size());
  f.payload.reserve(m * table.size());
  for (const auto& rv : table) {
    for (auto r : rv.ranks()) f.payload.push_back(static_cast<std::int8_t>(r));
  }
  const auto bytes = encode_cache_file(f);

  std::filesystem::create_directories(dir_);
  DirLock lock(dir_);
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
  return table;
}

}  // namespace thnorm
