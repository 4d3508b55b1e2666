#pragma once

// On-disk class-table cache.
//
// File layout, little-endian:
//   "THNORM1"          7 bytes magic
//   version            u16
//   n                  u8
//   kind               u8   (ClassTableKind value)
//   rows, cols         u32, u32
//   payload            rows*cols int8, column-major (one column per class)
//   checksum           u64  FNV-1a-64 of the payload

#include <cstdint>
#include <filesystem>
#include <vector>

#include "thnorm/search.hpp"

namespace thnorm {

inline constexpr std::uint16_t kCacheVersion = 1;

struct CacheFile {
  std::uint16_t version = kCacheVersion;
  std::uint8_t n = 0;
  std::uint8_t kind = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::int8_t> payload;
};

std::vector<std::uint8_t> encode_cache_file(const CacheFile& file);
/// Throws ValidationError on bad magic, truncation, size mismatch or checksum failure.
CacheFile decode_cache_file(const std::vector<std::uint8_t>& bytes);

/// Class tables stored under one directory, one file per (n, kind).
/// Unreadable, corrupt or stale files are rebuilt and rewritten.
class DiskCache : public TableStore {
 public:
  explicit DiskCache(std::filesystem::path dir);

  std::vector<RankVector> class_table(int n, ClassTableKind kind) override;

  std::filesystem::path path_for(int n, ClassTableKind kind) const;
  const std::filesystem::path& dir() const noexcept { return dir_; }

  struct Stats {
    int hits = 0;
    int misses = 0;
    int regenerated = 0;  // existing file rejected
  };
  const Stats& stats() const noexcept { return stats_; }

  /// $THNORM_CACHE_DIR, else $XDG_CACHE_HOME/thnorm, else ~/.cache/thnorm, else ./.thnorm-cache.
  static std::filesystem::path default_dir();

 private:
  std::filesystem::path dir_;
  Stats stats_;
};

}  // namespace thnorm
