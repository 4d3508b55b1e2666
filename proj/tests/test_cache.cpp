#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "doctest.h"
#include "thnorm/cache.hpp"
#include "thnorm/error.hpp"

using namespace thnorm;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path(THNORM_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::uint8_t> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_SUITE("cache") {
  TEST_CASE("file encoding round-trips") {
    CacheFile f;
    f.n = 2;
    f.kind = 1;
    f.rows = 5;
    f.cols = 3;
    for (int i = 0; i < 15; ++i) f.payload.push_back(static_cast<std::int8_t>(i % 5 + 1));
    const auto bytes = encode_cache_file(f);
    CHECK(bytes.size() == 19 + 15 + 8);
    const CacheFile g = decode_cache_file(bytes);
    CHECK(g.version == kCacheVersion);
    CHECK(g.n == 2);
    CHECK(g.kind == 1);
    CHECK(g.rows == 5);
    CHECK(g.cols == 3);
    CHECK(g.payload == f.payload);

    f.payload.pop_back();
    CHECK_THROWS_AS(encode_cache_file(f), ShapeError);
  }

  TEST_CASE("corruption is detected") {
    CacheFile f;
    f.rows = 3;
    f.cols = 2;
    f.payload = {1, 2, 3, 3, 2, 1};
    const auto good = encode_cache_file(f);

    auto flipped = good;
    flipped[20] ^= 1;
    CHECK_THROWS_AS(decode_cache_file(flipped), ValidationError);

    auto magic = good;
    magic[0] = 'X';
    CHECK_THROWS_AS(decode_cache_file(magic), ValidationError);

    auto truncated = good;
    truncated.pop_back();
    CHECK_THROWS_AS(decode_cache_file(truncated), ValidationError);
    CHECK_THROWS_AS(decode_cache_file({}), ValidationError);
  }

  TEST_CASE("disk cache stores, reuses and rebuilds") {
    const fs::path dir = fresh_dir("cache-cycle");
    const auto expected = build_class_table(2, ClassTableKind::dihedral);
    {
      DiskCache cache(dir);
      CHECK(cache.class_table(2, ClassTableKind::dihedral) == expected);
      CHECK(cache.stats().misses == 1);
      CHECK(fs::exists(cache.path_for(2, ClassTableKind::dihedral)));
      CHECK(cache.class_table(2, ClassTableKind::dihedral) == expected);
      CHECK(cache.stats().hits == 1);
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
      CHECK(entry.path().filename().string().find(".tmp.") == std::string::npos);
    }

    DiskCache cache(dir);
    const fs::path file = cache.path_for(2, ClassTableKind::dihedral);
    auto bytes = slurp(file);
    bytes[bytes.size() - 9] ^= 0x7f;
    spit(file, bytes);
    CHECK(cache.class_table(2, ClassTableKind::dihedral) == expected);
    CHECK(cache.stats().regenerated == 1);
    CHECK(cache.class_table(2, ClassTableKind::dihedral) == expected);
    CHECK(cache.stats().hits == 1);
  }

  TEST_CASE("stale versions and mismatched tables are rebuilt") {
    const fs::path dir = fresh_dir("cache-stale");
    DiskCache cache(dir);
    const fs::path file = cache.path_for(1, ClassTableKind::rotation);

    CacheFile old;
    old.version = kCacheVersion + 1;
    old.n = 1;
    old.kind = static_cast<std::uint8_t>(ClassTableKind::rotation);
    old.rows = 3;
    old.cols = 1;
    old.payload = {1, 1, 1};
    spit(file, encode_cache_file(old));
    CHECK(cache.class_table(1, ClassTableKind::rotation).size() == 6);
    CHECK(cache.stats().regenerated == 1);

    old.version = kCacheVersion;
    old.n = 2;
    spit(file, encode_cache_file(old));
    CHECK(cache.class_table(1, ClassTableKind::rotation).size() == 6);
    CHECK(cache.stats().regenerated == 2);
  }

  TEST_CASE("default directory honours the environment") {
    const char* saved = std::getenv("THNORM_CACHE_DIR");
    const std::string keep = saved ? saved : "";
    ::setenv("THNORM_CACHE_DIR", "/some/where", 1);
    CHECK(DiskCache::default_dir() == fs::path("/some/where"));
    if (saved) {
      ::setenv("THNORM_CACHE_DIR", keep.c_str(), 1);
    } else {
      ::unsetenv("THNORM_CACHE_DIR");
    }
  }
}
