#pragma once

#include <cstdint>
#include <cstdio>
#include <span>
#include <string>

namespace thnorm {

/// FNV-1a, 64-bit.
class Fnv1a64 {
 public:
  void update(std::span<const std::uint8_t> bytes) noexcept {
    for (auto b : bytes) {
      state_ ^= b;
      state_ *= 0x100000001b3ull;
    }
  }
  void update(std::span<const std::int8_t> bytes) noexcept {
    update({reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()});
  }
  std::uint64_t digest() const noexcept { return state_; }

  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
    return buf;
  }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ull;
};

}  // namespace thnorm
