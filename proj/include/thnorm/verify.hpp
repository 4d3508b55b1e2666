#pragma once

// Reproduction suites: published constants and algebraic identities, each
// check reported as one item in a fixed order.

#include <cstdint>
#include <string>
#include <vector>

#include "thnorm/search.hpp"

namespace thnorm {

struct VerificationItem {
  std::string id;
  std::string location;  // what the value is, in words
  std::string expected;  // exact rational, or a predicate such as "< 11/45"
  std::string computed;
  bool pass = true;
  bool asserted = true;  // false: recorded as context, never fails the suite
  double elapsed_seconds = 0.0;

  friend bool operator==(const VerificationItem& a, const VerificationItem& b) {
    return a.id == b.id && a.location == b.location && a.expected == b.expected && a.computed == b.computed &&
           a.pass == b.pass && a.asserted == b.asserted;
  }
};

struct VerifyOptions {
  int threads = 1;
  TableStore* store = nullptr;
};

/// Published values: norms for n = 1, 2, 3, every case maximum, the regular
/// configurations, the strict bound on three-distinct patterns and table sizes.
std::vector<VerificationItem> verify_paper_constants(const VerifyOptions& options = {});

/// Seeded identity checks on n = 3 configurations, `samples` draws per identity.
std::vector<VerificationItem> verify_identities(std::uint64_t seed, std::uint64_t samples);

/// True when every asserted item passed.
bool all_pass(const std::vector<VerificationItem>& items);

}  // namespace thnorm
