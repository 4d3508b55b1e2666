#pragma once

// Report serialization. JSON is the canonical form and round-trips; text
// and csv are for reading. Rationals are always "num/den" strings in lowest
// terms. Timing fields appear only when requested, so default output is a
// pure function of the inputs.

#include <string>
#include <string_view>
#include <vector>

#include "thnorm/bound.hpp"
#include "thnorm/search.hpp"
#include "thnorm/verify.hpp"

namespace thnorm {

enum class ReportFormat { json, text, csv };

std::string to_string(ReportFormat format);
ReportFormat parse_report_format(std::string_view text);

std::string serialize(const NormReport& report, ReportFormat format, bool with_timing = false);
/// Inverse of serialize(report, json). Throws ParseError on malformed input.
NormReport parse_norm_report(std::string_view json);

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::vector<VerificationItem> items;
  std::string version{kVersion};
  // Only serialized on request.
  double elapsed_seconds = 0.0;
  int threads = 1;

  bool passed() const { return all_pass(items); }
  friend bool operator==(const VerificationReport& a, const VerificationReport& b) {
    return a.suite == b.suite && a.seed == b.seed && a.samples == b.samples && a.items == b.items &&
           a.version == b.version;
  }
};

std::string serialize(const VerificationReport& report, ReportFormat format, bool with_timing = false);
VerificationReport parse_verification_report(std::string_view json);

std::string serialize(const BoundResult& result, ReportFormat format);

std::string serialize_eval(const Configuration& cfg, const Rational& theta, ReportFormat format);

std::string serialize_classes(int n, ClassTableKind kind, const std::vector<RankVector>& classes, ReportFormat format);

}  // namespace thnorm
