#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wpg/manifest.hpp"

namespace wpg {

inline constexpr std::string_view kEngineVersion = "0.1.0";

enum class Suite { Lemmas, Ssnm, Einstein, All };

std::string_view to_string(Suite s);
/// Throws InvalidArgument for an unknown suite name.
Suite parse_suite(std::string_view name);

struct CheckRecord {
  enum class Status { Pass, Fail, Info };

  std::string id;     // sort key, e.g. "lemma.curvature.B2"
  std::string label;  // the identity in words
  int samples = 0;
  double max_abs = 0;     // max absolute error
  double max_scaled = 0;  // the error compared against the tolerance
  double tolerance = 0;
  Status status = Status::Pass;
  std::string note;
};

std::string_view to_string(CheckRecord::Status s);

struct VerificationReport {
  std::string manifest;
  Suite suite = Suite::All;
  std::uint64_t seed = 0;
  int points = 0;
  std::vector<CheckRecord> records;  // sorted by id

  int count(CheckRecord::Status s) const;
  bool pass() const { return count(CheckRecord::Status::Fail) == 0; }
};

struct SuiteOptions {
  std::optional<int> points;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;  // overrides the identity tolerance
};

/// Every computation error is captured as a failed record.
VerificationReport run_suite(const Manifest& m, Suite suite, const SuiteOptions& options = {});

/// Structured report: JSON with 17 significant digits, byte-for-byte deterministic.
std::string report_json(const VerificationReport& r);
/// Fixed-width table with 3 significant digits.
std::string report_table(const VerificationReport& r);

}  // namespace wpg
