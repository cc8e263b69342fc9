#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "connsync/graph.hpp"

namespace connsync {

inline constexpr double kDefaultSlackTolerance = 1e-9;

/// One inequality lhs <= rhs evaluated on an instance.
struct BoundReport {
  std::string statement_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool pass = false;
  bool vacuous = false;  // rhs is +inf (disconnected graph)
  bool skipped = false;  // no certified value available for one side
  double tolerance = kDefaultSlackTolerance;
  std::string basis;  // which quantities were used, e.g. "oracle" or "achieved"
  std::string fingerprint;
};

/// A statement checked over many random trials.
struct PropertyCheck {
  std::string statement_id;
  int trials = 0;
  int failures = 0;
  double worst_slack = 0.0;  // min over trials of rhs - lhs
  bool skipped = false;
  std::string note;

  bool pass() const { return failures == 0; }
};

struct TheoremOptions {
  double tolerance = kDefaultSlackTolerance;
  std::uint64_t seed = 0;  // only enters the fingerprint
  bool use_oracles = true;
};

/// Every checkable Cheeger-type inequality on g, for the squared and the
/// unsquared frustrations, plus algorithm-versus-oracle dominance when an
/// exact oracle is affordable (d = 1, small n).
std::vector<BoundReport> check_theorems(const ConnectionGraph& g, const TheoremOptions& options = {});

/// The rounding and balance lemmas on `trials` seeded random fields each.
std::vector<PropertyCheck> check_lemmas(const ConnectionGraph& g, int trials, std::uint64_t seed,
                                        double tolerance = kDefaultSlackTolerance);

/// ||y - z|| + a^2 - 1 <= (sqrt(5)/2) ||y - a z|| (1 + a) for unit y, z, a >= 1.
PropertyCheck check_appendix(int trials, std::uint64_t seed, double tolerance = 1e-12);

/// FNV-1a of the serialized graph and the seed, as 16 hex digits.
std::string instance_fingerprint(const ConnectionGraph& g, std::uint64_t seed);

/// Fixed-width table at 12 significant digits.
std::string format_report_table(const std::vector<BoundReport>& reports,
                                const std::vector<PropertyCheck>& checks);

/// One `key=value` record per line at 17 significant digits.
std::string format_report_records(const std::vector<BoundReport>& reports,
                                  const std::vector<PropertyCheck>& checks);

}  // namespace connsync
