#pragma once

#include <cstdint>
#include <vector>

#include "qsb/oracle_table.hpp"
#include "qsb/rng.hpp"
#include "qsb/search.hpp"

namespace qsb {

/// One accepted threshold in the maximum-finding ascent.
struct ThresholdStep {
  std::uint64_t candidate = 0;  // alpha_i
  std::uint32_t value = 0;      // phi(alpha_i)
  std::uint64_t queries_after = 0;
};

struct ExtremumOutcome {
  std::uint64_t candidate = 0;
  std::uint32_t value = 0;
  std::uint64_t queries_used = 0;
  std::vector<ThresholdStep> thresholds;  // strictly increasing in value
  bool success = false;  // candidate attains the true maximum (table lookup)
};

struct ExtremumOptions {
  bool strict_threshold = true;  // mark phi(x) > theta; false marks >=
  SearchOptions search;
};

/// Threshold-ascent maximum finding: start at word 0, repeatedly search
/// {x : phi(x) > phi(alpha_i)} with the remaining budget and adopt any
/// verified improvement. Budget exhaustion is the normal exit; the loop never
/// inspects the table beyond counted evaluations.
ExtremumOutcome durr_hoyer_max(const OracleTable& phi, Rng& rng,
                               std::uint64_t budget,
                               const ExtremumOptions& options = {});

/// durr_hoyer_max stopped at a sub-sqrt(N) budget t; the regime where the
/// success rate is expected to collapse as n grows.
ExtremumOutcome truncated_durr_hoyer(const OracleTable& phi, Rng& rng,
                                     std::uint64_t t,
                                     const ExtremumOptions& options = {});

/// ceil(9 * sqrt(2^n)), the generous default for the full algorithm.
std::uint64_t default_extremum_budget(int n);

}  // namespace qsb
