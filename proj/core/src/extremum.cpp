#include "qsb/extremum.hpp"

#include <cmath>

#include "qsb/errors.hpp"

namespace qsb {

ExtremumOutcome durr_hoyer_max(const OracleTable& phi, Rng& rng,
                               std::uint64_t budget,
                               const ExtremumOptions& options) {
  if (phi.kind != OracleKind::integer)
    throw ShapeError("durr_hoyer_max: oracle must be integer-valued");
  if (budget == 0) throw DomainError("durr_hoyer_max: budget must be >= 1");

  ExtremumOutcome out;
  QueryCounter counter;

  // alpha_0 = word 0; reading phi there is the first counted query.
  out.candidate = 0;
  out.value = phi.evaluate(0, &counter);
  out.queries_used = 1;
  out.thresholds.push_back({out.candidate, out.value, out.queries_used});

  while (out.queries_used < budget) {
    const OracleTable marked = threshold_oracle(
        phi, static_cast<std::int64_t>(out.value), options.strict_threshold);

    SearchOptions round = options.search;
    round.query_budget = budget - out.queries_used;
    SearchOutcome attempt = bbht_search(phi.n, marked, rng, round);
    out.queries_used += attempt.queries_used;

    if (!attempt.success) break;  // remaining budget fully consumed

    // The verification that accepted the word already read phi there; the
    // table lookup below is bookkeeping, not an extra query.
    out.candidate = *attempt.found_word;
    out.value = phi(out.candidate);
    out.thresholds.push_back({out.candidate, out.value, out.queries_used});
  }

  out.success = out.value == table_max(phi);
  return out;
}

ExtremumOutcome truncated_durr_hoyer(const OracleTable& phi, Rng& rng,
                                     std::uint64_t t,
                                     const ExtremumOptions& options) {
  return durr_hoyer_max(phi, rng, t, options);
}

std::uint64_t default_extremum_budget(int n) {
  return static_cast<std::uint64_t>(std::ceil(9.0 * std::sqrt(std::ldexp(1.0, n))));
}

}  // namespace qsb
