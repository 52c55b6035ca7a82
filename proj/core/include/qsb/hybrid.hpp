#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsb/oracle_table.hpp"
#include "qsb/state_vector.hpp"

namespace qsb {

enum class QueryKind { bitflip, phase };

/// Oracle-independent unitary applied after each query. `haar` is a dense
/// pseudo-random unitary built deterministically from `haar_seed`.
enum class StepUnitary { identity, walsh, r0, diffusion, haar };

struct ScheduleStep {
  QueryKind query = QueryKind::bitflip;
  StepUnitary unitary = StepUnitary::identity;
  std::uint64_t haar_seed = 0;  // only read when unitary == haar
};

/// A straight-line quantum query algorithm: t steps, each one query followed
/// by one oracle-independent unitary. The number of steps is the time
/// complexity.
struct AlgorithmSchedule {
  RegisterShape shape;
  std::vector<ScheduleStep> steps;
};

/// Row i holds the per-word query masses measured immediately before query
/// i+1. Every row of a legal run sums to 1 (within accumulation error) and
/// the total over all rows is bounded by the step count.
struct QueryMassMatrix {
  std::vector<QueryMassVector> rows;
};

struct MassBudgetReport {
  std::vector<double> row_sums;
  double total = 0.0;
};

/// One checked inequality instance: measured left side, bound value, and
/// whether the bound holds within numerical slack.
struct PerturbationReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = false;  // slack >= -1e-9
};

struct ScheduleResult {
  StateVector final;
  QueryMassMatrix masses;
};

/// Numerical slack applied to every inequality check in this module.
inline constexpr double kBoundSlack = 1e-9;

/// Dense unitary for `haar` steps: a seeded complex Gaussian matrix pushed
/// through Gram-Schmidt. Deterministic in (dim, seed); cached. dim <= 1024.
struct DenseUnitary {
  std::uint64_t dim = 0;
  std::vector<Amplitude> entries;  // row-major
};

const DenseUnitary& haar_like_unitary(std::uint64_t dim, std::uint64_t seed);

void apply_dense_unitary(StateVector& state, const DenseUnitary& u);

/// Executes the schedule against f from `start`, recording the query-mass
/// row before each query. Mass-law violations (row sum off 1, total above
/// step count) raise InvariantViolation; this check is always on.
ScheduleResult run_schedule(const AlgorithmSchedule& s, const OracleTable& f,
                            const StateVector& start);

/// Metric on oracles induced by the state: square root of the query mass on
/// the set of words where f and g disagree.
double oracle_distance(const StateVector& chi, const OracleTable& f,
                       const OracleTable& g);

/// Single-query perturbation bound: the distance between the two query
/// transforms' outputs is at most twice the oracle distance.
PerturbationReport check_query_bound(const StateVector& chi,
                                     const OracleTable& f,
                                     const OracleTable& g);

/// Hybrid-argument bound: run the schedule against both oracles of a
/// one-word pair; the final-state distance is at most twice the sum of the
/// square roots of the base run's masses at the disagreement word.
PerturbationReport check_hybrid_bound(const AlgorithmSchedule& s,
                                      const OraclePair& pair,
                                      const StateVector& start);

/// Row sums and total of a mass matrix, validated: each row sums to 1 within
/// 1e-9 and the total is at most rows*(1+1e-9). Violations raise
/// InvariantViolation naming the offending row.
MassBudgetReport mass_budget_report(const QueryMassMatrix& masses);

struct CertificationSummary {
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  double min_slack = 0.0;
  double max_lhs = 0.0;
  double min_slack_ratio = 0.0;  // min slack/rhs over instances with rhs > 0

  std::string to_json() const;
};

/// Randomized battery for the single-query bound: `instances` seeded random
/// (state, f, g) triples per oracle kind at question widths up to max_n.
CertificationSummary certify_query_bound(int max_n, std::uint64_t instances,
                                         std::uint64_t root_seed);

/// Battery for the hybrid bound: `schedules` random schedules (t <= 20) plus
/// structured Grover-style and adversarial point-mass families, all with
/// one-word mutations.
CertificationSummary certify_hybrid_bound(int max_n, std::uint64_t schedules,
                                          std::uint64_t root_seed);

/// Grover expressed as a schedule: t (phase, diffusion) steps on (n, 0).
AlgorithmSchedule grover_schedule(int n, std::uint64_t iterations);

/// Uniform superposition over question words (answer register at 0).
StateVector uniform_start(const RegisterShape& shape);

/// Random normalized state, complex Gaussian entries.
StateVector random_state(const RegisterShape& shape, Rng& rng);

}  // namespace qsb
